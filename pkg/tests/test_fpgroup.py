import pytest
from hypothesis import given, settings, strategies as st

from chernplan import fpgroup as fp
from chernplan.snf import invariant_factors
from chernplan.fpgroup import AbelianInvariants, GluingMap, Presentation, PresentationError, parse_presentation


def ab(text_or_p):
    p = parse_presentation(text_or_p) if isinstance(text_or_p, str) else text_or_p
    return fp.abelianization(p)


def test_word_helpers():
    assert fp.free_reduce((1, -1, 2, 3, -3)) == (2,)
    assert fp.cyclic_reduce((-1, 2, 1)) == (2,)
    assert fp.inverse((1, 2, -3)) == (3, -2, -1)
    assert fp.commutator((1,), (2,)) == (1, 2, -1, -2)
    assert fp.power((1, 2), -2) == (-2, -1, -2, -1)
    assert fp.substitute((1, 2, -1), {1: (2, 3)}) == (2, 3, 2, -3, -2)


def test_text_round_trip():
    text = "a,b | a b a' b'; a a"
    p = parse_presentation(text)
    assert p.relators == ((1, 2, -1, -2), (1, 1))
    assert parse_presentation(fp.format_presentation(p)) == p
    assert parse_presentation("") == Presentation()
    assert parse_presentation("x1 |") == fp.free_group(1, "x")


@pytest.mark.parametrize("bad", ["a,a | a", "a | b", "1x | ", "a | a;;a"])
def test_parse_errors(bad):
    with pytest.raises(PresentationError):
        parse_presentation(bad)


def test_free_product_examples():
    assert fp.free_product(parse_presentation("a |"), parse_presentation("b |")) == parse_presentation("a,b |")
    p = parse_presentation("a,b | a b a")
    assert fp.free_product(Presentation(), p) == p
    q = fp.free_product(parse_presentation("a | a a"), parse_presentation("b | b b b"))
    assert q == parse_presentation("a,b | a a; b b b")


def test_free_product_renames_clashes():
    q = fp.free_product(parse_presentation("a |"), parse_presentation("a | a a"))
    assert q.generator_names == ("a", "a_2")
    assert q.relators == ((2, 2),)


def test_direct_product_free_abelian_examples():
    assert ab(fp.direct_product_free_abelian(Presentation(), 2)) == AbelianInvariants(2, ())
    assert ab(fp.direct_product_free_abelian(parse_presentation("a |"), 1)) == AbelianInvariants(2, ())
    p = parse_presentation("a | a a a")
    assert fp.direct_product_free_abelian(p, 0) is p


def test_quotient_examples():
    assert ab(fp.quotient_by_words(parse_presentation("a,b |"), [(1,)])) == AbelianInvariants(1, ())
    assert ab(fp.quotient_by_words(parse_presentation("a |"), [(1, 1, 1)])) == AbelianInvariants(0, (3,))
    with pytest.raises(PresentationError):
        fp.quotient_by_words(parse_presentation("a |"), [(2,)])


def test_van_kampen_trivial_sides():
    assert fp.tietze_simplify(fp.van_kampen_sum(Presentation(), Presentation(), GluingMap())) == Presentation()


def test_van_kampen_kills_extra_generators():
    # complement pi_1 of T^2 x T^2 minus a fiber torus: Z^4 on x, y, w, z;
    # gluing to a copy of itself by x -> w', y -> z', w -> x', z -> y', with one side trivialized
    side = fp.free_abelian(4, "g")
    trivial_pairs = tuple(((i,), ()) for i in range(1, 5))
    glue = GluingMap(pairs=trivial_pairs)
    out = fp.van_kampen_sum(side, Presentation(), glue)
    assert ab(out) == AbelianInvariants(0, ())
    swap = GluingMap(pairs=(((1,), (3,)), ((2,), (4,)), ((3,), (1,)), ((4,), (2,))))
    both = fp.van_kampen_sum(side, side, swap)
    assert ab(both) == AbelianInvariants(4, ())
    # killing x, y on side 1 and x', y' on side 2 kills w', z', w, z as well
    killed = fp.quotient_by_words(both, [(1,), (2,), (5,), (6,)])
    assert ab(killed) == AbelianInvariants(0, ())


def test_van_kampen_checks_words():
    with pytest.raises(PresentationError):
        fp.van_kampen_sum(parse_presentation("a |"), Presentation(), GluingMap(pairs=(((2,), ()),)))


def test_tietze_examples():
    assert fp.tietze_simplify(parse_presentation("a,b | a b")) == parse_presentation("a |")
    assert fp.tietze_simplify(parse_presentation("a,b | a; b")) == Presentation()


def test_abelianization_examples():
    assert ab(fp.surface_group(2)) == AbelianInvariants(4, ())
    assert ab(fp.cyclic_group(5)) == AbelianInvariants(0, (5,))
    assert ab("a,b | a a b' b' b' b'; a b a' b'") == AbelianInvariants(1, (2,))
    assert str(AbelianInvariants(1, (2,))) == "Z^1 + Z/2"
    assert str(AbelianInvariants(0, ())) == "0"


@pytest.mark.parametrize("g", range(6))
def test_surface_group_homology(g):
    assert ab(fp.surface_group(g)) == AbelianInvariants(2 * g, ())


@pytest.mark.parametrize("p", range(1, 13))
def test_cyclic_homology(p):
    expected = AbelianInvariants(0, ()) if p == 1 else AbelianInvariants(0, (p,))
    assert ab(fp.cyclic_group(p)) == expected


# ---------------------------------------------------------------- properties

@st.composite
def presentations(draw, max_gens=3):
    n = draw(st.integers(0, max_gens))
    if n == 0:
        return Presentation()
    letter = st.integers(1, n).flatmap(lambda k: st.sampled_from([k, -k]))
    rels = draw(st.lists(st.lists(letter, max_size=6).map(tuple), max_size=3))
    return Presentation(tuple(f"g{i + 1}" for i in range(n)), tuple(rels))


@given(presentations())
def test_text_round_trip_property(p):
    assert parse_presentation(fp.format_presentation(p)) == p


@settings(max_examples=200)
@given(presentations())
def test_tietze_preserves_abelianization_and_never_grows(p):
    q = fp.tietze_simplify(p)
    assert fp.abelianization(q) == fp.abelianization(p)
    assert q.total_length() <= p.total_length()


@given(presentations(2), presentations(2))
def test_free_product_abelianization_adds(p, q):
    a, b, c = ab(p), ab(q), ab(fp.free_product(p, q))
    assert c.free_rank == a.free_rank + b.free_rank
    # torsion of a direct sum: invariant factors of the diagonal matrix of both chains
    t = list(a.torsion + b.torsion)
    diag = [[t[i] if i == j else 0 for j in range(len(t))] for i in range(len(t))]
    assert list(c.torsion) == [x for x in invariant_factors(diag, ncols=len(t)) if x != 1]


@given(st.lists(st.lists(st.integers(-2, 2).filter(bool), max_size=8).map(tuple), max_size=4))
def test_free_reduce_is_idempotent(words):
    for w in words:
        r = fp.free_reduce(w)
        assert fp.free_reduce(r) == r
        assert all(r[i] != -r[i + 1] for i in range(len(r) - 1))
