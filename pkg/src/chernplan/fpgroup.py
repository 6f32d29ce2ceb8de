"""Finitely presented groups.

A word is a tuple of nonzero ints: ``k`` stands for generator ``k - 1`` and
``-k`` for its inverse.  Generator names are display metadata only; every
combinator works on indices.

Text format::

    a,b | a b a' b'; a a

Generators are comma separated, relators are separated by ``;`` and written
as space separated generator names with a trailing ``'`` for an inverse.
The identity word is written ``1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import snf

Word = tuple[int, ...]

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PresentationError(ValueError):
    pass


def free_reduce(word: Iterable[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word: Iterable[int]) -> Word:
    w = free_reduce(word)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i : j + 1]


def inverse(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


def commutator(a: Sequence[int], b: Sequence[int]) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    return free_reduce(tuple(a) + tuple(b) + inverse(a) + inverse(b))


def power(word: Sequence[int], k: int) -> Word:
    base = tuple(word) if k >= 0 else inverse(word)
    return free_reduce(base * abs(k))


def shift(word: Sequence[int], offset: int) -> Word:
    return tuple(x + offset if x > 0 else x - offset for x in word)


def substitute(word: Sequence[int], images: dict[int, Word]) -> Word:
    """Replace each generator index (1-based) found in ``images`` by its image word."""
    out: list[int] = []
    for x in word:
        img = images.get(abs(x))
        if img is None:
            out.append(x)
        else:
            out.extend(img if x > 0 else inverse(img))
    return free_reduce(out)


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...] = ()
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        names = tuple(self.generator_names)
        object.__setattr__(self, "generator_names", names)
        n = len(names)
        rels = []
        for r in self.relators:
            r = tuple(int(x) for x in r)
            for x in r:
                if x == 0 or abs(x) > n:
                    raise PresentationError(f"letter {x} does not address one of {n} generators")
            rels.append(cyclic_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self) -> int:
        return len(self.generator_names)

    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)

    def index(self, name: str) -> int:
        """1-based index of a generator name."""
        try:
            return self.generator_names.index(name) + 1
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def check_word(self, word: Sequence[int]) -> Word:
        for x in word:
            if x == 0 or abs(x) > self.ngens:
                raise PresentationError(f"letter {x} does not address one of {self.ngens} generators")
        return tuple(word)

    def spell(self, word: Sequence[int]) -> str:
        return format_word(word, self.generator_names)

    def __str__(self) -> str:
        return format_presentation(self)


# ---------------------------------------------------------------- text format


def parse_word(text: str, names: Sequence[str]) -> Word:
    lookup = {name: i + 1 for i, name in enumerate(names)}
    out = []
    for token in text.split():
        if token == "1":
            continue
        inv = token.endswith("'")
        name = token[:-1] if inv else token
        if name not in lookup:
            raise PresentationError(f"unknown generator {name!r} in word {text!r}")
        out.append(-lookup[name] if inv else lookup[name])
    return tuple(out)


def format_word(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "1"
    return " ".join(names[x - 1] if x > 0 else names[-x - 1] + "'" for x in word)


def parse_presentation(text: str) -> Presentation:
    """Parse ``a,b | a b a' b'``.  An empty string is the trivial group."""
    gens_part, sep, rels_part = text.partition("|")
    gens_part = gens_part.strip()
    names = [g.strip() for g in gens_part.split(",")] if gens_part else []
    for name in names:
        if not _NAME.match(name):
            raise PresentationError(f"bad generator name {name!r}")
    if len(set(names)) != len(names):
        raise PresentationError(f"duplicate generator names in {gens_part!r}")
    rels = []
    if rels_part.strip():
        for chunk in rels_part.split(";"):
            if not chunk.strip():
                raise PresentationError(f"empty relator in {text!r}")
            rels.append(parse_word(chunk, names))
    return Presentation(tuple(names), tuple(rels))


def format_presentation(p: Presentation) -> str:
    gens = ",".join(p.generator_names)
    if not p.relators:
        return f"{gens} |" if gens else "|"
    rels = "; ".join(p.spell(r) for r in p.relators)
    return f"{gens} | {rels}" if gens else f"| {rels}"


# ---------------------------------------------------------------- constructors


def free_group(n: int, prefix: str = "a") -> Presentation:
    return Presentation(tuple(f"{prefix}{i + 1}" for i in range(n)))


def cyclic_group(p: int, name: str = "x") -> Presentation:
    return Presentation((name,), ((1,) * p,))


def free_abelian(k: int, prefix: str = "t") -> Presentation:
    names = tuple(f"{prefix}{i + 1}" for i in range(k))
    rels = [commutator((i + 1,), (j + 1,)) for i in range(k) for j in range(i + 1, k)]
    return Presentation(names, tuple(rels))


def surface_group(g: int, a: str = "a", b: str = "b") -> Presentation:
    """pi_1 of the closed orientable genus-g surface, [a1,b1]...[ag,bg]."""
    names = []
    for i in range(g):
        names += [f"{a}{i + 1}", f"{b}{i + 1}"]
    rel: list[int] = []
    for i in range(g):
        rel += commutator((2 * i + 1,), (2 * i + 2,))
    return Presentation(tuple(names), (tuple(rel),) if g else ())


def trivial_group() -> Presentation:
    return Presentation()


def _unique_names(existing: Sequence[str], new: Sequence[str]) -> tuple[str, ...]:
    taken = set(existing)
    out = []
    for name in new:
        candidate, k = name, 2
        while candidate in taken:
            candidate = f"{name}_{k}"
            k += 1
        taken.add(candidate)
        out.append(candidate)
    return tuple(out)


# ---------------------------------------------------------------- combinators


def free_product(p: Presentation, q: Presentation) -> Presentation:
    """Disjoint union of generators (q's indices shifted past p's), union of relators."""
    names = p.generator_names + _unique_names(p.generator_names, q.generator_names)
    rels = p.relators + tuple(shift(r, p.ngens) for r in q.relators)
    return Presentation(names, rels)


def direct_product(p: Presentation, q: Presentation) -> Presentation:
    """Free product plus commutators between every p-generator and every q-generator."""
    fp = free_product(p, q)
    extra = [commutator((i + 1,), (p.ngens + j + 1,)) for i in range(p.ngens) for j in range(q.ngens)]
    return Presentation(fp.generator_names, fp.relators + tuple(extra))


def direct_product_free_abelian(p: Presentation, k: int, prefix: str = "t") -> Presentation:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return p
    return direct_product(p, free_abelian(k, prefix))


def quotient_by_words(p: Presentation, killed: Iterable[Sequence[int]]) -> Presentation:
    words = [p.check_word(tuple(w)) for w in killed]
    return Presentation(p.generator_names, p.relators + tuple(words))


@dataclass(frozen=True)
class GluingMap:
    """Identification data for a van Kampen sum.

    ``pairs`` lists (side-1 word, side-2 word) pairs to identify; side-2 words
    are written over side 2's own generators.  The meridian relation glues
    ``meridian1 * meridian2`` to the identity.
    """

    pairs: tuple[tuple[Word, Word], ...] = ()
    meridian1: Word = ()
    meridian2: Word = ()


def van_kampen_sum(pc1: Presentation, pc2: Presentation, glue: GluingMap) -> Presentation:
    combined = free_product(pc1, pc2)
    off = pc1.ngens
    rels = []
    for left, right in glue.pairs:
        pc1.check_word(left)
        pc2.check_word(right)
        rels.append(free_reduce(tuple(left) + inverse(shift(right, off))))
    pc1.check_word(glue.meridian1)
    pc2.check_word(glue.meridian2)
    rels.append(free_reduce(tuple(glue.meridian1) + shift(glue.meridian2, off)))
    return Presentation(combined.generator_names, combined.relators + tuple(rels))


# ---------------------------------------------------------------- simplification


def _canonical(word: Word) -> Word:
    """Representative of a relator up to cyclic permutation and inversion."""
    if not word:
        return word
    best = None
    for w in (word, inverse(word)):
        for i in range(len(w)):
            rot = w[i:] + w[:i]
            if best is None or rot < best:
                best = rot
    return best


def _drop_generator(names: list[str], rels: list[Word], gen: int, image: Word) -> tuple[list[str], list[Word]]:
    """Substitute generator ``gen`` (1-based) by ``image`` and renumber."""
    new_rels = []
    for r in rels:
        w = substitute(r, {gen: image})
        new_rels.append(tuple(x - 1 if abs(x) > gen and x > 0 else x + 1 if abs(x) > gen else x for x in w))
    del names[gen - 1]
    return names, new_rels


def _tidy(rels: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in rels:
        r = cyclic_reduce(r)
        if not r:
            continue
        key = _canonical(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def tietze_simplify(p: Presentation, budget: int = 500) -> Presentation:
    """Bounded Tietze simplification that never increases total relator length.

    Moves: free and cyclic reduction, dropping trivial or duplicate relators,
    deleting generators that are killed by a length-one relator, and
    eliminating a generator that occurs exactly once in some relator when the
    substitution does not lengthen the presentation.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    names = list(p.generator_names)
    rels = _tidy(list(p.relators))
    for _ in range(budget):
        changed = False
        short = next((r for r in rels if len(r) == 1), None)
        if short is not None:
            names, rels = _drop_generator(names, rels, abs(short[0]), ())
            rels = _tidy(rels)
            continue
        total = sum(map(len, rels))
        best = None
        for ri, r in sorted(enumerate(rels), key=lambda t: (len(t[1]), t[0])):
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            for gen in sorted((g for g, c in counts.items() if c == 1), reverse=True):
                pos = next(i for i, x in enumerate(r) if abs(x) == gen)
                rot = r[pos:] + r[:pos]
                # rot = x^e * rest  ==>  x = rest^-1 (e=1) or x = rest (e=-1)
                rest = rot[1:]
                image = inverse(rest) if rot[0] > 0 else tuple(rest)
                trial = [substitute(s, {gen: image}) for k, s in enumerate(rels) if k != ri]
                trial = _tidy(trial)
                new_total = sum(map(len, trial))
                if new_total <= total:
                    best = (ri, gen, image)
                    break
            if best:
                break
        if best:
            ri, gen, image = best
            others = [s for k, s in enumerate(rels) if k != ri]
            names, rels = _drop_generator(names, others, gen, image)
            rels = _tidy(rels)
            changed = True
        if not changed:
            break
    return Presentation(tuple(names), tuple(rels))


# ---------------------------------------------------------------- abelianization


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        parts = [f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def exponent_matrix(p: Presentation) -> list[list[int]]:
    rows = []
    for r in p.relators:
        row = [0] * p.ngens
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> AbelianInvariants:
    if p.ngens == 0:
        return AbelianInvariants(0, ())
    factors = snf.invariant_factors(exponent_matrix(p), ncols=p.ngens)
    return AbelianInvariants(
        free_rank=p.ngens - len(factors),
        torsion=tuple(d for d in factors if d > 1),
    )
