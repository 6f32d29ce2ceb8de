"""Registry of 4-dimensional building blocks.

Fixed blocks live in a small structured-text file (``data/blocks.txt``);
parametric families are functions.  Every descriptor carries its
characteristic numbers, a presentation of pi_1, and the embedded surfaces
available for sums and surgeries together with their gluing data.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from . import fpgroup as fp
from .charnum import CharNum4, from_c1sq_chi
from .fpgroup import Presentation, Word

REGISTRY_ENV = "CHERNPLAN_REGISTRY"

CLAIMS = frozenset({"minimal", "odd_form", "spin"})


class UnknownBlockError(KeyError):
    pass


class InadmissiblePointError(ValueError):
    pass


class RegistryError(ValueError):
    pass


def kind_for_genus(g: int) -> str:
    return {0: "sphere", 1: "torus", 2: "genus2_surface"}.get(g, f"genus{g}_surface")


def genus_of_kind(kind: str) -> int:
    fixed = {"sphere": 0, "torus": 1, "genus2_surface": 2}
    if kind in fixed:
        return fixed[kind]
    m = re.fullmatch(r"genus(\d+)_surface", kind)
    if not m:
        raise ValueError(f"unknown submanifold kind {kind!r}")
    return int(m.group(1))


@dataclass(frozen=True)
class SubmanifoldData:
    name: str
    kind: str
    self_intersection: int = 0
    complement_pi1_equals_ambient: bool = True
    meridian: Word = ()
    fiber_generator_pushoffs: tuple[Word, ...] = ()
    homologically_essential: bool = False
    lagrangian: bool = False
    # pi_1 of the complement when it differs from the ambient group; its
    # generator list starts with the ambient generators
    complement: Presentation | None = None
    verified: bool = True

    def __post_init__(self):
        expected = 2 * self.genus
        if len(self.fiber_generator_pushoffs) != expected:
            raise ValueError(
                f"{self.name}: a {self.kind} needs {expected} push-offs, got {len(self.fiber_generator_pushoffs)}"
            )
        if self.complement_pi1_equals_ambient and self.complement is not None:
            raise ValueError(f"{self.name}: complement given but marked equal to ambient")

    @property
    def genus(self) -> int:
        return genus_of_kind(self.kind)


@dataclass(frozen=True)
class BlockDescriptor:
    id: str
    char4: CharNum4
    pi1: Presentation = field(default_factory=Presentation)
    submanifolds: tuple[SubmanifoldData, ...] = ()
    claims: frozenset[str] = frozenset()
    provenance: str = ""
    pi1_verified: bool = True
    construction: str | None = None
    table_row: int | None = None
    luttinger_count: int = 0

    def submanifold(self, name: str) -> SubmanifoldData:
        for sub in self.submanifolds:
            if sub.name == name:
                return sub
        raise KeyError(f"block {self.id} has no submanifold {name!r}")

    def complement_of(self, sub: SubmanifoldData) -> Presentation:
        return self.pi1 if sub.complement is None else sub.complement


def _trivial_pushoffs(genus: int) -> tuple[Word, ...]:
    return ((),) * (2 * genus)


def _trivial_sub(name: str, genus: int, lagrangian: bool = False, verified: bool = True) -> SubmanifoldData:
    return SubmanifoldData(
        name=name,
        kind=kind_for_genus(genus),
        fiber_generator_pushoffs=_trivial_pushoffs(genus),
        homologically_essential=True,
        lagrangian=lagrangian,
        verified=verified,
    )


# ---------------------------------------------------------------- parametric families


def product_presentation(g: int) -> Presentation:
    """pi_1(T^2 x Sigma_g) on generators x, y, a1, b1, ..., ag, bg."""
    torus = Presentation(("x", "y"), (fp.commutator((1,), (2,)),))
    return fp.direct_product(torus, fp.surface_group(g))


def product_block(g: int) -> BlockDescriptor:
    """T^2 x Sigma_g with the torus T^2 x {pt} and the surface {pt} x Sigma_g."""
    if g < 1:
        raise ValueError("product_block needs g >= 1")
    amb = product_presentation(g)
    surface_rel = fp.surface_group(g).relators[0]
    surf = fp.shift(surface_rel, 2)
    xy = fp.commutator((1,), (2,))
    no_surface = Presentation(amb.generator_names, tuple(r for r in amb.relators if r != surf))
    no_xy = Presentation(amb.generator_names, tuple(r for r in amb.relators if r != xy))
    torus = SubmanifoldData(
        name="T",
        kind="torus",
        complement_pi1_equals_ambient=False,
        meridian=surf,
        fiber_generator_pushoffs=((1,), (2,)),
        homologically_essential=True,
        complement=no_surface,
    )
    surface = SubmanifoldData(
        name="F",
        kind=kind_for_genus(g),
        complement_pi1_equals_ambient=False,
        meridian=xy,
        fiber_generator_pushoffs=tuple((k,) for k in range(3, 3 + 2 * g)),
        homologically_essential=True,
        complement=no_xy,
    )
    return BlockDescriptor(
        id=f"T2xSigma_{g}",
        char4=CharNum4(0, 0, False),
        pi1=amb,
        submanifolds=(torus, surface),
        provenance="product T^2 x Sigma_g; torus and surface fibres dual, meridians via the surface relator",
    )


def _split_target(target: Presentation, g: int, r: int) -> None:
    if target.ngens != g or len(target.relators) != r:
        raise ValueError(
            f"arity mismatch: (g, r) = ({g}, {r}) but target has {target.ngens} generators and {len(target.relators)} relators"
        )
    if any(not w for w in target.relators):
        raise ValueError("every relator of the target must be nonempty")


def bk_block(g: int, r: int, target: Presentation) -> BlockDescriptor:
    """Summed BK block: e = 4(g + r), sigma = 0, pi_1 = target, torus with trivial data."""
    _split_target(target, g, r)
    return BlockDescriptor(
        id="BK",
        char4=CharNum4(4 * (g + r), 0, False),
        pi1=target,
        submanifolds=(_trivial_sub("T", 1),),
        claims=frozenset({"minimal"}),
        provenance="Baldridge-Kirk block summed with g + r copies of V; torus T is the image of T_0",
    )


@dataclass(frozen=True)
class BKRaw:
    """pi_1(Y x S^1) together with the classes s, t and the torus curves gamma_i."""

    presentation: Presentation
    s: Word
    t: Word
    gammas: tuple[Word, ...]
    n: int


def bk_raw_presentation(target: Presentation) -> BKRaw:
    """Presentation of pi_1(Y x S^1) for the surface bundle built from ``target``.

    The fibre has genus g*n with n = 1 + (total relator length); the monodromy
    shifts the second index of x_{k,l}, y_{k,l} cyclically.  The curves
    gamma_i are the rewritten relators w~_i (x_k^-1 replaced by y_k) followed
    by x_k y_k, all written on the first copy l = 1.
    """
    g = target.ngens
    n = 1 + sum(len(w) for w in target.relators)
    names: list[str] = []
    for l in range(1, n + 1):
        for k in range(1, g + 1):
            names += [f"x{k}_{l}", f"y{k}_{l}"]
    names += ["t", "s"]
    t_idx = len(names) - 1
    s_idx = len(names)

    def xi(k, l):
        return 2 * ((l - 1) * g + (k - 1)) + 1

    def yi(k, l):
        return xi(k, l) + 1

    rels: list[Word] = []
    for l in range(1, n + 1):
        nl = l % n + 1
        for k in range(1, g + 1):
            for gen, img in ((xi(k, l), xi(k, nl)), (yi(k, l), yi(k, nl))):
                rels.append(fp.free_reduce((t_idx, gen, -t_idx, -img)))
    surface: list[int] = []
    for l in range(1, n + 1):
        for k in range(1, g + 1):
            surface += fp.commutator((xi(k, l),), (yi(k, l),))
    if surface:
        rels.append(tuple(surface))
    for other in range(1, s_idx):
        rels.append(fp.commutator((s_idx,), (other,)))
    gammas = []
    for w in target.relators:
        gammas.append(tuple(xi(x, 1) if x > 0 else yi(-x, 1) for x in w))
    for k in range(1, g + 1):
        gammas.append((xi(k, 1), yi(k, 1)))
    return BKRaw(Presentation(tuple(names), tuple(rels)), (s_idx,), (t_idx,), tuple(gammas), n)


def bk_quotient(target: Presentation, kill_gammas: bool = True) -> Presentation:
    """Kill s and t (sum along T_0) and optionally every gamma_i (sums along T_1..T_{g+r})."""
    raw = bk_raw_presentation(target)
    killed = [raw.s, raw.t] + (list(raw.gammas) if kill_gammas else [])
    return fp.quotient_by_words(raw.presentation, killed)


TELESCOPING = {
    "A": (5, -1),
    "C": (7, -3),
    "D": (8, -4),
    "F": (10, -6),
}


def telescoping(id: str, g_param: int = 0) -> BlockDescriptor:
    """Minimal telescoping triple (X, T1, T2) with pi_1 = Z^2.

    T1 maps onto a summand (push-offs u, 1); T2 maps isomorphically (u, v).
    """
    if id in ("B", "B_g") or re.fullmatch(r"B_\d+", id):
        if re.fullmatch(r"B_\d+", id) and id != "B_g":
            g_param = int(id[2:])
        if g_param < 0:
            raise ValueError("g_param must be non-negative")
        e, sigma = 6 + 4 * g_param, -2
        name = f"B_{g_param}"
    elif id in TELESCOPING:
        e, sigma = TELESCOPING[id]
        name = id
    else:
        raise UnknownBlockError(f"unknown telescoping triple {id!r}")
    z2 = Presentation(("u", "v"), (fp.commutator((1,), (2,)),))
    t1 = SubmanifoldData("T1", "torus", fiber_generator_pushoffs=((1,), ()), homologically_essential=True, lagrangian=True)
    t2 = SubmanifoldData("T2", "torus", fiber_generator_pushoffs=((1,), (2,)), homologically_essential=True, lagrangian=True)
    return BlockDescriptor(
        id=name,
        char4=CharNum4(e, sigma, False),
        pi1=z2,
        submanifolds=(t1, t2),
        claims=frozenset({"minimal"}),
        provenance="telescoping triple: T1 onto a Z summand, T2 isomorphism on pi_1",
    )


def region_violation(e: int, sigma: int) -> str | None:
    """Name the first violated constraint of the nonspin geography region, if any."""
    if 2 * e + 3 * sigma < 0:
        return f"2e + 3sigma = {2 * e + 3 * sigma} < 0"
    if (e + sigma) % 4:
        return f"e + sigma = {e + sigma} is not divisible by 4"
    if e + sigma < 8:
        return f"e + sigma = {e + sigma} < 8"
    if sigma > -1:
        return f"sigma = {sigma} > -1"
    return None


def geography_block(e: int, sigma: int, variant: str = "Z11") -> BlockDescriptor:
    """Simply connected minimal block at (e, sigma) with trivial-meridian surfaces.

    Z11 carries two Lagrangian tori; Z12 a Lagrangian torus and a genus-2 surface.
    """
    bad = region_violation(e, sigma)
    if bad:
        raise InadmissiblePointError(f"({e}, {sigma}) outside the geography region: {bad}")
    if variant == "Z11":
        subs = (_trivial_sub("T1", 1, lagrangian=True), _trivial_sub("T2", 1, lagrangian=True))
    elif variant == "Z12":
        subs = (_trivial_sub("T1", 1, lagrangian=True), _trivial_sub("F", 2))
    else:
        raise UnknownBlockError(f"unknown geography variant {variant!r}")
    return BlockDescriptor(
        id=variant,
        char4=CharNum4(e, sigma, False),
        pi1=Presentation(),
        submanifolds=subs,
        claims=frozenset({"minimal", "odd_form"}),
        provenance="simply connected minimal block; complements of its surfaces are simply connected",
    )


def spin_block(n: int, s: int) -> BlockDescriptor:
    """Simply connected spin block with (c1^2, chi_h) = (8n - 8, 2s + n - 1)."""
    if n < 1 or s < 1:
        raise ValueError(f"spin_block needs n >= 1 and s >= 1, got n={n}, s={s}")
    char4 = from_c1sq_chi(8 * n - 8, 2 * s + n - 1, spin=True)
    subs = (
        _trivial_sub("T1", 1),
        _trivial_sub("T2", 1),
        # genus-2 surface assumed for the 6-dimensional sums; not printed
        _trivial_sub("F", 2, verified=False),
    )
    return BlockDescriptor(
        id="spin",
        char4=char4,
        pi1=Presentation(),
        submanifolds=subs,
        claims=frozenset({"minimal", "spin"}),
        provenance="simply connected spin block with a self-intersection-zero torus of simply connected complement",
    )


def free_group_block(n: int) -> BlockDescriptor:
    """Y x S^1 for the mapping torus of Dehn twists on Sigma_n, with section torus T'."""
    if n < 1:
        raise ValueError("free_group_block needs n >= 1")
    names = []
    for i in range(1, n + 1):
        names += [f"x{i}", f"y{i}"]
    names += ["t", "s"]
    t, s = 2 * n + 1, 2 * n + 2
    rels: list[Word] = []
    for i in range(1, n + 1):
        x, y = 2 * i - 1, 2 * i
        rels.append(fp.free_reduce((t, x, -t, -x)))
        rels.append(fp.free_reduce((t, y, -t, -x, -y)))
    surface: list[int] = []
    for i in range(1, n + 1):
        surface += fp.commutator((2 * i - 1,), (2 * i,))
    rels.append(tuple(surface))
    rels += [fp.commutator((s,), (k,)) for k in range(1, s)]
    torus = SubmanifoldData("T", "torus", fiber_generator_pushoffs=((t,), (s,)), homologically_essential=True)
    return BlockDescriptor(
        id="YxS1_free",
        char4=CharNum4(0, 0, False),
        pi1=Presentation(tuple(names), tuple(rels)),
        submanifolds=(torus,),
        provenance="Y x S^1, Y the mapping torus of Dehn twists along x_i; pi_1 as an HNN extension times Z",
    )


# ---------------------------------------------------------------- registry file


_SUB_KEY = re.compile(r"sub\.([A-Za-z0-9_']+)\.(kind|self_intersection|meridian|pushoffs|flags|complement|status)\Z")
_BLOCK_KEYS = {
    "e", "sigma", "spin", "claims", "provenance", "pi1", "pi1_status",
    "c1sq", "chi_h", "construction", "table_row", "luttinger",
}


def _parse_bool(value: str, line: int) -> bool:
    if value.lower() in ("true", "yes", "1"):
        return True
    if value.lower() in ("false", "no", "0"):
        return False
    raise RegistryError(f"line {line}: expected a boolean, got {value!r}")


def _parse_int(value: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise RegistryError(f"line {line}: expected an integer, got {value!r}") from None


def _build_record(block_id: str, start: int, fields: dict[str, tuple[str, int]]) -> BlockDescriptor:
    def get(key, default=None):
        return fields[key][0] if key in fields else default

    def line_of(key):
        return fields[key][1] if key in fields else start

    for key in ("e", "sigma"):
        if key not in fields:
            raise RegistryError(f"line {start}: block {block_id} is missing {key!r}")
    e = _parse_int(get("e"), line_of("e"))
    sigma = _parse_int(get("sigma"), line_of("sigma"))
    spin = _parse_bool(get("spin", "false"), line_of("spin"))
    char4 = CharNum4(e, sigma, spin)
    if spin and sigma % 16:
        raise RegistryError(f"line {line_of('sigma')}: block {block_id} claims spin but sigma = {sigma} is not divisible by 16")
    if "c1sq" in fields and _parse_int(get("c1sq"), line_of("c1sq")) != char4.c1_squared():
        raise RegistryError(f"line {line_of('c1sq')}: block {block_id}: c1sq does not equal 2e + 3sigma = {char4.c1_squared()}")
    if "chi_h" in fields:
        chi = _parse_int(get("chi_h"), line_of("chi_h"))
        if 4 * chi != e + sigma:
            raise RegistryError(f"line {line_of('chi_h')}: block {block_id}: 4 chi_h = {4 * chi} differs from e + sigma = {e + sigma}")
    claims = frozenset(c.strip() for c in get("claims", "").split(",") if c.strip())
    if claims - CLAIMS:
        raise RegistryError(f"line {line_of('claims')}: unknown claims {sorted(claims - CLAIMS)}")
    try:
        pi1 = fp.parse_presentation(get("pi1", ""))
    except fp.PresentationError as exc:
        raise RegistryError(f"line {line_of('pi1')}: {exc}") from None
    status = get("pi1_status", "claimed")
    if status not in ("verified", "claimed"):
        raise RegistryError(f"line {line_of('pi1_status')}: pi1_status must be verified or claimed")

    subs: dict[str, dict[str, tuple[str, int]]] = {}
    for key, (value, line) in fields.items():
        m = _SUB_KEY.match(key)
        if m:
            subs.setdefault(m.group(1), {})[m.group(2)] = (value, line)
    submanifolds = []
    for name, data in subs.items():
        first = min(line for _, line in data.values())
        try:
            kind = data["kind"][0] if "kind" in data else "torus"
            genus = genus_of_kind(kind)
            complement = None
            names = pi1.generator_names
            if "complement" in data:
                complement = fp.parse_presentation(data["complement"][0])
                if complement.generator_names[: pi1.ngens] != names:
                    raise RegistryError(f"line {data['complement'][1]}: complement generators must extend the ambient ones")
                names = complement.generator_names
            meridian = fp.parse_word(data["meridian"][0], names) if "meridian" in data else ()
            pushoffs_text = data["pushoffs"][0] if "pushoffs" in data else ""
            pushoffs = tuple(fp.parse_word(w, names) for w in pushoffs_text.split(";")) if pushoffs_text.strip() else ()
            if not pushoffs and genus:
                pushoffs = _trivial_pushoffs(genus)
            flags = {f.strip() for f in data.get("flags", ("", 0))[0].split(",") if f.strip()}
            unknown = flags - {"essential", "lagrangian"}
            if unknown:
                raise RegistryError(f"line {data['flags'][1]}: unknown flags {sorted(unknown)}")
            sub_status = data.get("status", ("verified", 0))[0]
            if sub_status not in ("verified", "claimed"):
                raise RegistryError(f"line {data['status'][1]}: status must be verified or claimed")
            submanifolds.append(
                SubmanifoldData(
                    name=name,
                    kind=kind,
                    self_intersection=_parse_int(data["self_intersection"][0], data["self_intersection"][1])
                    if "self_intersection" in data
                    else 0,
                    complement_pi1_equals_ambient=complement is None,
                    meridian=meridian,
                    fiber_generator_pushoffs=pushoffs,
                    homologically_essential="essential" in flags,
                    lagrangian="lagrangian" in flags,
                    complement=complement,
                    verified=sub_status == "verified",
                )
            )
        except RegistryError:
            raise
        except (ValueError, fp.PresentationError) as exc:
            raise RegistryError(f"line {first}: block {block_id}, submanifold {name}: {exc}") from None
    return BlockDescriptor(
        id=block_id,
        char4=char4,
        pi1=pi1,
        submanifolds=tuple(submanifolds),
        claims=claims,
        provenance=get("provenance", ""),
        pi1_verified=status == "verified",
        construction=get("construction"),
        table_row=_parse_int(get("table_row"), line_of("table_row")) if "table_row" in fields else None,
        luttinger_count=_parse_int(get("luttinger", "0"), line_of("luttinger")),
    )


def parse_registry(text: str) -> dict[str, BlockDescriptor]:
    """Parse registry text; raise RegistryError naming the offending line."""
    blocks: dict[str, BlockDescriptor] = {}
    first_line: dict[str, int] = {}
    current: tuple[str, int] | None = None
    fields: dict[str, tuple[str, int]] = {}

    def flush():
        if current is not None:
            blocks[current[0]] = _build_record(current[0], current[1], fields)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise RegistryError(f"line {lineno}: malformed header {line!r}")
            flush()
            block_id = line[1:-1].strip()
            if not re.fullmatch(r"[A-Za-z0-9_]+", block_id):
                raise RegistryError(f"line {lineno}: bad block id {block_id!r}")
            if block_id in first_line:
                raise RegistryError(f"line {lineno}: duplicate block id {block_id!r} (first defined on line {first_line[block_id]})")
            first_line[block_id] = lineno
            current = (block_id, lineno)
            fields = {}
            continue
        if current is None:
            raise RegistryError(f"line {lineno}: field outside of a block")
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise RegistryError(f"line {lineno}: expected 'key = value'")
        if key not in _BLOCK_KEYS and not _SUB_KEY.match(key):
            raise RegistryError(f"line {lineno}: unknown field {key!r}")
        if key in fields:
            raise RegistryError(f"line {lineno}: field {key!r} repeated")
        fields[key] = (value.strip(), lineno)
    flush()
    return blocks


class Registry(Mapping[str, BlockDescriptor]):
    """Immutable mapping of fixed blocks, plus resolution of parametric families."""

    def __init__(self, blocks: Mapping[str, BlockDescriptor]):
        self._blocks = dict(blocks)

    def __getitem__(self, key):
        return self._blocks[key]

    def __iter__(self):
        return iter(self._blocks)

    def __len__(self):
        return len(self._blocks)

    @classmethod
    def from_text(cls, text: str) -> "Registry":
        return cls(parse_registry(text))

    @classmethod
    def from_path(cls, path: str | os.PathLike) -> "Registry":
        return cls.from_text(Path(path).read_text())

    def lookup(self, id: str) -> BlockDescriptor:
        if id in self._blocks:
            return self._blocks[id]
        if id in TELESCOPING or re.fullmatch(r"B_\d+", id):
            return telescoping(id)
        raise UnknownBlockError(f"unknown block {id!r}")

    def resolve(self, block: str, params: Mapping | None = None) -> BlockDescriptor:
        """Registry entry or parametric-family call used by recipe leaves."""
        params = dict(params or {})
        if block in ("Z11", "Z12"):
            return geography_block(params["e"], params["sigma"], block)
        if block == "BK":
            target = params["group"]
            if isinstance(target, str):
                target = fp.parse_presentation(target)
            return bk_block(target.ngens, len(target.relators), target)
        if block == "spin":
            return spin_block(params["n"], params["s"])
        if block == "T2xSigma":
            return product_block(params["g"])
        if block == "YxS1_free":
            return free_group_block(params["n"])
        if block == "B" and "g" in params:
            return telescoping("B", params["g"])
        if params:
            raise UnknownBlockError(f"block {block!r} takes no parameters")
        return self.lookup(block)


PARAMETRIC_FAMILIES = {
    "Z11": "geography block (e, sigma), two Lagrangian tori",
    "Z12": "geography block (e, sigma), Lagrangian torus + genus-2 surface",
    "BK": "prescribed pi_1 block, e = 4(g + r), sigma = 0",
    "spin": "spin block (n, s): c1^2 = 8n - 8, chi_h = 2s + n - 1",
    "T2xSigma": "T^2 x Sigma_g product",
    "YxS1_free": "Y x S^1 block for free groups F_n",
    "A/B_g/C/D/F": "telescoping triples",
}


def default_registry_path() -> Path:
    return Path(str(resources.files("chernplan") / "data" / "blocks.txt"))


def load_registry(path: str | os.PathLike | None = None) -> Registry:
    """Load the registry: explicit path, then $CHERNPLAN_REGISTRY, then the bundled file."""
    chosen = path or os.environ.get(REGISTRY_ENV) or default_registry_path()
    return Registry.from_path(chosen)


_DEFAULT: Registry | None = None


def default_registry() -> Registry:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Registry.from_path(default_registry_path())
    return _DEFAULT


def lookup(id: str) -> BlockDescriptor:
    return default_registry().lookup(id)


def parse_construction(text: str) -> tuple[list[str], list[int]]:
    """Split ``A #Sigma2 B #T2 C`` into operand ids and locus genera."""
    tokens = text.split()
    operands = tokens[0::2]
    genera = []
    for op in tokens[1::2]:
        if op == "#T2":
            genera.append(1)
        elif op == "#Sigma2":
            genera.append(2)
        else:
            raise ValueError(f"unknown sum operator {op!r} in {text!r}")
    if len(operands) != len(genera) + 1:
        raise ValueError(f"malformed construction {text!r}")
    return operands, genera
