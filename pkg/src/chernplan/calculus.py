"""Construction recipes and their evaluation.

A recipe is a tree of steps.  Evaluating it folds the characteristic-number
arithmetic of :mod:`chernplan.charnum` and the presentation combinators of
:mod:`chernplan.fpgroup` over the tree at the same time, carrying along the
embedded submanifolds each intermediate manifold still offers for sums.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import charnum as cn
from . import fpgroup as fp
from .blocks import (
    BlockDescriptor,
    Registry,
    default_registry,
    genus_of_kind,
    parse_construction,
    region_violation,
)
from .charnum import CharNum4, ChernTriple, FourFiber, SurfaceGenus
from .fpgroup import GluingMap, Presentation, Word


class RecipeError(ValueError):
    """Malformed recipe: bad JSON, unknown op, or dimension-discipline violation."""


class EvaluationError(ValueError):
    """A well-formed recipe that cannot be evaluated (missing surface, bad words, ...)."""

    def __init__(self, message: str, node: int | None = None):
        super().__init__(message if node is None else f"node {node}: {message}")
        self.node = node


# ---------------------------------------------------------------- steps


@dataclass(frozen=True)
class Glue:
    """Which submanifolds to sum along and how to identify their push-offs.

    ``map`` is ``"default"``, ``"identity"``, ``"swap"`` or a tuple of signed
    1-based indices: entry i names the right push-off glued to left push-off i
    (negative means its inverse).
    """

    left: str | None = None
    right: str | None = None
    map: str | tuple[int, ...] = "default"

    def to_json(self):
        out: dict[str, Any] = {"map": list(self.map) if isinstance(self.map, tuple) else self.map}
        if self.left is not None:
            out["left"] = self.left
        if self.right is not None:
            out["right"] = self.right
        return out

    @classmethod
    def from_json(cls, data) -> "Glue":
        if not isinstance(data, dict):
            raise RecipeError("glue must be an object")
        m = data.get("map", "default")
        if isinstance(m, list):
            if not all(isinstance(x, int) and x for x in m):
                raise RecipeError("glue map list must hold nonzero integers")
            m = tuple(m)
        elif m not in ("default", "identity", "swap"):
            raise RecipeError(f"unknown glue map {m!r}")
        return cls(data.get("left"), data.get("right"), m)


@dataclass(frozen=True)
class Step:
    def children(self) -> tuple["Step", ...]:
        return ()


@dataclass(frozen=True)
class Leaf(Step):
    block: str
    params: tuple[tuple[str, Any], ...] = ()

    @classmethod
    def make(cls, block: str, **params) -> "Leaf":
        clean = {}
        for k, v in params.items():
            clean[k] = fp.format_presentation(v) if isinstance(v, Presentation) else v
        return cls(block, tuple(sorted(clean.items())))


@dataclass(frozen=True)
class Sum4(Step):
    left: Step
    right: Step
    genus: int
    glue: Glue = Glue()

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Luttinger(Step):
    """Surgery on a Lagrangian torus: adds the relator mu * pushoff^sign."""

    child: Step
    torus: str
    pushoff: int = 1
    sign: int = 1

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Product(Step):
    child: Step
    genus: int

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Sum6(Step):
    left: Step
    right: Step
    fiber: tuple[int, int]
    glue: Glue = Glue()

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class BlowUpPoint(Step):
    child: Step
    count: int = 1

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class BlowUpSurface(Step):
    child: Step
    genus: int
    pairing: int
    count: int = 1

    def children(self):
        return (self.child,)


_OPS = {
    Leaf: "leaf",
    Sum4: "sum4",
    Luttinger: "luttinger",
    Product: "product",
    Sum6: "sum6",
    BlowUpPoint: "blowup_point",
    BlowUpSurface: "blowup_surface",
}


def _step_to_json(step: Step) -> dict:
    out: dict[str, Any] = {"op": _OPS[type(step)]}
    if isinstance(step, Leaf):
        out["block"] = step.block
        if step.params:
            out["params"] = dict(step.params)
        return out
    if isinstance(step, (Sum4, Product, BlowUpSurface)):
        out["genus"] = step.genus
    if isinstance(step, BlowUpSurface):
        out["pairing"] = step.pairing
    if isinstance(step, Sum6):
        out["fiber"] = list(step.fiber)
    if isinstance(step, (Sum4, Sum6)):
        out["glue"] = step.glue.to_json()
    if isinstance(step, (BlowUpPoint, BlowUpSurface)) and step.count != 1:
        out["count"] = step.count
    if isinstance(step, Luttinger):
        out["surgery"] = {"torus": step.torus, "pushoff": step.pushoff, "sign": step.sign}
    out["children"] = [_step_to_json(c) for c in step.children()]
    return out


def _int_field(data, key, path):
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise RecipeError(f"{path}: field {key!r} must be an integer")
    return value


def _step_from_json(data, path: str = "root") -> Step:
    if not isinstance(data, dict):
        raise RecipeError(f"{path}: expected an object")
    op = data.get("op")
    children = data.get("children", [])
    if not isinstance(children, list):
        raise RecipeError(f"{path}: children must be a list")
    kids = [_step_from_json(c, f"{path}.children[{i}]") for i, c in enumerate(children)]
    arity = {"leaf": 0, "sum4": 2, "sum6": 2, "luttinger": 1, "product": 1, "blowup_point": 1, "blowup_surface": 1}
    if op not in arity:
        raise RecipeError(f"{path}: unknown op {op!r}")
    if len(kids) != arity[op]:
        raise RecipeError(f"{path}: op {op} needs {arity[op]} children, got {len(kids)}")
    if op == "leaf":
        block = data.get("block")
        if not isinstance(block, str):
            raise RecipeError(f"{path}: leaf needs a block name")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise RecipeError(f"{path}: params must be an object")
        return Leaf(block, tuple(sorted(params.items())))
    if op == "sum4":
        return Sum4(kids[0], kids[1], _int_field(data, "genus", path), Glue.from_json(data.get("glue", {})))
    if op == "sum6":
        fiber = data.get("fiber")
        if not (isinstance(fiber, list) and len(fiber) == 2 and all(isinstance(x, int) for x in fiber)):
            raise RecipeError(f"{path}: fiber must be a pair of integers")
        return Sum6(kids[0], kids[1], (fiber[0], fiber[1]), Glue.from_json(data.get("glue", {})))
    if op == "luttinger":
        s = data.get("surgery")
        if not isinstance(s, dict) or not isinstance(s.get("torus"), str):
            raise RecipeError(f"{path}: luttinger needs surgery.torus")
        return Luttinger(kids[0], s["torus"], _int_field(s, "pushoff", path), _int_field(s, "sign", path))
    if op == "product":
        return Product(kids[0], _int_field(data, "genus", path))
    count = _int_field(data, "count", path) if "count" in data else 1
    if count < 1:
        raise RecipeError(f"{path}: count must be positive")
    if op == "blowup_point":
        return BlowUpPoint(kids[0], count)
    return BlowUpSurface(kids[0], _int_field(data, "genus", path), _int_field(data, "pairing", path), count)


@dataclass(frozen=True)
class Recipe:
    root: Step

    def nodes(self) -> list[Step]:
        """Steps in post-order (children before parents); the root is last."""
        out: list[Step] = []

        def walk(s):
            for c in s.children():
                walk(c)
            out.append(s)

        walk(self.root)
        return out

    def to_json(self) -> str:
        return json.dumps(_step_to_json(self.root), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Recipe":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RecipeError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return cls(_step_from_json(data))


# ---------------------------------------------------------------- evaluation


@dataclass(frozen=True)
class Locus:
    """An embedded submanifold carried through evaluation.

    ``genera`` is (g,) for a surface in a 4-manifold and (a, b) for a product
    Sigma_a x Sigma_b in a 6-manifold.
    """

    name: str
    genera: tuple[int, ...]
    meridian: Word
    pushoffs: tuple[Word, ...]
    complement: Presentation | None
    verified: bool
    lagrangian: bool = False


@dataclass(frozen=True)
class Value:
    dim: int
    char4: CharNum4 | None
    chern: ChernTriple | None
    pi1: Presentation
    loci: tuple[Locus, ...]
    verified: bool

    def locus(self, name: str, node: int) -> Locus:
        for loc in self.loci:
            if loc.name == name:
                return loc
        raise EvaluationError(f"no submanifold named {name!r}", node)

    def complement_of(self, loc: Locus) -> Presentation:
        return self.pi1 if loc.complement is None else loc.complement


@dataclass(frozen=True)
class EvalResult:
    dim: int
    char4: CharNum4 | None
    chern: ChernTriple | None
    pi1: Presentation
    pi1_verified: bool
    raw_pi1: Presentation = field(default_factory=Presentation, compare=False)


def _from_block(b: BlockDescriptor) -> Value:
    loci = tuple(
        Locus(
            name=s.name,
            genera=(genus_of_kind(s.kind),),
            meridian=s.meridian,
            pushoffs=s.fiber_generator_pushoffs,
            complement=s.complement,
            verified=s.verified,
            lagrangian=s.lagrangian,
        )
        for s in b.submanifolds
    )
    return Value(4, b.char4, None, b.pi1, loci, b.pi1_verified)


def _pick(value: Value, name: str | None, genera: tuple[int, ...], node: int, side: str) -> Locus:
    if name is not None:
        loc = value.locus(name, node)
        if loc.genera != genera:
            raise EvaluationError(f"{side} submanifold {name!r} has genera {loc.genera}, expected {genera}", node)
        return loc
    for loc in value.loci:
        if loc.genera == genera:
            return loc
    raise EvaluationError(f"{side} side has no submanifold with genera {genera}", node)


def _pairs(left: Locus, right: Locus, glue: Glue, swap_default: bool, node: int) -> tuple[tuple[Word, Word], ...]:
    a, b = left.pushoffs, right.pushoffs
    if len(a) != len(b):
        raise EvaluationError(f"push-off counts differ ({len(a)} vs {len(b)})", node)
    mode = glue.map
    if mode == "default":
        mode = "swap" if swap_default else "identity"
    if mode == "identity":
        return tuple(zip(a, b))
    if mode == "swap":
        if len(left.genera) == 2:
            # Sigma_a x Sigma_b: exchange the two factors' generators
            ka, kb = 2 * left.genera[0], 2 * left.genera[1]
            rka = 2 * right.genera[0]
            if ka != 2 * right.genera[1] or kb != rka:
                raise EvaluationError("swap gluing needs factors of matching genera", node)
            image = b[rka:] + b[:rka]
            return tuple(zip(a, image))
        # surfaces: exchange each a_i with b_i
        image = tuple(b[i ^ 1] for i in range(len(b)))
        return tuple(zip(a, image))
    perm = mode
    if sorted(abs(x) for x in perm) != list(range(1, len(b) + 1)):
        raise EvaluationError(f"glue map {list(perm)} is not a signed permutation of 1..{len(b)}", node)
    return tuple((a[i], b[x - 1] if x > 0 else fp.inverse(b[-x - 1])) for i, x in enumerate(perm))


def _carry(value: Value, used: Locus, offset: int, taken: set[str]) -> list[Locus]:
    """Loci of one side that survive a sum, re-indexed into the combined generators."""
    out = []
    for loc in value.loci:
        if loc is used:
            continue
        name = loc.name
        while name in taken:
            name += "'"
        taken.add(name)
        out.append(
            Locus(
                name=name,
                genera=loc.genera,
                meridian=fp.shift(loc.meridian, offset),
                pushoffs=tuple(fp.shift(w, offset) for w in loc.pushoffs),
                # the complement inside the sum is not recomputed
                complement=None,
                verified=loc.verified and loc.complement is None,
                lagrangian=loc.lagrangian,
            )
        )
    return out


def _glue(left: Value, right: Value, lloc: Locus, rloc: Locus, glue: Glue, swap_default: bool, node: int):
    c1, c2 = left.complement_of(lloc), right.complement_of(rloc)
    try:
        gm = GluingMap(_pairs(lloc, rloc, glue, swap_default, node), lloc.meridian, rloc.meridian)
        pi1 = fp.van_kampen_sum(c1, c2, gm)
    except fp.PresentationError as exc:
        raise EvaluationError(str(exc), node) from None
    # the sum is presented on the complements' generators; carried words use
    # ambient generators, which are a prefix of each complement's list
    taken: set[str] = set()
    loci = _carry(left, lloc, 0, taken) + _carry(right, rloc, c1.ngens, taken)
    verified = left.verified and right.verified and lloc.verified and rloc.verified
    return pi1, tuple(loci), verified


def _product_complement(amb: Presentation, comp: Presentation, g: int) -> Presentation:
    """(X - S) x Sigma_g with generators ordered: ambient, Sigma_g, extra complement ones."""
    n, extra = amb.ngens, comp.ngens - amb.ngens
    surf = fp.surface_group(g, "c", "d")

    def remap(w):
        return tuple((x + 2 * g if x > 0 else x - 2 * g) if abs(x) > n else x for x in w)

    names = amb.generator_names + fp._unique_names(amb.generator_names, surf.generator_names)
    names += fp._unique_names(names, comp.generator_names[n:])
    rels = [remap(r) for r in comp.relators] + [fp.shift(r, n) for r in surf.relators]
    old = list(range(1, n + 1)) + [n + 2 * g + k for k in range(1, extra + 1)]
    rels += [fp.commutator((i,), (n + j,)) for i in old for j in range(1, 2 * g + 1)]
    return Presentation(names, tuple(rels))


def _repeat(op, x: ChernTriple, count: int) -> ChernTriple:
    """Apply a translation-type blow-up ``count`` times without looping."""
    once = op(x)
    d = [a - b for a, b in zip(once.as_tuple(), x.as_tuple())]
    return ChernTriple(*(cn.checked(v + (count - 1) * dv) for v, dv in zip(once.as_tuple(), d)))


class Evaluator:
    """Evaluates recipes against a registry; keeps every node's value for reporting."""

    def __init__(self, registry: Registry | None = None):
        self.registry = registry or default_registry()

    def values(self, recipe: Recipe) -> list[tuple[Step, Value]]:
        results: list[tuple[Step, Value]] = []

        def visit(step: Step) -> Value:
            kids = [visit(c) for c in step.children()]
            node = len(results)
            value = self._apply(step, kids, node)
            results.append((step, value))
            return value

        visit(recipe.root)
        return results

    def _apply(self, step: Step, kids: list[Value], node: int) -> Value:
        try:
            return self._apply_inner(step, kids, node)
        except cn.ArithmeticOverflowError as exc:
            raise EvaluationError(str(exc), node) from None

    def _apply_inner(self, step: Step, kids: list[Value], node: int) -> Value:
        def need_dim(value: Value, dim: int, what: str):
            if value.dim != dim:
                raise RecipeError(f"node {node}: {what} needs a {dim}-dimensional input, got dimension {value.dim}")

        if isinstance(step, Leaf):
            try:
                block = self.registry.resolve(step.block, dict(step.params))
            except (KeyError, ValueError, TypeError) as exc:
                raise EvaluationError(f"cannot resolve block {step.block!r}: {exc}", node) from None
            return _from_block(block)

        if isinstance(step, Sum4):
            left, right = kids
            need_dim(left, 4, "sum4")
            need_dim(right, 4, "sum4")
            lloc = _pick(left, step.glue.left, (step.genus,), node, "left")
            rloc = _pick(right, step.glue.right, (step.genus,), node, "right")
            pi1, loci, verified = _glue(left, right, lloc, rloc, step.glue, False, node)
            char4 = cn.sum4(left.char4, right.char4, SurfaceGenus(step.genus))
            return Value(4, char4, None, pi1, loci, verified)

        if isinstance(step, Luttinger):
            (child,) = kids
            need_dim(child, 4, "luttinger")
            loc = child.locus(step.torus, node)
            if loc.genera != (1,):
                raise EvaluationError(f"Luttinger surgery needs a torus, {step.torus!r} has genus {loc.genera[0]}", node)
            if step.pushoff not in (1, 2) or step.sign not in (1, -1):
                raise EvaluationError("surgery pushoff must be 1 or 2 and sign +1 or -1", node)
            relator = fp.free_reduce(loc.meridian + fp.power(loc.pushoffs[step.pushoff - 1], step.sign))
            try:
                pi1 = fp.quotient_by_words(child.pi1, [relator])
            except fp.PresentationError as exc:
                raise EvaluationError(f"surgery words leave the ambient generators: {exc}", node) from None
            loci = tuple(l for l in child.loci if l is not loc)
            return Value(4, cn.luttinger(child.char4), None, pi1, loci, child.verified and loc.verified)

        if isinstance(step, Product):
            (child,) = kids
            need_dim(child, 4, "product")
            if step.genus < 0:
                raise EvaluationError("genus must be non-negative", node)
            g = step.genus
            chern = cn.product_with_surface(child.char4, SurfaceGenus(g))
            pi1 = fp.direct_product(child.pi1, fp.surface_group(g, "c", "d")) if g else child.pi1
            n = child.pi1.ngens
            sigma_gens = tuple((n + k,) for k in range(1, 2 * g + 1))
            loci = []
            for loc in child.loci:
                comp = None
                if loc.complement is not None:
                    comp = _product_complement(child.pi1, loc.complement, g) if g else loc.complement
                loci.append(
                    Locus(
                        name=loc.name,
                        genera=(loc.genera[0], g),
                        meridian=loc.meridian,
                        pushoffs=loc.pushoffs + sigma_gens,
                        complement=comp,
                        verified=loc.verified,
                    )
                )
            return Value(6, None, chern, pi1, tuple(loci), child.verified)

        if isinstance(step, Sum6):
            left, right = kids
            need_dim(left, 6, "sum6")
            need_dim(right, 6, "sum6")
            a, b = step.fiber
            if a < 0 or b < 0:
                raise EvaluationError("fiber genera must be non-negative", node)
            lloc = _pick(left, step.glue.left, (a, b), node, "left")
            rloc = _pick(right, step.glue.right, (a, b), node, "right")
            swap = b > 0 and a == b
            pi1, loci, verified = _glue(left, right, lloc, rloc, step.glue, swap, node)
            chern = cn.sum6(left.chern, right.chern, FourFiber.surface_product(a, b))
            return Value(6, None, chern, pi1, loci, verified)

        if isinstance(step, BlowUpPoint):
            (child,) = kids
            need_dim(child, 6, "blowup_point")
            chern = _repeat(cn.blow_up_point, child.chern, step.count)
            return Value(6, None, chern, child.pi1, child.loci, child.verified)

        if isinstance(step, BlowUpSurface):
            (child,) = kids
            need_dim(child, 6, "blowup_surface")
            if step.genus < 0:
                raise EvaluationError("genus must be non-negative", node)
            chern = _repeat(lambda x: cn.blow_up_surface(x, SurfaceGenus(step.genus), step.pairing), child.chern, step.count)
            return Value(6, None, chern, child.pi1, child.loci, child.verified)

        raise RecipeError(f"node {node}: unknown step type {type(step).__name__}")

    def evaluate(self, recipe: Recipe, simplify: bool = True) -> EvalResult:
        _, value = self.values(recipe)[-1]
        pi1 = fp.tietze_simplify(value.pi1) if simplify else value.pi1
        return EvalResult(value.dim, value.char4, value.chern, pi1, value.verified, value.pi1)


def evaluate(recipe: Recipe, registry: Registry | None = None, simplify: bool = True) -> EvalResult:
    return Evaluator(registry).evaluate(recipe, simplify)


# ---------------------------------------------------------------- DOT export


def _label(step: Step, value: Value) -> str:
    op = _OPS[type(step)]
    if isinstance(step, Leaf):
        args = ",".join(f"{k}={v}" for k, v in step.params)
        head = f"{step.block}({args})" if args else step.block
    elif isinstance(step, (Sum4, Product, BlowUpSurface)):
        head = f"{op} g={step.genus}"
    elif isinstance(step, Sum6):
        head = f"{op} fiber={step.fiber[0]}x{step.fiber[1]}"
    elif isinstance(step, Luttinger):
        head = f"{op} {step.torus}"
    else:
        head = op
    if isinstance(step, (BlowUpPoint, BlowUpSurface)) and step.count != 1:
        head += f" x{step.count}"
    if value.dim == 4:
        inv = f"e={value.char4.e} sigma={value.char4.sigma}"
    else:
        inv = "chern=({}, {}, {})".format(*value.chern.as_tuple())
    return f"{head}\\n{inv}"


def to_dot(recipe: Recipe, registry: Registry | None = None) -> str:
    evaluator = Evaluator(registry)
    values = evaluator.values(recipe)
    index = {id(step): i for i, (step, _) in enumerate(values)}
    lines = ["digraph recipe {", "  rankdir=BT;", "  node [shape=box];"]
    for i, (step, value) in enumerate(values):
        lines.append(f'  n{i} [label="{_label(step, value)}"];')
    for i, (step, _) in enumerate(values):
        for child in step.children():
            lines.append(f"  n{index[id(child)]} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- closed forms


def _check_region(*pairs):
    for e, s in pairs:
        bad = region_violation(e, s)
        if bad:
            raise ValueError(f"({e}, {s}) outside the geography region: {bad}")


def closed_form_w(family: str, e1: int, s1: int, e2: int, s2: int) -> ChernTriple:
    _check_region((e1, s1), (e2, s2))
    body13 = 18 * (s1 + s2) + 12 * (e1 + e2)
    body12 = 6 * (e1 + s1 + e2 + s2)
    body3 = 2 * (e1 + e2)
    if family == "W0":
        return ChernTriple(body13, body12, body3)
    if family == "W1":
        return ChernTriple(0, 0, 0)
    if family == "W2":
        return ChernTriple(-body13 - 48, -body12 - 24, -body3 - 8)
    raise ValueError(f"unknown family {family!r}")


def closed_form_w_groups(
    family: str, e1: int, s1: int, e2: int, s2: int, g: int, r: int, drop_c3_constant: bool = False
) -> ChernTriple:
    """W-family numbers when a prescribed-group block adds 4(g + r) to e_1.

    With ``drop_c3_constant`` the W2 value of c_3 omits the trailing -8, as in
    one printed statement of this family; the evaluated construction keeps it.
    """
    if g < 0 or r < 0:
        raise ValueError("g and r must be non-negative")
    _check_region((e1, s1), (e2, s2))
    k = g + r
    if family == "W0":
        return ChernTriple(
            18 * (s1 + s2) + 12 * (e1 + e2) + 48 * k,
            6 * (e1 + s1 + e2 + s2) + 24 * k,
            2 * (e1 + e2) + 8 * k,
        )
    if family == "W1":
        return ChernTriple(0, 0, 0)
    if family == "W2":
        return ChernTriple(
            -18 * (s1 + s2) - 12 * (e1 + e2) - 48 * k - 48,
            -6 * (e1 + s1 + e2 + s2) - 24 * k - 24,
            -2 * (e1 + e2) - 8 * k - (0 if drop_c3_constant else 8),
        )
    raise ValueError(f"unknown family {family!r}")


def _check_spin(*pairs):
    for n, s in pairs:
        if n < 1 or s < 1:
            raise ValueError(f"spin parameters need n >= 1 and s >= 1, got n={n}, s={s}")


def closed_form_y(family: str, n1: int, s1: int, n2: int, s2: int) -> ChernTriple:
    return closed_form_y_groups(family, n1, s1, n2, s2, 0, 0)


def closed_form_y_groups(family: str, n1: int, s1: int, n2: int, s2: int, g: int, r: int) -> ChernTriple:
    _check_spin((n1, s1), (n2, s2))
    if g < 0 or r < 0:
        raise ValueError("g and r must be non-negative")
    k = g + r
    nn, ss = n1 + n2 - 2, s1 + s2
    if family == "Y0":
        return ChernTriple(48 * nn + 48 * k, 48 * ss + 24 * nn + 24 * k, 48 * ss + 8 * nn + 8 * k)
    if family == "Y1":
        return ChernTriple(0, 0, 0)
    if family == "Y2":
        return ChernTriple(
            -48 * nn - 48 * k - 48,
            -24 * nn - 48 * ss - 24 * k - 24,
            -48 * ss - 8 * nn - 8 * k - 8,
        )
    raise ValueError(f"unknown family {family!r}")


# ---------------------------------------------------------------- pipelines


def is_trivial_presentation(group: Presentation | None) -> bool:
    return group is None or (group.ngens == 0 and not group.relators)


def with_group(base: Step, group: Presentation | None, torus: str = "T1") -> Step:
    """Sum ``base`` along ``torus`` with the prescribed-group block (no-op for the trivial group)."""
    if is_trivial_presentation(group):
        return base
    return Sum4(base, Leaf.make("BK", group=group), 1, Glue(left=torus, right="T"))


def w_pipeline(family: str, e1: int, s1: int, e2: int, s2: int, group: Presentation | None = None) -> Recipe:
    """X_1(G) x Sigma_k summed with X_2 x Sigma_k, k = 0, 1, 2 for W0, W1, W2."""
    if family not in ("W0", "W1", "W2"):
        raise ValueError(f"unknown family {family!r}")
    k = int(family[1])
    variant = "Z12" if k == 2 else "Z11"
    x1 = with_group(Leaf.make(variant, e=e1, sigma=s1), group)
    x2 = Leaf.make(variant, e=e2, sigma=s2)
    a = 2 if k == 2 else 1
    return Recipe(Sum6(Product(x1, k), Product(x2, k), (a, k)))


def y_pipeline(family: str, n1: int, s1: int, n2: int, s2: int, group: Presentation | None = None) -> Recipe:
    """Spin analogue of :func:`w_pipeline` built from spin blocks."""
    if family not in ("Y0", "Y1", "Y2"):
        raise ValueError(f"unknown family {family!r}")
    k = int(family[1])
    x1 = with_group(Leaf.make("spin", n=n1, s=s1), group)
    x2 = Leaf.make("spin", n=n2, s=s2)
    a = 2 if k == 2 else 1
    return Recipe(Sum6(Product(x1, k), Product(x2, k), (a, k)))


def construction_recipe(text: str) -> Recipe:
    """Left-associated sum recipe for a construction string such as ``E1 #T2 T4 #T2 E1``."""
    operands, genera = parse_construction(text)
    step: Step = Leaf(operands[0])
    for op, g in zip(operands[1:], genera):
        step = Sum4(step, Leaf(op), g)
    return Recipe(step)
