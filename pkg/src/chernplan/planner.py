"""Geography enumeration and realization of Chern triples by recipes."""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import region_violation
from .calculus import (
    BlowUpPoint,
    BlowUpSurface,
    Evaluator,
    Leaf,
    Product,
    Recipe,
    Step,
    Sum6,
    is_trivial_presentation,
    with_group,
)
from .charnum import ChernTriple, from_c1sq_chi
from .fpgroup import Presentation

# (delta c1^3, delta c3) of one point blow-up, one exceptional-line blow-up
# (normal pairing -1) and one blow-up along a genus-2 surface with trivial normal bundle
POINT_MOVE = (-8, 2)
LINE_MOVE = (-4, 2)
GENUS2_MOVE = (6, -2)
LINE_PAIRING = -1


class InadmissibleTargetError(ValueError):
    pass


class SearchExhaustedError(RuntimeError):
    pass


class NotRealizableError(ValueError):
    """The point is outside the image of the implemented families (not a nonexistence claim)."""


@dataclass(frozen=True)
class Target6:
    c13: int
    c1c2: int
    c3: int
    group: Presentation = Presentation()

    def violation(self) -> str | None:
        if self.c13 % 2:
            return "c13 must be even"
        if self.c3 % 2:
            return "c3 must be even"
        if self.c1c2 % 24:
            return "c1c2 must be divisible by 24"
        return None


@dataclass(frozen=True)
class BlowUpBudget:
    p: int = 0
    r_e: int = 0
    z: int = 0

    def __post_init__(self):
        if min(self.p, self.r_e, self.z) < 0:
            raise ValueError("blow-up counts must be non-negative")

    @property
    def total(self) -> int:
        return self.p + self.r_e + self.z

    def effect(self) -> tuple[int, int]:
        d13 = self.p * POINT_MOVE[0] + self.r_e * LINE_MOVE[0] + self.z * GENUS2_MOVE[0]
        d3 = self.p * POINT_MOVE[1] + self.r_e * LINE_MOVE[1] + self.z * GENUS2_MOVE[1]
        return d13, d3


@dataclass(frozen=True)
class Window:
    chi_min: int
    chi_max: int
    c1sq_min: int | None = None
    c1sq_max: int | None = None

    def contains_c1sq(self, c: int) -> bool:
        return (self.c1sq_min is None or c >= self.c1sq_min) and (self.c1sq_max is None or c <= self.c1sq_max)


@dataclass(frozen=True)
class RegionPoint:
    c1sq: int
    chi_h: int
    e: int
    sigma: int
    family: str
    witness: tuple[int, int]


COORDINATES = ("euler_shift", "c1sq_shift")


def enumerate_region_4d(window: Window, g: int = 0, r: int = 0, spin: bool = False, coordinates: str = "euler_shift") -> list[RegionPoint]:
    """Lattice points realized by the geography (or spin) family after summing a g + r block.

    ``euler_shift`` reports the invariants of the summed manifold, whose Euler
    characteristic grows by 4(g + r) at fixed signature, so c1^2 shifts by
    8(g + r).  ``c1sq_shift`` reports c1^2 shifted by 4(g + r) instead, the
    other coordinatization in circulation; its (e, sigma) columns then carry
    the witness values.
    """
    if coordinates not in COORDINATES:
        raise ValueError(f"coordinates must be one of {COORDINATES}")
    if g < 0 or r < 0:
        raise ValueError("g and r must be non-negative")
    k = g + r
    c_shift = 8 * k if coordinates == "euler_shift" else 4 * k
    points: list[RegionPoint] = []
    for chi in range(window.chi_min, window.chi_max + 1):
        chi0 = chi - k
        if spin:
            for s in range(1, chi0 // 2 + 1):
                n = chi0 + 1 - 2 * s
                if n < 1:
                    continue
                c0 = 8 * n - 8
                base = from_c1sq_chi(c0, chi0, spin=True)
                c = c0 + c_shift
                if window.contains_c1sq(c):
                    e = base.e + 4 * k if coordinates == "euler_shift" else base.e
                    points.append(RegionPoint(c, chi, e, base.sigma, f"spin n={n} s={s}", (n, s)))
        else:
            if chi0 < 2:
                continue
            for c0 in range(0, 8 * chi0):
                base = from_c1sq_chi(c0, chi0)
                if region_violation(base.e, base.sigma):
                    continue
                c = c0 + c_shift
                if window.contains_c1sq(c):
                    e = base.e + 4 * k if coordinates == "euler_shift" else base.e
                    points.append(RegionPoint(c, chi, e, base.sigma, f"nonspin e={base.e} sigma={base.sigma}", (base.e, base.sigma)))
    points.sort(key=lambda p: (p.chi_h, p.c1sq, p.family))
    return points


def solve_budget(delta_c13: int, delta_c3: int) -> BlowUpBudget:
    """Fewest blow-ups whose combined effect is (delta_c13, delta_c3).

    Fixing p, the two linear equations determine z = A + 2p and
    r_e = delta_c3/2 + A + p with A = delta_c13/2 + delta_c3, and the total
    4p + 2A + delta_c3/2 grows with p; the smallest feasible p is optimal
    and the optimum is unique.
    """
    if delta_c13 % 2 or delta_c3 % 2:
        raise InadmissibleTargetError("budget deltas must be even")
    h3 = delta_c3 // 2
    a = delta_c13 // 2 + delta_c3
    p = max(0, -(a // 2), -(h3 + a))
    budget = BlowUpBudget(p=p, r_e=h3 + a + p, z=a + 2 * p)
    assert budget.effect() == (delta_c13, delta_c3)
    return budget


def _group_size(group: Presentation) -> int:
    if is_trivial_presentation(group):
        return 0
    return group.ngens + len(group.relators)


def _witness(chi: int, variant: str) -> Step:
    """Region block at holomorphic Euler characteristic chi (sigma = -1)."""
    return Leaf.make(variant, e=4 * chi + 1, sigma=-1)


@dataclass(frozen=True)
class Plan:
    recipe: Recipe
    family: str
    base: ChernTriple
    budget: BlowUpBudget
    preparatory_point: bool


def _base_recipe(k: int, group: Presentation, max_chi: int) -> tuple[Step, str]:
    """6-dimensional recipe with pi_1 = group and c1c2 = 24 k, before blow-ups."""
    gr = _group_size(group)
    if k == 0:
        x1 = with_group(_witness(2, "Z11"), group)
        return Sum6(Product(x1, 1), Product(_witness(2, "Z11"), 1), (1, 1)), "W1"
    if k > 0:
        # W0: k = chi1 + chi2 + (g + r) with chi_i >= 2
        rest = k - gr - 2
        if 2 <= rest <= max_chi:
            x1 = with_group(_witness(2, "Z11"), group)
            return Sum6(Product(x1, 0), Product(_witness(rest, "Z11"), 0), (1, 0)), "W0"
        # single product X(G) x S^2: k = chi + (g + r), chi = 1 from E(1)
        chi = k - gr
        if chi == 1:
            return Product(with_group(Leaf("E1"), group, torus="T"), 0), "product"
        if 2 <= chi <= 3:
            return Product(with_group(_witness(chi, "Z11"), group), 0), "product"
    else:
        # W2: -k = chi1 + chi2 + (g + r) + 1 with chi_i >= 2
        rest = -k - gr - 3
        if 2 <= rest <= max_chi:
            x1 = with_group(_witness(2, "Z12"), group)
            return Sum6(Product(x1, 2), Product(_witness(rest, "Z12"), 2), (2, 2)), "W2"
    raise SearchExhaustedError(
        f"c1c2 = {24 * k}: no W0/W1/W2 or single-product parameters with chi_i in [2, {max_chi}] "
        f"and g + r = {gr} (W0 needs c1c2 >= {24 * (4 + gr)}, products cover "
        f"{24 * (1 + gr)}..{24 * (3 + gr)}, W2 needs c1c2 <= {-24 * (5 + gr)})"
    )


def plan(t: Target6, max_chi: int | None = None) -> Plan:
    bad = t.violation()
    if bad:
        raise InadmissibleTargetError(bad)

    k = t.c1c2 // 24
    if max_chi is None:
        max_chi = abs(k) + _group_size(t.group) + 16
    step, family = _base_recipe(k, t.group, max_chi)
    base = Evaluator().evaluate(Recipe(step), simplify=False).chern
    d13, d3 = t.c13 - base.c13, t.c3 - base.c3
    prep = (d13, d3) != (0, 0)
    if prep:
        step = BlowUpPoint(step)
        d13 -= POINT_MOVE[0]
        d3 -= POINT_MOVE[1]
    budget = solve_budget(d13, d3)
    if budget.p:
        step = BlowUpPoint(step, budget.p)
    if budget.r_e:
        step = BlowUpSurface(step, 0, LINE_PAIRING, budget.r_e)
    if budget.z:
        step = BlowUpSurface(step, 2, 0, budget.z)
    return Plan(Recipe(step), family, base, budget, prep)


def realize(t: Target6, max_chi: int | None = None) -> Recipe:
    """Recipe whose evaluation has Chern numbers (c13, c1c2, c3) and pi_1 = t.group."""
    return plan(t, max_chi).recipe


def realize_4d(c1sq: int, chi_h: int, group: Presentation | None = None, spin: bool = False) -> Recipe:
    """4-dimensional recipe: geography or spin block, summed with the group block when G is nontrivial.

    The requested (c1sq, chi_h) are the invariants of the summed manifold.
    """
    group = group if group is not None else Presentation()
    k = _group_size(group)
    c0, chi0 = c1sq - 8 * k, chi_h - k
    if spin:
        if c0 % 8 or c0 < 0:
            raise NotRealizableError(f"spin family needs c1^2 - 8(g+r) = 8n - 8 with n >= 1, got {c0}")
        n = c0 // 8 + 1
        if (chi0 - n + 1) % 2 or chi0 - n + 1 < 2:
            raise NotRealizableError(f"spin family needs chi_h - (g+r) = 2s + n - 1 with s >= 1, got {chi0} at n = {n}")
        s = (chi0 - n + 1) // 2
        return Recipe(with_group(Leaf.make("spin", n=n, s=s), group))
    base = from_c1sq_chi(c0, chi0)
    bad = region_violation(base.e, base.sigma)
    if bad:
        raise NotRealizableError(f"(c1^2, chi_h) = ({c1sq}, {chi_h}) needs the block ({base.e}, {base.sigma}), which violates {bad}")
    return Recipe(with_group(Leaf.make("Z11", e=base.e, sigma=base.sigma), group))


def printed_coordinates(e: int, sigma: int, g: int, r: int) -> tuple[int, int]:
    """(c1^2, chi_h) with c1^2 shifted by 4(g + r) instead of 8(g + r)."""
    return 2 * e + 3 * sigma + 4 * (g + r), (e + sigma) // 4 + (g + r)


def summed_coordinates(e: int, sigma: int, g: int, r: int) -> tuple[int, int]:
    """(c1^2, chi_h) of the block summed with a g + r group block (Euler characteristic + 4(g + r))."""
    return 2 * (e + 4 * (g + r)) + 3 * sigma, (e + sigma) // 4 + (g + r)
