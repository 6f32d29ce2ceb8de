"""Random recipe generator shared by the property and acceptance tests."""

from __future__ import annotations

import random

from chernplan.blocks import region_violation
from chernplan.calculus import (
    BlowUpPoint,
    BlowUpSurface,
    EvaluationError,
    Leaf,
    Luttinger,
    Product,
    Recipe,
    Step,
    Sum4,
    Sum6,
    evaluate,
)


def random_region_point(rng: random.Random, chi_max: int = 8) -> tuple[int, int]:
    while True:
        chi = rng.randint(2, chi_max)
        c = rng.randint(0, 8 * chi - 1)
        e, sigma = 12 * chi - c, c - 8 * chi
        if region_violation(e, sigma) is None:
            return e, sigma


def random_spin_point(rng: random.Random) -> tuple[int, int]:
    return rng.randint(1, 6), rng.randint(1, 4)


def torus_leaf(rng: random.Random) -> Step:
    kind = rng.randrange(6)
    if kind == 0:
        e, s = random_region_point(rng)
        return Leaf.make("Z11", e=e, sigma=s)
    if kind == 1:
        n, s = random_spin_point(rng)
        return Leaf.make("spin", n=n, s=s)
    if kind == 2:
        return Leaf(rng.choice(["A", "C", "D", "F", "B_0", "B_1"]))
    if kind == 3:
        return Leaf("E1")
    if kind == 4:
        return Leaf.make("T2xSigma", g=rng.randint(1, 3))
    return Luttinger(Leaf("T2xSigma2"), rng.choice(["L1", "L2", "L3", "L4"]), rng.choice([1, 2]), rng.choice([1, -1]))


def random4(rng: random.Random, depth: int) -> Step:
    if depth <= 1 or rng.random() < 0.4:
        return torus_leaf(rng)
    return Sum4(random4(rng, depth - 1), torus_leaf(rng), 1)


def random6(rng: random.Random, depth: int) -> Step:
    if depth <= 2:
        return Product(torus_leaf(rng), rng.randint(0, 3))
    roll = rng.random()
    if roll < 0.25:
        return Product(random4(rng, depth - 1), rng.randint(0, 3))
    if roll < 0.45:
        return BlowUpPoint(random6(rng, depth - 1), rng.randint(1, 3))
    if roll < 0.65:
        return BlowUpSurface(random6(rng, depth - 1), rng.randint(0, 3), rng.randint(-3, 3), rng.randint(1, 3))
    b = rng.randint(0, 2)
    return Sum6(Product(random4(rng, depth - 2), b), Product(random4(rng, depth - 2), b), (1, b))


def random_valid_recipe(rng: random.Random, max_depth: int = 6, dim: int = 6, tries: int = 50):
    """(recipe, result) for a random recipe of depth <= max_depth that evaluates cleanly."""
    for _ in range(tries):
        d = rng.randint(1 if dim == 4 else 2, max_depth)
        step = random6(rng, d) if dim == 6 else random4(rng, d)
        recipe = Recipe(step)
        if depth(step) > max_depth:
            continue
        try:
            return recipe, evaluate(recipe, simplify=False)
        except EvaluationError:
            continue
    raise RuntimeError("no valid recipe found")


def depth(step: Step) -> int:
    return 1 + max((depth(k) for k in step.children()), default=0)
