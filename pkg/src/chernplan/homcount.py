"""Exact counts of homomorphisms from a finitely presented group into S_n.

Generators that appear in no relator contribute a factor n! each.  The rest
split into components linked by shared relators.  A component with a single
relator whose letters split into consecutive blocks on disjoint generators is
counted by convolving the blocks' value distributions over S_n; any other
component is enumerated generator by generator, discarding partial
assignments as soon as a relator is fully assigned and fails.
"""

from __future__ import annotations

import math
from functools import lru_cache
from itertools import permutations

import numpy as np

from .fpgroup import Presentation, Word

MAX_GENERATORS = 6
MAX_DEGREE = 5
MAX_ROWS = 20_000_000


class EnumerationBoundError(ValueError):
    pass


@lru_cache(maxsize=None)
def symmetric_group_tables(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Multiplication and inverse tables of S_n, identity at index 0."""
    perms = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    mult = np.empty((size, size), dtype=np.int16)
    inv = np.empty(size, dtype=np.int16)
    for i, p in enumerate(perms):
        inv_p = [0] * n
        for k, v in enumerate(p):
            inv_p[v] = k
        inv[i] = index[tuple(inv_p)]
        for j, q in enumerate(perms):
            mult[i, j] = index[tuple(p[q[k]] for k in range(n))]
    return mult, inv


def _evaluate(word: Word, columns: dict[int, np.ndarray], rows: int, mult, inv) -> np.ndarray:
    value = np.zeros(rows, dtype=np.int16)
    for x in word:
        g = columns[abs(x)]
        value = mult[value, g if x > 0 else inv[g]]
    return value


def _enumerate(gens: list[int], relators: list[Word], size: int, mult, inv) -> int:
    """Count assignments of ``gens`` satisfying ``relators``, pruning as relators close."""
    remaining = list(relators)
    order: list[int] = []
    pending = set(gens)
    while pending:
        # pick the generator that closes the most relators soonest
        def score(g):
            placed = set(order) | {g}
            closed = sum(1 for r in remaining if {abs(x) for x in r} <= placed)
            return (-closed, g)

        nxt = min(pending, key=score)
        order.append(nxt)
        pending.discard(nxt)

    columns: dict[int, np.ndarray] = {}
    rows = 1
    placed: set[int] = set()
    for g in order:
        if rows * size > MAX_ROWS:
            raise EnumerationBoundError(f"enumeration would exceed {MAX_ROWS} partial assignments")
        for k in columns:
            columns[k] = np.repeat(columns[k], size)
        columns[g] = np.tile(np.arange(size, dtype=np.int16), rows)
        rows *= size
        placed.add(g)
        ready = [r for r in remaining if {abs(x) for x in r} <= placed]
        remaining = [r for r in remaining if r not in ready]
        keep = np.ones(rows, dtype=bool)
        for r in ready:
            keep &= _evaluate(r, columns, rows, mult, inv) == 0
        if not keep.all():
            for k in columns:
                columns[k] = columns[k][keep]
            rows = int(keep.sum())
        if rows == 0:
            return 0
    return rows


def _blocks(word: Word) -> list[Word]:
    """Split a word into consecutive blocks using pairwise disjoint generator sets."""
    cuts = [0]
    for i in range(1, len(word)):
        before = {abs(x) for x in word[cuts[-1] : i]}
        after = {abs(x) for x in word[i:]}
        if not before & after:
            cuts.append(i)
    cuts.append(len(word))
    return [word[a:b] for a, b in zip(cuts, cuts[1:])]


def _distribution(block: Word, size: int, mult, inv) -> np.ndarray:
    gens = sorted({abs(x) for x in block})
    rows = size ** len(gens)
    if rows > MAX_ROWS:
        raise EnumerationBoundError(f"block enumeration would exceed {MAX_ROWS} assignments")
    columns = {}
    for pos, g in enumerate(gens):
        inner = size ** (len(gens) - pos - 1)
        columns[g] = np.tile(np.repeat(np.arange(size, dtype=np.int16), inner), size**pos)
    values = _evaluate(block, columns, rows, mult, inv)
    return np.bincount(values, minlength=size).astype(np.int64)


def _convolve(a: np.ndarray, b: np.ndarray, mult) -> np.ndarray:
    out = np.zeros_like(a)
    for i in np.nonzero(a)[0]:
        np.add.at(out, mult[i], a[i] * b)
    return out


def _count_component(gens: list[int], relators: list[Word], size: int, mult, inv) -> int:
    if len(relators) == 1:
        blocks = _blocks(relators[0])
        if len(blocks) > 1:
            dist = _distribution(blocks[0], size, mult, inv)
            for block in blocks[1:]:
                dist = _convolve(dist, _distribution(block, size, mult, inv), mult)
            return int(dist[0])
    return _enumerate(gens, relators, size, mult, inv)


def count_homs_to_sym(p: Presentation, n: int) -> int:
    """Number of homomorphisms from the presented group to the symmetric group S_n."""
    if not 2 <= n <= MAX_DEGREE:
        raise EnumerationBoundError(f"degree n={n} outside 2..{MAX_DEGREE}")
    if p.ngens > MAX_GENERATORS:
        raise EnumerationBoundError(f"{p.ngens} generators exceeds the bound of {MAX_GENERATORS}")
    mult, inv = symmetric_group_tables(n)
    size = math.factorial(n)
    relators = [r for r in p.relators if r]

    # union-find over generators linked by relators
    parent = list(range(p.ngens + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in relators:
        letters = [abs(x) for x in r]
        for x in letters[1:]:
            parent[find(x)] = find(letters[0])
    used = {abs(x) for r in relators for x in r}
    total = size ** (p.ngens - len(used))
    components: dict[int, list[int]] = {}
    for g in sorted(used):
        components.setdefault(find(g), []).append(g)
    for root, gens in components.items():
        rels = [r for r in relators if find(abs(r[0])) == root]
        total *= _count_component(gens, rels, size, mult, inv)
        if total == 0:
            return 0
    return total
