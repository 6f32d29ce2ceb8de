"""Compare a computed fundamental group presentation with an expected one."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fpgroup as fp
from .fpgroup import Presentation
from .homcount import MAX_GENERATORS, EnumerationBoundError, count_homs_to_sym

DEGREES = (2, 3, 4, 5)


@dataclass(frozen=True)
class Pi1Report:
    status: str  # verified | consistent-with | mismatch | unverifiable
    failing_oracle: str | None = None
    details: tuple[str, ...] = field(default_factory=tuple)


def same_presentation(p: Presentation, q: Presentation) -> bool:
    """Equal generator names and equal relator sets up to cyclic permutation and inversion."""
    if p.generator_names != q.generator_names:
        return False
    canon = lambda rels: {fp._canonical(fp.cyclic_reduce(r)) for r in rels if fp.cyclic_reduce(r)}
    return canon(p.relators) == canon(q.relators)


def compare(actual: Presentation, expected: Presentation, data_verified: bool = True) -> Pi1Report:
    if not data_verified:
        return Pi1Report("unverifiable", None, ("recipe uses claimed gluing data",))
    a = fp.tietze_simplify(actual)
    b = fp.tietze_simplify(expected)
    if same_presentation(a, b):
        return Pi1Report("verified", None, ("identical presentations after simplification",))
    details = []
    ab_a, ab_b = fp.abelianization(a), fp.abelianization(b)
    details.append(f"abelianization: {ab_a} vs {ab_b}")
    if ab_a != ab_b:
        return Pi1Report("mismatch", "abelianization", tuple(details))
    if max(a.ngens, b.ngens) > MAX_GENERATORS:
        details.append(f"hom counts skipped: more than {MAX_GENERATORS} generators")
        return Pi1Report("unverifiable", None, tuple(details))
    for n in DEGREES:
        try:
            ca, cb = count_homs_to_sym(a, n), count_homs_to_sym(b, n)
        except EnumerationBoundError as exc:
            details.append(f"homs to S{n}: skipped ({exc})")
            return Pi1Report("unverifiable", None, tuple(details))
        details.append(f"homs to S{n}: {ca} vs {cb}")
        if ca != cb:
            return Pi1Report("mismatch", f"homs to S{n}", tuple(details))
    return Pi1Report("consistent-with", None, tuple(details))
