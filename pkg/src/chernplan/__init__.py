"""Chern-number geography of symplectic 4- and 6-manifolds with prescribed fundamental group."""

from .calculus import Recipe, evaluate
from .charnum import CharNum4, ChernTriple
from .fpgroup import Presentation, parse_presentation
from .planner import Target6, realize, solve_budget

__all__ = [
    "CharNum4",
    "ChernTriple",
    "Presentation",
    "Recipe",
    "Target6",
    "evaluate",
    "parse_presentation",
    "realize",
    "solve_budget",
]
