"""Characteristic numbers of 4-manifolds and Chern numbers of 6-manifolds.

All arithmetic is exact and checked against a signed 64-bit range; leaving
that range raises :class:`ArithmeticOverflowError` instead of wrapping.
"""

from __future__ import annotations

from dataclasses import dataclass

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1


class ArithmeticOverflowError(ArithmeticError):
    pass


def checked(value: int) -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise ArithmeticOverflowError(f"value {value} leaves the 64-bit range")
    return value


@dataclass(frozen=True)
class CharNum4:
    """Euler characteristic, signature and a claimed spin flag."""

    e: int
    sigma: int
    spin: bool = False

    def __post_init__(self):
        checked(self.e)
        checked(self.sigma)

    def c1_squared(self) -> int:
        return checked(2 * self.e + 3 * self.sigma)

    def c2(self) -> int:
        return self.e

    def has_chi_h(self) -> bool:
        return (self.e + self.sigma) % 4 == 0

    def chi_h(self) -> int:
        """Holomorphic Euler characteristic (e + sigma) / 4.

        Raises ValueError when e + sigma is not divisible by 4.
        """
        total = self.e + self.sigma
        if total % 4:
            raise ValueError(f"chi_h undefined: e + sigma = {total} is not divisible by 4")
        return total // 4


@dataclass(frozen=True)
class ChernTriple:
    c13: int
    c1c2: int
    c3: int

    def __post_init__(self):
        checked(self.c13)
        checked(self.c1c2)
        checked(self.c3)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.c13, self.c1c2, self.c3)

    def satisfies_congruences(self) -> bool:
        return self.c13 % 2 == 0 and self.c3 % 2 == 0 and self.c1c2 % 24 == 0


@dataclass(frozen=True)
class SurfaceGenus:
    g: int

    def __post_init__(self):
        if self.g < 0:
            raise ValueError(f"genus must be non-negative, got {self.g}")

    def euler(self) -> int:
        return 2 - 2 * self.g


@dataclass(frozen=True)
class FourFiber:
    """c1^2 and c2 of the 4-dimensional locus of a 6-dimensional sum."""

    c1sq: int
    c2: int

    @classmethod
    def surface_product(cls, a: int, b: int) -> "FourFiber":
        chi = SurfaceGenus(a).euler() * SurfaceGenus(b).euler()
        return cls(c1sq=checked(2 * chi), c2=checked(chi))


def sum4(x: CharNum4, y: CharNum4, locus: SurfaceGenus) -> CharNum4:
    """Gompf sum along a surface of self-intersection zero."""
    return CharNum4(
        e=checked(x.e + y.e + 4 * locus.g - 4),
        sigma=checked(x.sigma + y.sigma),
        spin=x.spin and y.spin,
    )


def luttinger(x: CharNum4) -> CharNum4:
    return x


def product_with_surface(y: CharNum4, g: SurfaceGenus) -> ChernTriple:
    factor = 6 - 6 * g.g
    return ChernTriple(
        c13=checked(y.c1_squared() * factor),
        c1c2=checked((y.e + y.sigma) * factor),
        c3=checked(y.e * g.euler()),
    )


def blow_up_point(x: ChernTriple) -> ChernTriple:
    return ChernTriple(checked(x.c13 - 8), x.c1c2, checked(x.c3 + 2))


def blow_up_surface(x: ChernTriple, g: SurfaceGenus, normal_pairing: int) -> ChernTriple:
    """Blow up along an embedded genus-g surface.

    ``normal_pairing`` is the evaluation of c1 of the normal bundle on the
    fundamental class of the surface.
    """
    return ChernTriple(
        c13=checked(x.c13 + 6 * (g.g - 1) - 2 * normal_pairing),
        c1c2=x.c1c2,
        c3=checked(x.c3 - 2 * (g.g - 1)),
    )


def sum6(x: ChernTriple, y: ChernTriple, fiber: FourFiber) -> ChernTriple:
    return ChernTriple(
        c13=checked(x.c13 + y.c13 - 6 * fiber.c1sq),
        c1c2=checked(x.c1c2 + y.c1c2 - 2 * (fiber.c1sq + fiber.c2)),
        c3=checked(x.c3 + y.c3 - 2 * fiber.c2),
    )


def from_c1sq_chi(c1sq: int, chi: int, spin: bool = False) -> CharNum4:
    """Inverse of (e, sigma) -> (c1^2, chi_h): e = 12 chi - c1^2, sigma = c1^2 - 8 chi."""
    return CharNum4(e=checked(12 * chi - c1sq), sigma=checked(c1sq - 8 * chi), spin=spin)
