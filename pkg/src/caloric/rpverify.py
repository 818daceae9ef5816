"""Exact reverse-Poincaré ratios and time-derivative vanishing for caloric polynomials.

Integrals are taken over box cylinders [-s, s]^n x [-s^2, 0]: the inner
region uses s = r/10 (time depth r^2/100), the outer one s = r.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ratpoly import (
    BoxCylinder,
    Poly,
    ZERO_DEGREE,
    format_rational,
    gradient,
    heat_op,
    integrate_box_cylinder,
    parabolic_degree,
    partial_t,
)


@dataclass(frozen=True)
class RPRatio:
    u: Poly
    r: Fraction
    numerator_grad: Fraction
    numerator_time: Fraction
    denominator: Fraction

    @property
    def ratio(self) -> Fraction:
        return (self.numerator_grad + self.numerator_time) / self.denominator

    def as_csv(self) -> list[str]:
        return [format_rational(v) for v in
                (self.r, self.numerator_grad, self.numerator_time, self.denominator, self.ratio)]


CSV_HEADER = ["r", "num_grad", "num_time", "denom", "ratio"]


def _check_caloric(u: Poly, op: str) -> None:
    if not heat_op(u).is_zero():
        raise ValueError(f"{op}: input is not caloric")


def rp_ratio(u: Poly, r) -> RPRatio:
    _check_caloric(u, "rp_ratio")
    if u.is_zero():
        raise ValueError("rp_ratio: zero polynomial has no ratio")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("rp_ratio: radius must be positive")
    inner = BoxCylinder(r / 10)
    outer = BoxCylinder(r)
    grad_sq = Poly.zero(u.n)
    for g in gradient(u):
        grad_sq = grad_sq + g * g
    ut = partial_t(u)
    num_grad = r**2 * integrate_box_cylinder(grad_sq, inner)
    num_time = r**4 * integrate_box_cylinder(ut * ut, inner)
    denom = integrate_box_cylinder(u * u, outer)
    return RPRatio(u, r, num_grad, num_time, denom)


def rp_scale_table(u: Poly, radii: Iterable) -> list[RPRatio]:
    return [rp_ratio(u, r) for r in radii]


def dyadic_radii(top: int = 10) -> list[Fraction]:
    return [Fraction(2**i) for i in range(top + 1)]


@dataclass(frozen=True)
class GrowthBound:
    d: int
    d_V: int

    def __post_init__(self):
        if self.d < 0 or self.d_V < 0:
            raise ValueError("growth degrees must be nonnegative")


@dataclass(frozen=True)
class VanishingResult:
    k_star: int
    k_sharp: int
    verified: bool
    sharp_verified: bool

    def to_json(self) -> dict:
        return {"k_star": self.k_star, "k_sharp": self.k_sharp,
                "verified": self.verified, "sharp_verified": self.sharp_verified}


def vanishing_check(u: Poly, g: GrowthBound) -> VanishingResult:
    """Smallest k with 4k > 2d + d_V + 2, and whether d^k u / dt^k vanishes there.

    Also reports the smaller threshold 2k > d, which polynomial data already meets.
    """
    _check_caloric(u, "vanishing_check")
    deg = parabolic_degree(u)
    if deg is not ZERO_DEGREE and deg > g.d:
        raise ValueError(f"vanishing_check: parabolic degree {deg} exceeds growth degree {g.d}")
    if g.d_V != u.n:
        raise ValueError(f"vanishing_check: volume growth degree must be n={u.n}")
    k_star = (2 * g.d + g.d_V + 2) // 4 + 1
    k_sharp = g.d // 2 + 1

    def vanishes(k):
        v = u
        for _ in range(k):
            v = partial_t(v)
        return v.is_zero()

    return VanishingResult(k_star, k_sharp, vanishes(k_star), vanishes(k_sharp))

