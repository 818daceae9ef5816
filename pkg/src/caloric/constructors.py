"""Explicit preimages under the heat operator and the Laplacian, and caloric extension."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import InvariantViolation
from .ratpoly import (
    Poly,
    format_rational,
    heat_op,
    is_parabolically_homogeneous,
    is_spatially_homogeneous,
    laplacian,
    parabolic_degree,
    poly_to_json,
    radial_multiply,
    spatial_degree,
)


def heat_preimage(u: Poly) -> Poly:
    """v with heat_op(v) == u for a parabolically homogeneous u.

    Uses the alternating series t u - t^2/2 L u + t^3/6 L^2 u - ... with
    L = d/dt - Laplacian; L lowers the parabolic degree by two, so the
    series stops once L^j u vanishes.
    """
    if not is_parabolically_homogeneous(u):
        raise ValueError("heat_preimage needs a parabolically homogeneous input; split by layer")
    if u.is_zero():
        return Poly.zero(u.n)
    p = parabolic_degree(u) + 2
    limit = 1 + p // 2
    t = Poly.t(u.n)
    out = Poly.zero(u.n)
    term = u
    t_pow = t
    j = 1
    while not term.is_zero():
        if j > limit:
            raise InvariantViolation("constructors", "heat_preimage", {"j": j, "limit": limit})
        out = out + (t_pow * term).scale(Fraction((-1) ** (j + 1), factorial(j)))
        term = heat_op(term)
        t_pow = t_pow * t
        j += 1
    return out


@dataclass(frozen=True)
class LaplaceOntoTrace:
    n: int
    d: int
    k: int
    u: Poly
    u_ell: tuple[Poly, ...]
    v_ell: tuple[Poly, ...]
    c_ell: tuple[Fraction, ...]
    a_ell: tuple[Fraction, ...]
    result: Poly

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "k": self.k,
            "u": poly_to_json(self.u),
            "u_ell": [poly_to_json(p) for p in self.u_ell],
            "v_ell": [poly_to_json(p) for p in self.v_ell],
            "c_ell": [format_rational(c) for c in self.c_ell],
            "a_ell": [format_rational(a) for a in self.a_ell],
            "result": poly_to_json(self.result),
        }


def laplace_constant(n: int, d: int, ell: int) -> int:
    return (ell + 1) * (2 * n + 4 * d - 4 * ell)


def laplace_preimage(u: Poly) -> LaplaceOntoTrace:
    """w of degree d+2 with Laplacian(w) == u for u homogeneous of degree d in x.

    u_l = |x|^(2l) Lap^l u and v_l = |x|^2 u_l satisfy
    Lap v_l = c_l u_l + u_(l+1); telescoping with a_0 = 1/c_0,
    a_l = -a_(l-1)/c_l gives Lap(sum a_l v_l) = u.
    """
    if not is_spatially_homogeneous(u):
        raise ValueError("laplace_preimage needs a spatially homogeneous polynomial without t")
    n = u.n
    d = 0 if u.is_zero() else spatial_degree(u)
    k = d // 2
    u_ell = []
    lap_pow = u
    for ell in range(k + 1):
        radial = lap_pow
        for _ in range(ell):
            radial = radial_multiply(radial)
        u_ell.append(radial)
        lap_pow = laplacian(lap_pow)
    v_ell = [radial_multiply(p) for p in u_ell]
    c_ell = [Fraction(laplace_constant(n, d, ell)) for ell in range(k + 1)]
    a_ell = [1 / c_ell[0]]
    for ell in range(1, k + 1):
        a_ell.append(-a_ell[-1] / c_ell[ell])
    w = Poly.zero(n)
    for a, v in zip(a_ell, v_ell):
        w = w + v.scale(a)
    return LaplaceOntoTrace(n, d, k, u, tuple(u_ell), tuple(v_ell), tuple(c_ell), tuple(a_ell), w)


def caloric_extension(p0: Poly) -> Poly:
    """The caloric u = sum_j t^j Lap^j p0 / j! with u(x, 0) = p0."""
    if any(mono.m for mono in p0.terms):
        raise ValueError("caloric_extension needs a polynomial in x only")
    out = Poly.zero(p0.n)
    term = p0
    t = Poly.t(p0.n)
    t_pow = Poly.const(p0.n, 1)
    j = 0
    while not term.is_zero():
        out = out + (t_pow * term).scale(Fraction(1, factorial(j)))
        term = laplacian(term)
        t_pow = t_pow * t
        j += 1
    return out


def heat_preimage_layers(u: Poly) -> Poly:
    """heat_preimage applied to every homogeneous layer of u and summed."""
    from .ratpoly import homogeneous_layers

    out = Poly.zero(u.n)
    for layer in homogeneous_layers(u).values():
        out = out + heat_preimage(layer)
    return out


__all__ = [
    "LaplaceOntoTrace",
    "caloric_extension",
    "heat_preimage",
    "heat_preimage_layers",
    "laplace_constant",
    "laplace_preimage",
]
