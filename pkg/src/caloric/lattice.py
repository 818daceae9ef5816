"""Discrete Laplacian and heat operator on Z^n acting on polynomials.

Shifts x_i -> x_i +- 1 and t -> t + 1 are applied by exact binomial
expansion, so the operators act on Poly values directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import spaces
from .ratpoly import Poly, shift

KINDS = ("discrete_laplacian", "discrete_heat")


@dataclass(frozen=True)
class ShiftOperatorSpec:
    n: int
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown discrete operator {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be at least 1")

    def __call__(self, p: Poly) -> Poly:
        return discrete_apply(self, p)


def discrete_laplacian(p: Poly) -> Poly:
    out = Poly.zero(p.n)
    for i in range(1, p.n + 1):
        out = out + shift(p, i, 1) + shift(p, i, -1) - p.scale(2)
    return out


def discrete_heat(p: Poly) -> Poly:
    return shift(p, 0, 1) - p - discrete_laplacian(p)


def discrete_apply(spec: ShiftOperatorSpec, p: Poly) -> Poly:
    if p.n != spec.n:
        raise ValueError(f"dimension mismatch: operator n={spec.n}, poly n={p.n}")
    if spec.kind == "discrete_laplacian":
        return discrete_laplacian(p)
    return discrete_heat(p)


@lru_cache(maxsize=None)
def discrete_kernel(n: int, d: int, kind: str) -> spaces.KernelBasis:
    """Kernel on the filtered space: parabolic degree <= d (heat) or spatial degree <= d (Laplacian)."""
    spec = ShiftOperatorSpec(n, kind)
    parabolic = kind == "discrete_heat"
    domain = spaces.basis_filtered(n, d, parabolic=parabolic)
    # both operators lower the relevant degree by at least two
    codomain = spaces.basis_filtered(n, d - 2, parabolic=parabolic)
    M = spaces.operator_matrix(spec, domain, codomain)
    return spaces.kernel_basis(M, domain)


def discrete_kernel_dim(n: int, d: int, kind: str) -> int:
    if d < 0:
        raise ValueError("d must be nonnegative")
    return discrete_kernel(n, d, kind).dim


@dataclass(frozen=True)
class LatticeRow:
    n: int
    d: int
    disc_heat_dim: int
    cont_P_dim: int
    disc_harm_dim: int
    cont_H_dim: int
    thm1_ok: bool | None  # None for odd d, where the inequality is not stated

    def as_csv(self) -> list[str]:
        flag = "na" if self.thm1_ok is None else str(self.thm1_ok).lower()
        return [str(v) for v in (self.n, self.d, self.disc_heat_dim, self.cont_P_dim,
                                 self.disc_harm_dim, self.cont_H_dim)] + [flag]


CSV_HEADER = ["n", "d", "disc_heat_dim", "cont_P_dim", "disc_harm_dim", "cont_H_dim", "thm1_ok"]


def lattice_row(n: int, d: int) -> LatticeRow:
    heat = discrete_kernel_dim(n, d, "discrete_heat")
    harm = discrete_kernel_dim(n, d, "discrete_laplacian")
    ok = None
    if d % 2 == 0:
        rhs = sum(discrete_kernel_dim(n, 2 * i, "discrete_laplacian") for i in range(d // 2 + 1))
        ok = heat <= rhs
    return LatticeRow(n, d, heat, spaces.dim_P(n, d), harm, spaces.dim_Hd(n, d), ok)


def compare_discrete_continuum(n: int, d_max: int) -> list[LatticeRow]:
    return [lattice_row(n, d) for d in range(d_max + 1)]
