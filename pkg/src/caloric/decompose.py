"""Time-slice decomposition of caloric polynomials and the kernel chain.

A caloric u with t-degree at most k is written u = p_0 + t p_1 + ... + t^k p_k.
The p_j are recovered from k+1 time slices u(., t_i) through the inverse of
the Vandermonde matrix of the nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg, spaces
from .errors import InvariantViolation
from .linalg import ExactMatrix
from .ratpoly import (
    Poly,
    ZERO_DEGREE,
    format_rational,
    heat_op,
    laplacian,
    parabolic_degree,
    poly_to_json,
    spatial_degree,
    substitute_t,
    t_coefficient,
    t_degree,
)


@dataclass(frozen=True)
class SliceCoefficients:
    k: int
    nodes: tuple[Fraction, ...]
    b: tuple[tuple[Fraction, ...], ...]  # b[j][i] multiplies u(., t_i) to give p_j

    def residual_is_zero(self) -> bool:
        """sum_i b[j][i] (1, t_i, ..., t_i^k) == e_j for every j."""
        for j, row in enumerate(self.b):
            for ell in range(self.k + 1):
                s = sum(bi * t**ell for bi, t in zip(row, self.nodes))
                if s != (1 if ell == j else 0):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "nodes": [format_rational(t) for t in self.nodes],
            "b": [[format_rational(v) for v in row] for row in self.b],
        }


def default_nodes(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i - k - 1, k + 1) for i in range(1, k + 2))


def vandermonde(nodes: Sequence[Fraction], k: int) -> ExactMatrix:
    return ExactMatrix.from_rows([[t**ell for ell in range(k + 1)] for t in nodes], k + 1)


def slice_coefficients(k: int, nodes: Sequence | None = None) -> SliceCoefficients:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if nodes is None:
        nodes = default_nodes(k)
    nodes = tuple(Fraction(t) for t in nodes)
    if len(nodes) != k + 1:
        raise ValueError(f"need {k + 1} nodes, got {len(nodes)}")
    if len(set(nodes)) != len(nodes):
        raise ValueError("nodes must be distinct")
    if list(nodes) != sorted(nodes):
        raise ValueError("nodes must be strictly increasing")
    if not all(-1 < t <= 0 for t in nodes):
        raise ValueError("nodes must lie in (-1, 0]")
    # B V = I, so B is the inverse of V with V[i][l] = t_i^l
    inv = linalg.inverse(vandermonde(nodes, k))
    return SliceCoefficients(k, nodes, inv.entries)


@dataclass
class TimeSliceDecomposition:
    k: int
    u: Poly
    coefficients: list[Poly]
    nodes: tuple[Fraction, ...]
    checks: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "u": poly_to_json(self.u),
            "nodes": [format_rational(t) for t in self.nodes],
            "coefficients": [poly_to_json(p) for p in self.coefficients],
            "checks": dict(self.checks),
        }


def _require_caloric(u: Poly, op: str) -> None:
    if not heat_op(u).is_zero():
        raise ValueError(f"{op}: input is not caloric")


def slice_route(u: Poly, sc: SliceCoefficients) -> list[Poly]:
    """p_j = sum_i b[j][i] u(x, t_i), with each slice substituted exactly."""
    slices = [substitute_t(u, t) for t in sc.nodes]
    out = []
    for row in sc.b:
        acc = Poly.zero(u.n)
        for bi, s in zip(row, slices):
            if bi:
                acc = acc + s.scale(bi)
        out.append(acc)
    return out


def decompose_caloric(u: Poly, k: int, nodes: Sequence | None = None) -> TimeSliceDecomposition:
    _require_caloric(u, "decompose_caloric")
    td = t_degree(u)
    if td is not ZERO_DEGREE and td > k:
        raise ValueError(f"decompose_caloric: t-degree {td} exceeds k={k}")
    sc = slice_coefficients(k, nodes)
    via_slices = slice_route(u, sc)
    direct = [t_coefficient(u, j) for j in range(k + 1)]
    if via_slices != direct:
        bad = next(j for j in range(k + 1) if via_slices[j] != direct[j])
        raise InvariantViolation("decompose", "decompose_caloric",
                                 {"j": bad, "slices": str(via_slices[bad]), "direct": str(direct[bad])})
    dec = TimeSliceDecomposition(k, u, direct, sc.nodes)
    dec.checks["routes_agree"] = True
    dec.checks["reconstruction"] = reconstruct(direct) == u
    dec.checks["chain"] = chain_holds(direct)
    dec.checks["strati_degrees"] = strati_degrees(dec).holds
    dec.checks["slice_coefficients"] = sc.residual_is_zero()
    if not (dec.checks["reconstruction"] and dec.checks["chain"]):
        raise InvariantViolation("decompose", "decompose_caloric", dict(dec.checks))
    return dec


def reconstruct(coefficients: Sequence[Poly]) -> Poly:
    n = coefficients[0].n
    t = Poly.t(n)
    out = Poly.zero(n)
    t_pow = Poly.const(n, 1)
    for p in coefficients:
        out = out + t_pow * p
        t_pow = t_pow * t
    return out


def chain_holds(coefficients: Sequence[Poly]) -> bool:
    """Lap p_j == (j+1) p_(j+1) for j < k and Lap p_k == 0."""
    k = len(coefficients) - 1
    for j, p in enumerate(coefficients):
        target = coefficients[j + 1].scale(j + 1) if j < k else Poly.zero(p.n)
        if laplacian(p) != target:
            return False
    return True


@dataclass(frozen=True)
class StratiResult:
    holds: bool
    degrees: tuple
    bounds: tuple[int, ...]
    witness: int | None = None


def strati_degrees(dec: TimeSliceDecomposition) -> StratiResult:
    """deg_x p_j <= 2(k - j) for every j; reports the first j that fails."""
    k = dec.k
    degrees = tuple(
        None if p.is_zero() else spatial_degree(p) for p in dec.coefficients
    )
    bounds = tuple(2 * (k - j) for j in range(k + 1))
    for j, (deg, bound) in enumerate(zip(degrees, bounds)):
        if deg is not None and deg > bound:
            return StratiResult(False, degrees, bounds, j)
    return StratiResult(True, degrees, bounds)


@dataclass(frozen=True)
class RescaledSliceReport:
    R: Fraction
    per_j: tuple[bool, ...]

    @property
    def holds(self) -> bool:
        return all(self.per_j)


def rescaled_slice_identity(u: Poly, k: int, R, nodes: Sequence | None = None) -> RescaledSliceReport:
    """Check sum_i b[j][i] u(x, R^2 t_i) == R^(2j) p_j(x) for every j."""
    R = Fraction(R)
    if R <= 2:
        raise ValueError("R must exceed 2")
    dec = decompose_caloric(u, k, nodes)
    sc = slice_coefficients(k, dec.nodes)
    scaled = SliceCoefficients(k, tuple(R * R * t for t in sc.nodes), sc.b)
    lhs = slice_route(u, scaled)
    per_j = tuple(lhs[j] == dec.coefficients[j].scale(R ** (2 * j)) for j in range(k + 1))
    return RescaledSliceReport(R, per_j)


# kernel chain -----------------------------------------------------------------


@dataclass
class PsiChainReport:
    n: int
    k: int
    image_dims: list[int]
    kernel_dims: list[int]
    harmonic_dims: list[int]
    total: int
    dim_P: int

    @property
    def equals_sum(self) -> bool:
        return self.total == sum(self.harmonic_dims) == self.dim_P

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "image_dims": self.image_dims,
            "kernel_dims": self.kernel_dims,
            "harmonic_dims": self.harmonic_dims,
            "total": self.total,
            "dim_P": self.dim_P,
            "equals_sum": self.equals_sum,
        }


def psi_chain(n: int, k: int) -> PsiChainReport:
    """Walk Psi_j(u) = p_(k-j) down the kernel chain of caloric polys of degree <= 2k.

    At step j the current space K (the kernel of all earlier Psi) is mapped
    to its t^(k-j) coefficient. Every image must be harmonic of degree
    <= 2j; the image dimension is compared with dim H_(2j), and K shrinks to
    the kernel. The chain must end at the zero space.
    """
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    current = spaces.caloric_basis(n, 2 * k)
    total_dim = len(current)
    target = spaces.basis_filtered(n, 2 * k, parabolic=False)
    image_dims, kernel_dims, harmonic_dims = [], [], []
    for j in range(k + 1):
        images = [t_coefficient(u, k - j) for u in current]
        for u, img in zip(current, images):
            if not laplacian(img).is_zero():
                raise InvariantViolation("decompose", "psi_chain",
                                         {"step": j, "reason": "image not harmonic", "u": str(u)})
            deg = parabolic_degree(img)
            if deg is not ZERO_DEGREE and deg > 2 * j:
                raise InvariantViolation("decompose", "psi_chain",
                                         {"step": j, "reason": "image degree too high", "u": str(u)})
        # columns: coordinates of the images in the spatial basis
        coords = [target.coordinates(img) for img in images]
        M = ExactMatrix.from_rows(
            [[coords[c][r] for c in range(len(coords))] for r in range(len(target))],
            len(coords),
        )
        kern = linalg.nullspace(M)
        rank = len(current) - len(kern)
        h_dim = spaces.dim_Hd(n, 2 * j)
        if rank > h_dim:
            raise InvariantViolation("decompose", "psi_chain",
                                     {"step": j, "image_dim": rank, "harmonic_dim": h_dim})
        image_dims.append(rank)
        harmonic_dims.append(h_dim)
        nxt = []
        for vec in kern:
            acc = Poly.zero(n)
            for c, u in zip(vec, current):
                if c:
                    acc = acc + u.scale(c)
            nxt.append(acc)
        current = nxt
        kernel_dims.append(len(current))
    if current:
        raise InvariantViolation("decompose", "psi_chain", {"reason": "chain did not terminate"})
    return PsiChainReport(n, k, image_dims, kernel_dims, harmonic_dims, sum(image_dims), total_dim)
