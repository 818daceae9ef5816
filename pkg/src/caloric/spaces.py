"""Graded monomial bases, operator matrices, kernels and dimension formulas."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

from . import linalg
from .errors import InvariantViolation
from .linalg import ExactMatrix
from .ratpoly import Monomial, Poly, heat_op, laplacian, monomial_key, monomial_to_json

KINDS = ("spatial", "parabolic", "spatial_filtered", "parabolic_filtered")


def _compositions(total: int, parts: int):
    """Exponent vectors of length ``parts`` summing to ``total``, alpha-descending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class GradedBasis:
    n: int
    kind: str
    degree: int
    monomials: tuple[Monomial, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown basis kind {self.kind!r}")
        object.__setattr__(self, "_index", {m: i for i, m in enumerate(self.monomials)})
        if len(self._index) != len(self.monomials):
            raise ValueError("duplicate monomials in basis")

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __contains__(self, mono):
        return mono in self._index

    def index(self, mono: Monomial) -> int:
        return self._index[mono]

    def coordinates(self, p: Poly) -> list[Fraction]:
        """Coordinate vector of ``p``; raises if p leaves the span."""
        v = [Fraction(0)] * len(self.monomials)
        for mono, c in p.terms.items():
            try:
                v[self._index[mono]] = c
            except KeyError:
                raise InvariantViolation(
                    "spaces", "coordinates", {"monomial": monomial_to_json(mono)}
                ) from None
        return v

    def poly(self, vector: Sequence) -> Poly:
        return Poly(self.n, [(m, c) for m, c in zip(self.monomials, vector) if c])

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "kind": self.kind,
            "degree": self.degree,
            "monomials": [monomial_to_json(m) for m in self.monomials],
        }


@lru_cache(maxsize=None)
def basis_A(n: int, p: int) -> GradedBasis:
    """Homogeneous spatial monomials of degree p (no t)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    monos = () if p < 0 else tuple(Monomial(a, 0) for a in _compositions(p, n))
    return GradedBasis(n, "spatial", p, monos)


@lru_cache(maxsize=None)
def basis_parabolic(n: int, p: int) -> GradedBasis:
    """Monomials x^alpha t^m with |alpha| + 2m = p."""
    if n < 1:
        raise ValueError("n must be at least 1")
    monos = []
    if p >= 0:
        for m in range(p // 2 + 1):
            monos.extend(Monomial(a, m) for a in _compositions(p - 2 * m, n))
    return GradedBasis(n, "parabolic", p, tuple(sorted(monos, key=monomial_key)))


@lru_cache(maxsize=None)
def basis_filtered(n: int, d: int, parabolic: bool = True) -> GradedBasis:
    """All monomials of (parabolic or spatial) degree at most d, lowest degree first."""
    monos: list[Monomial] = []
    for q in range(d + 1):
        monos.extend((basis_parabolic if parabolic else basis_A)(n, q).monomials)
    kind = "parabolic_filtered" if parabolic else "spatial_filtered"
    return GradedBasis(n, kind, d, tuple(monos))


# dimension formulas ---------------------------------------------------------


def dim_A(n: int, p: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return comb(p + n - 1, n - 1) if p >= 0 else 0


def dim_parabolic(n: int, p: int) -> int:
    return sum(dim_A(n, p - 2 * j) for j in range(p // 2 + 1)) if p >= 0 else 0


def dim_H_homog(n: int, k: int) -> int:
    return dim_A(n, k) - dim_A(n, k - 2)


def dim_Hd(n: int, k: int) -> int:
    return dim_A(n, k) + dim_A(n, k - 1)


def dim_P(n: int, p: int) -> int:
    return sum(dim_A(n, j) for j in range(p + 1))


@dataclass(frozen=True)
class BoundCheck:
    n: int
    p: int
    lower: Fraction
    value: int
    upper: Fraction

    @property
    def holds(self) -> bool:
        return self.lower <= self.value <= self.upper


def check_dim_A_bounds(n: int, p: int) -> BoundCheck:
    """Sandwich dim A^n_p between p^(n-1)/(n-1)! and 2^(n-1) p^(n-1)/(n-1)!; needs p >= n."""
    if p < n:
        raise ValueError(f"bounds only asserted for p >= n (got n={n}, p={p})")
    base = Fraction(p ** (n - 1), factorial(n - 1))
    return BoundCheck(n, p, base, dim_A(n, p), base * 2 ** (n - 1))


# operator matrices and kernels ----------------------------------------------

OPERATORS: dict[str, Callable[[Poly], Poly]] = {"laplacian": laplacian, "heat_op": heat_op}


def operator_matrix(which, domain: GradedBasis, codomain: GradedBasis) -> ExactMatrix:
    """Matrix of a linear operator; column j holds the image of domain monomial j.

    ``which`` is ``"laplacian"``, ``"heat_op"`` or any callable Poly -> Poly.
    """
    op = OPERATORS[which] if isinstance(which, str) else which
    cols = []
    for mono in domain.monomials:
        image = op(Poly.monomial(mono))
        for m in image.terms:
            if m not in codomain:
                raise InvariantViolation(
                    "spaces",
                    "operator_matrix",
                    {"domain_monomial": monomial_to_json(mono), "image_monomial": monomial_to_json(m)},
                )
        cols.append(codomain.coordinates(image))
    rows = [[cols[j][i] for j in range(len(domain))] for i in range(len(codomain))]
    return ExactMatrix.from_rows(rows, len(domain))


@dataclass(frozen=True)
class KernelBasis:
    vectors: tuple[tuple[Fraction, ...], ...]
    basis: GradedBasis

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def polys(self) -> list[Poly]:
        return [self.basis.poly(v) for v in self.vectors]

    def to_json(self) -> dict:
        from .ratpoly import format_rational

        return {
            "dim": self.dim,
            "basis": [monomial_to_json(m) for m in self.basis.monomials],
            "vectors": [[format_rational(c) for c in v] for v in self.vectors],
        }


def kernel_basis(M: ExactMatrix, basis: GradedBasis) -> KernelBasis:
    if M.cols != len(basis):
        raise ValueError(f"matrix has {M.cols} columns but basis has {len(basis)} elements")
    vecs = linalg.nullspace(M)
    return KernelBasis(tuple(tuple(v) for v in vecs), basis)


@lru_cache(maxsize=None)
def laplacian_matrix(n: int, p: int) -> ExactMatrix:
    return operator_matrix("laplacian", basis_A(n, p), basis_A(n, p - 2))


@lru_cache(maxsize=None)
def heat_matrix(n: int, p: int) -> ExactMatrix:
    return operator_matrix("heat_op", basis_parabolic(n, p), basis_parabolic(n, p - 2))


@lru_cache(maxsize=None)
def harmonic_layer(n: int, k: int) -> KernelBasis:
    """Homogeneous harmonic polynomials of degree k, as a kernel basis."""
    return kernel_basis(laplacian_matrix(n, k), basis_A(n, k))


@lru_cache(maxsize=None)
def caloric_layer(n: int, p: int) -> KernelBasis:
    """Parabolically homogeneous caloric polynomials of degree p."""
    return kernel_basis(heat_matrix(n, p), basis_parabolic(n, p))


def caloric_basis(n: int, d: int) -> list[Poly]:
    """Basis of caloric polynomials of parabolic degree <= d, layer by layer."""
    out: list[Poly] = []
    for q in range(d + 1):
        out.extend(caloric_layer(n, q).polys())
    return out


def harmonic_basis(n: int, d: int) -> list[Poly]:
    out: list[Poly] = []
    for q in range(d + 1):
        out.extend(harmonic_layer(n, q).polys())
    return out


def kernel_dim_P(n: int, p: int) -> int:
    return sum(caloric_layer(n, q).dim for q in range(p + 1))


def kernel_dim_Hd(n: int, k: int) -> int:
    return sum(harmonic_layer(n, q).dim for q in range(k + 1))


@dataclass(frozen=True)
class TheoremReport:
    n: int
    k: int
    lhs: int
    rhs: int
    rhs_terms: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "lhs": self.lhs, "rhs": self.rhs,
                "rhs_terms": list(self.rhs_terms), "equal": self.equal}


def verify_main_theorem(n: int, k: int) -> TheoremReport:
    """Compare dim of caloric 2k-growth space with the sum of harmonic 2i-growth dims.

    Each side is computed both from the closed form and from exact kernels;
    a disagreement between the two routes raises ``InvariantViolation``.
    """
    lhs_closed, lhs_kernel = dim_P(n, 2 * k), kernel_dim_P(n, 2 * k)
    if lhs_closed != lhs_kernel:
        raise InvariantViolation("spaces", "verify_main_theorem",
                                 {"n": n, "k": k, "dim_P": lhs_closed, "kernel": lhs_kernel})
    terms = []
    for i in range(k + 1):
        closed, kern = dim_Hd(n, 2 * i), kernel_dim_Hd(n, 2 * i)
        if closed != kern:
            raise InvariantViolation("spaces", "verify_main_theorem",
                                     {"n": n, "degree": 2 * i, "dim_Hd": closed, "kernel": kern})
        terms.append(closed)
    return TheoremReport(n, k, lhs_closed, sum(terms), tuple(terms))


def dimension_row(n: int, p: int) -> dict:
    return {
        "n": n,
        "p": p,
        "dim_A": dim_A(n, p),
        "dim_H_homog": dim_H_homog(n, p),
        "dim_Hd": dim_Hd(n, p),
        "dim_P": dim_P(n, p),
    }
