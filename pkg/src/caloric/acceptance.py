"""Exit-criteria checks, shared by ``caloric verify-all`` and the test suite.

Each check returns a :class:`CheckResult`. Called with no arguments a
check runs at its full range; ``run_all`` narrows ranges to a config.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import constructors, decompose, lattice, rpverify, spaces
from .errors import InvariantViolation
from .golden import ENVELOPE_BAND, RP_INHOMOGENEOUS_MAX, inhomogeneous_samples
from .ratpoly import Poly, euler_operator, format_rational, heat_op, laplacian, parabolic_degree


@dataclass
class CheckResult:
    id: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    witness: dict | None = None
    module: str = ""
    operation: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.id:2d} {self.name} ({self.seconds:.2f}s)"

    def to_json(self) -> dict:
        out = {"id": self.id, "name": self.name, "passed": self.passed, "detail": self.detail}
        if not self.passed:
            out["failure"] = {"module": self.module, "operation": self.operation,
                              "witness": self.witness}
        return out


def _fail(res: CheckResult, module: str, operation: str, witness) -> CheckResult:
    res.passed = False
    res.module, res.operation, res.witness = module, operation, witness
    return res


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        try:
            res = fn(*args, **kwargs)
        except InvariantViolation as exc:
            res = CheckResult(getattr(fn, "check_id", 0), fn.__name__.replace("_", "-"), False)
            _fail(res, exc.module, exc.operation, exc.witness)
        res.seconds = time.perf_counter() - start
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _check_id(i):
    def deco(fn):
        fn.check_id = i
        return fn

    return deco


# 1 -----------------------------------------------------------------------------


@_timed
@_check_id(1)
def thm_main_equality(ns: Sequence[int] = (1, 2, 3), ks: Sequence[int] = range(5)) -> CheckResult:
    res = CheckResult(1, "thm-main-equality", True, {"cells": []})
    for n in ns:
        for k in ks:
            rep = spaces.verify_main_theorem(n, k)
            chain = decompose.psi_chain(n, k)
            res.detail["cells"].append({"n": n, "k": k, "lhs": rep.lhs, "rhs": rep.rhs,
                                        "chain_images": chain.image_dims})
            if not rep.equal:
                return _fail(res, "spaces", "verify_main_theorem", rep.to_json())
            if not (chain.equals_sum and chain.total == rep.lhs
                    and chain.image_dims == list(rep.rhs_terms)):
                return _fail(res, "decompose", "psi_chain", chain.to_json())
    return res


# 2 -----------------------------------------------------------------------------


@_timed
@_check_id(2)
def heat_layer_identity(n_max: int = 3, p_max: int = 10) -> CheckResult:
    res = CheckResult(2, "heat-layer-identity", True, {"n_max": n_max, "p_max": p_max})
    for n in range(1, n_max + 1):
        for p in range(p_max + 1):
            ker = spaces.caloric_layer(n, p)
            M = spaces.heat_matrix(n, p)
            rank = M.cols - ker.dim
            if ker.dim != spaces.dim_A(n, p) or rank != M.rows:
                return _fail(res, "spaces", "kernel_basis",
                             {"n": n, "p": p, "kernel_dim": ker.dim, "dim_A": spaces.dim_A(n, p),
                              "rank": rank, "codomain_dim": M.rows})
            for u in ker.polys():
                if not heat_op(u).is_zero():
                    return _fail(res, "spaces", "kernel_basis", {"n": n, "p": p, "u": str(u)})
    return res


# 3 -----------------------------------------------------------------------------


def random_spatial_homogeneous(rng: random.Random, n: int, d: int) -> Poly:
    monos = spaces.basis_A(n, d).monomials
    terms = []
    for mono in monos:
        if rng.random() < 0.6:
            terms.append((mono, Fraction(rng.randint(-20, 20), rng.randint(1, 9))))
    if not any(c for _, c in terms):
        terms.append((monos[0], Fraction(1)))
    return Poly(n, terms)


def random_parabolic_poly(rng: random.Random, n: int, max_degree: int) -> Poly:
    terms = []
    for mono in spaces.basis_filtered(n, max_degree).monomials:
        if rng.random() < 0.3:
            terms.append((mono, Fraction(rng.randint(-20, 20), rng.randint(1, 9))))
    return Poly(n, terms)


def laplace_trace_ok(trace: constructors.LaplaceOntoTrace) -> bool:
    if laplacian(trace.result) != trace.u:
        return False
    if any(c <= 0 for c in trace.c_ell):
        return False
    n = trace.n
    for ell in range(trace.k + 1):
        nxt = trace.u_ell[ell + 1] if ell < trace.k else Poly.zero(n)
        if laplacian(trace.v_ell[ell]) != trace.u_ell[ell].scale(trace.c_ell[ell]) + nxt:
            return False
        if euler_operator(trace.u_ell[ell]) != trace.u_ell[ell].scale(trace.d):
            return False
        if euler_operator(trace.v_ell[ell]) != trace.v_ell[ell].scale(trace.d + 2):
            return False
    return True


@_timed
@_check_id(3)
def laplacian_onto(n_max: int = 4, d_max: int = 10, trials: int = 200, seed: int = 20240101,
                   trial_n_max: int = 3, trial_d_max: int = 8) -> CheckResult:
    res = CheckResult(3, "laplacian-onto", True, {"n_max": n_max, "d_max": d_max, "trials": trials})
    for n in range(1, n_max + 1):
        for d in range(d_max + 1):
            M = spaces.laplacian_matrix(n, d + 2)
            rank = M.cols - spaces.harmonic_layer(n, d + 2).dim
            if rank != spaces.dim_A(n, d):
                return _fail(res, "spaces", "operator_matrix",
                             {"n": n, "d": d, "rank": rank, "dim_A": spaces.dim_A(n, d)})
    rng = random.Random(seed)
    for trial in range(trials):
        n = rng.randint(1, trial_n_max)
        d = rng.randint(0, trial_d_max)
        u = random_spatial_homogeneous(rng, n, d)
        trace = constructors.laplace_preimage(u)
        if not laplace_trace_ok(trace):
            return _fail(res, "constructors", "laplace_preimage",
                         {"trial": trial, "u": str(u)})
    return res


# 4 -----------------------------------------------------------------------------


@_timed
@_check_id(4)
def harmonic_dims(n_max: int = 4, k_max: int = 10) -> CheckResult:
    res = CheckResult(4, "harmonic-dims", True, {"n_max": n_max, "k_max": k_max})
    for n in range(1, n_max + 1):
        for k in range(k_max + 1):
            layer = spaces.harmonic_layer(n, k).dim
            if layer != spaces.dim_H_homog(n, k):
                return _fail(res, "spaces", "dim_H_homog", {"n": n, "k": k, "kernel": layer})
            if n == 3 and layer != 2 * k + 1:
                return _fail(res, "spaces", "dim_H_homog", {"n": 3, "k": k, "kernel": layer})
            if spaces.kernel_dim_Hd(n, k) != spaces.dim_Hd(n, k):
                return _fail(res, "spaces", "dim_Hd",
                             {"n": n, "k": k, "kernel": spaces.kernel_dim_Hd(n, k)})
    return res


# 5 -----------------------------------------------------------------------------


@_timed
@_check_id(5)
def dim_A_bounds(n_values: Sequence[int] = (2, 3, 4), p_max: int = 40) -> CheckResult:
    res = CheckResult(5, "dim-A-bounds", True, {"n_values": list(n_values), "p_max": p_max})
    for n in n_values:
        for p in range(n, p_max + 1):
            b = spaces.check_dim_A_bounds(n, p)
            if len(spaces.basis_A(n, p)) != b.value or not b.holds:
                return _fail(res, "spaces", "check_dim_A_bounds",
                             {"n": n, "p": p, "lower": format_rational(b.lower), "value": b.value,
                              "upper": format_rational(b.upper)})
    return res


# 6 -----------------------------------------------------------------------------


@_timed
@_check_id(6)
def corollary_k_plus_one(n_max: int = 3, k_max: int = 5) -> CheckResult:
    res = CheckResult(6, "corollary-k-plus-one", True, {"n_max": n_max, "k_max": k_max})
    for n in range(1, n_max + 1):
        for k in range(k_max + 1):
            P = spaces.kernel_dim_P(n, 2 * k)
            H = spaces.kernel_dim_Hd(n, 2 * k)
            if not P <= (k + 1) * H:
                return _fail(res, "spaces", "dim_P", {"n": n, "k": k, "dim_P": P, "dim_Hd": H})
    return res


# 7 -----------------------------------------------------------------------------


def envelope_ratios(n: int, d_max: int = 20) -> list[Fraction]:
    return [Fraction(spaces.dim_P(n, d), d**n) for d in range(1, d_max + 1)]


@_timed
@_check_id(7)
def growth_envelope(n_values: Sequence[int] = (1, 2, 3), d_max: int = 20,
                    kernel_d_max: int = 12) -> CheckResult:
    res = CheckResult(7, "growth-envelope", True, {"bands": {}})
    for n in n_values:
        for d in range(min(d_max, kernel_d_max) + 1):
            if spaces.kernel_dim_P(n, d) != spaces.dim_P(n, d):
                return _fail(res, "spaces", "dim_P", {"n": n, "d": d})
        ratios = envelope_ratios(n, d_max)
        lo, hi = ENVELOPE_BAND[n]
        c_n = max(max(r, 1 / r) for r in ratios)
        res.detail["bands"][str(n)] = {"min": format_rational(min(ratios)),
                                       "max": format_rational(max(ratios)),
                                       "c_n": format_rational(c_n)}
        if not all(lo <= r <= hi for r in ratios):
            return _fail(res, "spaces", "dim_P", {"n": n, "ratios_outside_band": True})
        if any(b > a for a, b in zip(ratios, ratios[1:])):
            return _fail(res, "spaces", "dim_P", {"n": n, "monotone": False})
    return res


# 8 -----------------------------------------------------------------------------


def alternate_nodes(k: int) -> tuple[Fraction, ...]:
    """Distinct nodes in (-1, -1/2] ending at -1/2."""
    return tuple(Fraction(-1, 2) - Fraction(k + 1 - i, 2 * k + 3) for i in range(1, k + 2))


@_timed
@_check_id(8)
def decomposition_suite(n_max: int = 3, ks: Sequence[int] = range(5)) -> CheckResult:
    res = CheckResult(8, "decomposition-suite", True, {"elements": 0})
    count = 0
    for n in range(1, n_max + 1):
        for k in ks:
            for u in spaces.caloric_basis(n, 2 * k):
                dec = decompose.decompose_caloric(u, k)
                if not all(dec.checks.values()):
                    return _fail(res, "decompose", "decompose_caloric",
                                 {"n": n, "k": k, "u": str(u), "checks": dec.checks})
                other = decompose.decompose_caloric(u, k, alternate_nodes(k))
                if other.coefficients != dec.coefficients:
                    return _fail(res, "decompose", "slice_coefficients",
                                 {"n": n, "k": k, "u": str(u), "reason": "node dependence"})
                for R in (Fraction(5, 2), Fraction(3)):
                    if not decompose.rescaled_slice_identity(u, k, R).holds:
                        return _fail(res, "decompose", "rescaled_slice_identity",
                                     {"n": n, "k": k, "u": str(u), "R": format_rational(R)})
                count += 1
    res.detail["elements"] = count
    return res


# 9 -----------------------------------------------------------------------------


@_timed
@_check_id(9)
def rp_scale_property(n_max: int = 3, degree_max: int = 8, top: int = 10) -> CheckResult:
    res = CheckResult(9, "rp-scale-property", True, {"homogeneous": 0, "inhomogeneous": {}})
    radii = rpverify.dyadic_radii(top)
    count = 0
    for n in range(1, n_max + 1):
        for q in range(degree_max + 1):
            for u in spaces.caloric_layer(n, q).polys():
                ratios = {row.ratio for row in rpverify.rp_scale_table(u, radii)}
                if len(ratios) != 1:
                    return _fail(res, "rpverify", "rp_scale_table", {"u": str(u)})
                count += 1
    res.detail["homogeneous"] = count
    for name, u in inhomogeneous_samples():
        if u.n > n_max or parabolic_degree(u) > degree_max:
            continue
        top_ratio = max(row.ratio for row in rpverify.rp_scale_table(u, radii))
        res.detail["inhomogeneous"][name] = format_rational(top_ratio)
        if top_ratio > RP_INHOMOGENEOUS_MAX[name]:
            return _fail(res, "rpverify", "rp_scale_table",
                         {"sample": name, "max": format_rational(top_ratio),
                          "golden": format_rational(RP_INHOMOGENEOUS_MAX[name])})
    return res


# 10 ----------------------------------------------------------------------------


@_timed
@_check_id(10)
def vanishing(n_max: int = 3, d_max: int = 8) -> CheckResult:
    res = CheckResult(10, "vanishing", True, {"checked": 0})
    count = 0
    for n in range(1, n_max + 1):
        for d in range(d_max + 1):
            g = rpverify.GrowthBound(d, n)
            for u in spaces.caloric_basis(n, d):
                out = rpverify.vanishing_check(u, g)
                if not (out.verified and out.sharp_verified):
                    return _fail(res, "rpverify", "vanishing_check",
                                 {"n": n, "d": d, "u": str(u), **out.to_json()})
                count += 1
    res.detail["checked"] = count
    return res


# 11 ----------------------------------------------------------------------------


@_timed
@_check_id(11)
def lattice_comparison(n_max: int = 2, d_max: int = 8) -> CheckResult:
    res = CheckResult(11, "lattice-comparison", True, {"rows": []})
    for n in range(1, n_max + 1):
        for row in lattice.compare_discrete_continuum(n, d_max):
            res.detail["rows"].append(row.as_csv())
            if row.disc_heat_dim != row.cont_P_dim or row.thm1_ok is False:
                return _fail(res, "lattice", "compare_discrete_continuum",
                             dict(zip(lattice.CSV_HEADER, row.as_csv())))
    return res


CHECKS: dict[int, Callable[..., CheckResult]] = {
    1: thm_main_equality,
    2: heat_layer_identity,
    3: laplacian_onto,
    4: harmonic_dims,
    5: dim_A_bounds,
    6: corollary_k_plus_one,
    7: growth_envelope,
    8: decomposition_suite,
    9: rp_scale_property,
    10: vanishing,
    11: lattice_comparison,
}


def scaled_arguments(ns: Sequence[int] | None, ks: Sequence[int] | None) -> dict[int, dict]:
    """Per-check keyword arguments; ``None`` ranges mean the full default ranges."""
    if ns is None and ks is None:
        return {i: {} for i in CHECKS}
    ns = list(ns) if ns is not None else [1, 2, 3]
    ks = list(ks) if ks is not None else list(range(5))
    n_max = max(ns)
    deg = 2 * max(ks)
    return {
        1: {"ns": [n for n in ns if n <= 3], "ks": ks},
        2: {"n_max": min(n_max, 3), "p_max": min(deg, 10)},
        3: {"n_max": min(n_max, 4), "d_max": min(deg, 10), "trial_n_max": min(n_max, 3),
            "trial_d_max": min(deg, 8)},
        4: {"n_max": min(n_max, 4), "k_max": min(deg, 10)},
        5: {"n_values": [n for n in ns if 2 <= n <= 4]},
        6: {"n_max": min(n_max, 3), "k_max": min(max(ks), 5)},
        7: {"n_values": [n for n in ns if n <= 3], "kernel_d_max": min(deg, 12)},
        8: {"n_max": min(n_max, 3), "ks": [k for k in ks if k <= 4]},
        9: {"n_max": min(n_max, 3), "degree_max": min(deg, 8)},
        10: {"n_max": min(n_max, 3), "d_max": min(deg, 8)},
        11: {"n_max": min(n_max, 2), "d_max": min(deg, 8)},
    }


def run_check(i: int, kwargs: dict) -> CheckResult:
    return CHECKS[i](**kwargs)
