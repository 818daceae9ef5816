from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from caloric import spaces
from caloric.lattice import (
    ShiftOperatorSpec,
    compare_discrete_continuum,
    discrete_apply,
    discrete_kernel,
    discrete_kernel_dim,
)
from caloric.linalg import ExactMatrix, rank
from caloric.ratpoly import evaluate, heat_op, homogeneous_component, laplacian
from conftest import T, X, homogeneous_polys, polys

x, t = X(1, 1), T(1)
LAP1 = ShiftOperatorSpec(1, "discrete_laplacian")
HEAT1 = ShiftOperatorSpec(1, "discrete_heat")


def test_apply_examples():
    assert discrete_apply(LAP1, x * x) == 2
    assert discrete_apply(LAP1, x**3) == x.scale(6)
    assert discrete_apply(HEAT1, x * x + t.scale(2)).is_zero()


def test_apply_matches_pointwise_stencil():
    # oracle: evaluate the stencil at lattice points directly
    p = X(2, 1) ** 3 * X(2, 2) + (T(2) * X(2, 2) ** 2).scale(F(1, 3)) + T(2) ** 2
    lap = discrete_apply(ShiftOperatorSpec(2, "discrete_laplacian"), p)
    heat = discrete_apply(ShiftOperatorSpec(2, "discrete_heat"), p)
    for a in range(-2, 3):
        for b in range(-2, 3):
            for s in (-3, 0):
                u = lambda dx, dy, dt=0: evaluate(p, [a + dx, b + dy], s + dt)
                stencil = u(1, 0) + u(-1, 0) + u(0, 1) + u(0, -1) - 4 * u(0, 0)
                assert evaluate(lap, [a, b], s) == stencil
                assert evaluate(heat, [a, b], s) == u(0, 0, 1) - u(0, 0) - stencil


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        discrete_apply(LAP1, X(2, 1))
    with pytest.raises(ValueError):
        ShiftOperatorSpec(1, "continuum")


def test_kernel_dim_examples():
    assert discrete_kernel_dim(1, 2, "discrete_heat") == 3
    ker = discrete_kernel(1, 2, "discrete_heat")
    # x^2 + 2t lies in the span of the computed kernel
    herm = ker.basis.coordinates(x * x + t.scale(2))
    assert rank(ExactMatrix.from_rows(list(ker.vectors) + [herm])) == ker.dim
    assert discrete_kernel_dim(1, 2, "discrete_laplacian") == 2
    for n in (1, 2, 3):
        assert discrete_kernel_dim(n, 0, "discrete_heat") == 1
        assert discrete_kernel_dim(n, 0, "discrete_laplacian") == 1


def test_compare_examples():
    rows = compare_discrete_continuum(1, 4)
    assert [r.disc_heat_dim for r in rows] == [1, 2, 3, 4, 5]
    assert all(r.disc_heat_dim == r.cont_P_dim for r in rows)
    row = compare_discrete_continuum(2, 2)[2]
    assert row.disc_heat_dim == spaces.dim_P(2, 2) == 6
    r0 = compare_discrete_continuum(1, 0)[0]
    assert (r0.disc_heat_dim, r0.cont_P_dim, r0.disc_harm_dim, r0.cont_H_dim) == (1, 1, 1, 1)


def test_theorem_inequality_with_discrete_dims():
    for n in (1, 2):
        for row in compare_discrete_continuum(n, 6):
            if row.d % 2 == 0:
                assert row.thm1_ok is True
            else:
                assert row.thm1_ok is None
            assert row.disc_harm_dim == row.cont_H_dim


@settings(max_examples=50)
@given(homogeneous_polys(max_degree=6))
def test_principal_symbol_agrees(pq):
    p, q = pq
    n = p.n
    for kind, cont in (("discrete_laplacian", laplacian), ("discrete_heat", heat_op)):
        if kind == "discrete_laplacian" and any(m.m for m in p.terms):
            continue
        diff = discrete_apply(ShiftOperatorSpec(n, kind), p) - cont(p)
        if q >= 2:
            assert homogeneous_component(diff, q - 2).is_zero()
        for r in range(q - 1, q + 1):
            if r >= 0:
                assert homogeneous_component(diff, r).is_zero()


@settings(max_examples=50)
@given(polys(n=2), polys(n=2))
def test_discrete_operators_linear(p, q):
    a, b = F(2, 3), F(-5, 7)
    for kind in ("discrete_laplacian", "discrete_heat"):
        spec = ShiftOperatorSpec(2, kind)
        assert discrete_apply(spec, p.scale(a) + q.scale(b)) == \
            discrete_apply(spec, p).scale(a) + discrete_apply(spec, q).scale(b)
