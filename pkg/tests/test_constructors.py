import random
from fractions import Fraction as F

import pytest

from caloric import spaces
from caloric.acceptance import laplace_trace_ok, random_parabolic_poly, random_spatial_homogeneous
from caloric.constructors import (
    caloric_extension,
    heat_preimage,
    heat_preimage_layers,
    laplace_constant,
    laplace_preimage,
)
from caloric.ratpoly import (
    Poly,
    heat_op,
    homogeneous_layers,
    laplacian,
    parabolic_degree,
    radial_multiply,
    substitute_t,
)
from conftest import T, X


def test_heat_preimage_examples():
    x, t = X(1, 1), T(1)
    assert heat_preimage(Poly.const(1, 1)) == t
    v = heat_preimage(x * x)
    assert v == t * x * x + t * t
    assert heat_op(v) == x * x
    w = heat_preimage(t)
    assert w == (t * t).scale(F(1, 2))
    assert heat_op(w) == t


def test_heat_preimage_rejects_mixed_layers():
    with pytest.raises(ValueError):
        heat_preimage(X(1, 1) + 1)


def test_laplace_preimage_examples():
    for n in (1, 2, 3):
        tr = laplace_preimage(Poly.const(n, 1))
        assert tr.result == radial_multiply(Poly.const(n, 1)).scale(F(1, 2 * n))
        assert tr.c_ell == (2 * n,)
    x1, x2 = X(2, 1), X(2, 2)
    tr = laplace_preimage(x1)
    assert tr.c_ell[0] == 8
    assert tr.result == (x1**3 + x1 * x2 * x2).scale(F(1, 8))
    h = x1 * x1 - x2 * x2
    tr = laplace_preimage(h)
    assert tr.c_ell[0] == 12
    assert tr.u_ell[1].is_zero()
    assert tr.result == radial_multiply(h).scale(F(1, 12))
    assert laplacian(tr.result) == h


def test_laplace_preimage_rejects_time_and_mixed_degree():
    with pytest.raises(ValueError):
        laplace_preimage(T(1))
    with pytest.raises(ValueError):
        laplace_preimage(X(1, 1) + 1)


def test_laplace_constants_positive():
    for n in range(1, 6):
        for d in range(15):
            assert all(laplace_constant(n, d, ell) > 0 for ell in range(d // 2 + 1))


def test_caloric_extension_examples():
    x = X(1, 1)
    t = T(1)
    assert caloric_extension(x * x) == x * x + t.scale(2)
    assert caloric_extension(x**4) == x**4 + (t * x * x).scale(12) + (t * t).scale(12)
    assert caloric_extension(X(2, 1) * X(2, 2)) == X(2, 1) * X(2, 2)
    with pytest.raises(ValueError):
        caloric_extension(t)


def test_randomized_heat_roundtrips():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 3)
        u = random_parabolic_poly(rng, n, rng.randint(0, 8))
        for layer in homogeneous_layers(u).values():
            assert heat_op(heat_preimage(layer)) == layer
        assert heat_op(heat_preimage_layers(u)) == u


def test_randomized_laplace_roundtrips():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 3)
        d = rng.randint(0, 8)
        tr = laplace_preimage(random_spatial_homogeneous(rng, n, d))
        assert laplace_trace_ok(tr)


@pytest.mark.parametrize("n,d", [(1, 4), (2, 5), (3, 4)])
def test_caloric_extension_lies_in_kernel_and_is_unique(n, d):
    rng = random.Random(n * 100 + d)
    filtered = spaces.basis_filtered(n, d)
    kernel = spaces.caloric_basis(n, d)
    from caloric.linalg import ExactMatrix, rank

    K = [filtered.coordinates(u) for u in kernel]
    for _ in range(5):
        p0 = Poly(n, [(m, rng.randint(-5, 5)) for m in spaces.basis_filtered(n, d, parabolic=False)])
        u = caloric_extension(p0)
        assert heat_op(u).is_zero() and substitute_t(u, 0) == p0
        assert parabolic_degree(u) <= d or u.is_zero()
        assert rank(ExactMatrix.from_rows(K + [filtered.coordinates(u)])) == len(K)
    # uniqueness: restriction to t = 0 is injective on the caloric space
    slices = [spaces.basis_filtered(n, d, parabolic=False).coordinates(substitute_t(u, 0)) for u in kernel]
    assert rank(ExactMatrix.from_rows(slices)) == len(kernel) == spaces.dim_P(n, d)
