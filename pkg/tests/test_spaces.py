import itertools
from fractions import Fraction as F

import pytest

from caloric import linalg, spaces
from caloric.errors import InvariantViolation
from caloric.linalg import ExactMatrix
from caloric.ratpoly import Monomial, Poly, heat_op, laplacian
from conftest import T, X


def brute_force_monomials(n, p, parabolic):
    out = set()
    for m in range(p // 2 + 1 if parabolic else 1):
        for alpha in itertools.product(range(p + 1), repeat=n):
            if sum(alpha) + 2 * m == p:
                out.add(Monomial(alpha, m))
    return out


def test_basis_examples():
    assert spaces.basis_A(2, 2).monomials == (
        Monomial((2, 0)), Monomial((1, 1)), Monomial((0, 2)))
    assert spaces.basis_parabolic(1, 2).monomials == (Monomial((2,), 0), Monomial((0,), 1))
    b = spaces.basis_parabolic(2, 4)
    assert set(b.monomials) == brute_force_monomials(2, 4, True)
    assert len(b) == 9 == spaces.dim_A(2, 4) + spaces.dim_A(2, 2) + spaces.dim_A(2, 0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_enumeration_matches_binomial(n):
    for p in range(31):
        assert len(spaces.basis_A(n, p)) == spaces.dim_A(n, p)
        if p <= 12 and n <= 3:
            assert set(spaces.basis_A(n, p).monomials) == brute_force_monomials(n, p, False)
            assert set(spaces.basis_parabolic(n, p).monomials) == brute_force_monomials(n, p, True)
            assert len(spaces.basis_parabolic(n, p)) == sum(
                spaces.dim_A(n, p - 2 * j) for j in range(p // 2 + 1))


def test_dim_examples():
    assert spaces.dim_A(2, 3) == 4
    assert spaces.dim_A(3, 2) == 6
    assert spaces.dim_A(5, 0) == 1
    assert spaces.dim_A(3, -1) == 0
    assert [spaces.dim_H_homog(3, k) for k in range(6)] == [1, 3, 5, 7, 9, 11]
    assert spaces.dim_H_homog(2, 4) == 2
    assert spaces.dim_H_homog(4, 0) == 1
    assert spaces.dim_Hd(2, 2) == 5
    assert spaces.dim_Hd(3, 1) == 4
    assert spaces.dim_Hd(4, 0) == 1
    assert spaces.dim_P(2, 2) == 6
    assert spaces.dim_P(2, 4) == 15
    assert spaces.dim_P(1, 2) == 3


def test_dim_Hd_is_sum_of_layers():
    for n in range(1, 5):
        for k in range(12):
            assert spaces.dim_Hd(n, k) == sum(spaces.dim_H_homog(n, j) for j in range(k + 1))


def test_bound_examples():
    b = spaces.check_dim_A_bounds(2, 2)
    assert (b.lower, b.value, b.upper, b.holds) == (2, 3, 4, True)
    b = spaces.check_dim_A_bounds(1, 5)
    assert (b.lower, b.value, b.upper, b.holds) == (1, 1, 1, True)
    b = spaces.check_dim_A_bounds(3, 3)
    assert (b.lower, b.value, b.upper, b.holds) == (F(9, 2), 10, 18, True)
    with pytest.raises(ValueError):
        spaces.check_dim_A_bounds(3, 2)


def test_operator_matrix_examples():
    M = spaces.operator_matrix("laplacian", spaces.basis_A(2, 2), spaces.basis_A(2, 0))
    assert M.entries == ((2, 0, 2),)
    M = spaces.operator_matrix("heat_op", spaces.basis_parabolic(1, 2), spaces.basis_parabolic(1, 0))
    assert M.entries == ((-2, 1),)
    M = spaces.operator_matrix("laplacian", spaces.basis_A(1, 1), spaces.basis_A(1, -1))
    assert (M.rows, M.cols) == (0, 1)


def test_operator_matrix_rejects_escaping_image():
    with pytest.raises(InvariantViolation):
        spaces.operator_matrix("laplacian", spaces.basis_A(2, 2), spaces.basis_A(2, 1))


def same_span(polys_a, polys_b, basis):
    A = ExactMatrix.from_rows([basis.coordinates(p) for p in polys_a])
    B = ExactMatrix.from_rows([basis.coordinates(p) for p in polys_a + polys_b])
    return linalg.rank(A) == linalg.rank(B) == len(polys_b)


def test_kernel_examples():
    x1, x2 = X(2, 1), X(2, 2)
    b = spaces.basis_A(2, 2)
    ker = spaces.kernel_basis(ExactMatrix.from_rows([[2, 0, 2]]), b)
    assert ker.dim == 2
    assert same_span(ker.polys(), [x1 * x2, x1 * x1 - x2 * x2], b)

    b = spaces.basis_parabolic(1, 2)
    ker = spaces.kernel_basis(ExactMatrix.from_rows([[-2, 1]]), b)
    assert ker.dim == 1
    assert same_span(ker.polys(), [X(1, 1) ** 2 + T(1).scale(2)], b)

    ker = spaces.kernel_basis(ExactMatrix.zeros(0, 4), spaces.basis_A(2, 3))
    assert ker.dim == 4


def test_kernel_vectors_are_reduced():
    ker = spaces.caloric_layer(2, 6)
    free = []
    for v in ker.vectors:
        # the last nonzero coordinate of each vector is a 1 at its own free column
        last = max(i for i, c in enumerate(v) if c)
        assert v[last] == 1
        free.append(last)
    for v, f in zip(ker.vectors, free):
        assert all(v[g] == 0 for g in free if g != f)


def test_kernel_dim_mismatch_rejected():
    with pytest.raises(ValueError):
        spaces.kernel_basis(ExactMatrix.zeros(1, 2), spaces.basis_A(2, 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kernel_elements_are_annihilated(n):
    for p in range(9):
        for u in spaces.caloric_layer(n, p).polys():
            assert heat_op(u).is_zero()
        for h in spaces.harmonic_layer(n, p).polys():
            assert laplacian(h).is_zero()


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_surjectivity_and_layer_dims(n):
    for d in range(9 if n < 4 else 7):
        assert linalg.rank(spaces.laplacian_matrix(n, d + 2)) == spaces.dim_A(n, d)
        assert spaces.harmonic_layer(n, d).dim == spaces.dim_H_homog(n, d)
        if n <= 3:
            assert linalg.rank(spaces.heat_matrix(n, d + 2)) == len(spaces.basis_parabolic(n, d))
            assert spaces.caloric_layer(n, d).dim == spaces.dim_A(n, d)


def test_dim_P_by_kernel_examples():
    assert spaces.kernel_dim_P(1, 2) == 3
    got = spaces.caloric_basis(1, 2)
    x, t = X(1, 1), T(1)
    assert same_span(got, [Poly.const(1, 1), x, x * x + t.scale(2)], spaces.basis_filtered(1, 2))


@pytest.mark.parametrize("n,k,lhs,terms", [
    (2, 2, 15, (1, 5, 9)),
    (1, 1, 3, (1, 2)),
    (1, 0, 1, (1,)),
    (3, 0, 1, (1,)),
])
def test_main_theorem_examples(n, k, lhs, terms):
    rep = spaces.verify_main_theorem(n, k)
    assert (rep.lhs, rep.rhs_terms, rep.equal) == (lhs, terms, True)


def test_corollary_k_plus_one():
    for n in range(1, 4):
        for k in range(1, 6):
            assert spaces.dim_P(n, 2 * k) <= (k + 1) * spaces.dim_Hd(n, 2 * k)


def test_filtered_bases_are_direct_sums():
    b = spaces.basis_filtered(2, 4)
    assert len(b) == sum(len(spaces.basis_parabolic(2, q)) for q in range(5))
    assert b.kind == "parabolic_filtered"
    s = spaces.basis_filtered(2, 4, parabolic=False)
    assert all(m.m == 0 for m in s.monomials) and len(s) == 15
