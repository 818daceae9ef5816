from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from caloric import _bareiss_py, linalg
from caloric.linalg import ExactMatrix

BACKENDS = sorted(linalg.KERNELS)


def test_compiled_kernel_selected_when_built():
    # the editable install builds the extension; the fallback is still exercised below
    assert linalg.BACKEND in ("cython", "python")
    assert "python" in linalg.KERNELS


small_rationals = st.builds(F, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_rows=6, max_cols=7):
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    sparse = st.one_of(st.just(F(0)), st.just(F(0)), small_rationals)
    entries = [[draw(sparse) for _ in range(cols)] for _ in range(rows)]
    return ExactMatrix.from_rows(entries, cols)


def to_sympy(M):
    return sp.Matrix(M.rows, M.cols, [sp.Rational(v.numerator, v.denominator)
                                      for row in M.entries for v in row])


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("split", [True, False])
@settings(max_examples=60, deadline=None)
@given(M=matrices())
def test_rank_and_nullspace_match_sympy(backend, split, M):
    kern = linalg.KERNELS[backend]
    S = to_sympy(M)
    expected_rank = S.rank() if M.rows and M.cols else 0
    assert linalg.rank(M, kernel=kern, split_blocks=split) == expected_rank
    null = linalg.nullspace(M, kernel=kern, split_blocks=split)
    assert len(null) == M.cols - expected_rank
    for v in null:
        assert all(x == 0 for x in M.apply(v))
    if null:
        assert sp.Matrix([[sp.Rational(x.numerator, x.denominator) for x in v] for v in null]).rank() == len(null)


@pytest.mark.parametrize("backend", BACKENDS)
@settings(max_examples=40, deadline=None)
@given(M=matrices())
def test_rref_matches_sympy(backend, M):
    if not M.rows or not M.cols:
        return
    rows, pivots = linalg.echelon(M.entries, M.cols, kernel=linalg.KERNELS[backend])
    R, piv = to_sympy(M).rref()
    assert tuple(pivots) == piv
    for i, row in enumerate(rows):
        assert [sp.Rational(v.numerator, v.denominator) for v in row] == list(R.row(i))


@settings(max_examples=40, deadline=None)
@given(M=matrices())
def test_backends_agree_exactly(M):
    outs = {b: linalg.nullspace(M, kernel=linalg.KERNELS[b]) for b in BACKENDS}
    assert len({repr(v) for v in outs.values()}) == 1


def test_forward_elimination_is_fraction_free():
    rows = [[2, 4, 6], [1, 3, 5], [3, 5, 8]]
    piv = _bareiss_py.forward_eliminate(rows, 3)
    assert piv == [0, 1, 2]
    # last pivot of Bareiss equals the determinant up to sign of the row permutation
    assert abs(rows[2][2]) == abs(sp.Matrix([[2, 4, 6], [1, 3, 5], [3, 5, 8]]).det())
    assert all(isinstance(v, int) for row in rows for v in row)


def test_pivot_choice_prefers_small_entries():
    rows = [[1000, 1], [1, 0]]
    _bareiss_py.forward_eliminate(rows, 2)
    assert rows[0] == [1, 0]


def test_empty_shapes():
    z = ExactMatrix.zeros(0, 3)
    assert linalg.rank(z) == 0
    assert len(linalg.nullspace(z)) == 3
    assert linalg.nullspace(ExactMatrix.zeros(2, 0)) == []


def test_inverse():
    M = ExactMatrix.from_rows([[1, F(-1, 2)], [1, 0]])
    inv = linalg.inverse(M)
    assert inv.entries == ((0, 1), (-2, 2))
    assert (inv @ M) == ExactMatrix.identity(2)
    with pytest.raises(ValueError):
        linalg.inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))


def test_block_split_finds_components():
    rows = [[1, 0, 2, 0], [0, 3, 0, 0], [4, 0, 0, 0]]
    blocks = linalg._blocks(rows, 4)
    assert blocks == [([0, 2], [0, 2]), ([1], [1]), ([], [3])]
