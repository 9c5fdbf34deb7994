from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from balres.errors import NullSpaceMismatch, SingularMatrixError
from balres.matrix import (
    BlockMatrix,
    RMatrix,
    block_all_ones,
    block_ones,
    det,
    format_rational,
    invert,
    is_positive_definite,
    is_psd_via_quadratic_form,
    is_row_diag_dominant,
    is_symmetric_pd,
    max_violation,
    pinv_laplacian_like,
    rank,
    rational,
    solve,
    symmetric_part,
)

from . import oracles

small_rationals = st.fractions(min_value=-6, max_value=6, max_denominator=5)


def square(n_min=1, n_max=4):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(RMatrix)


def test_rational_parsing():
    assert rational("3/6") == Fraction(1, 2)
    assert rational(-4) == -4
    assert format_rational(rational("-10/4")) == "-5/2"
    assert format_rational(rational(7)) == "7"
    with pytest.raises(TypeError):
        rational(0.5)
    with pytest.raises(TypeError):
        rational(True)


def test_arithmetic_and_shape_errors():
    a = RMatrix([[1, 2], [3, 4]])
    b = RMatrix([[0, 1], [1, 0]])
    assert (a @ b) == RMatrix([[2, 1], [4, 3]])
    assert (a + b) - b == a
    assert a * 2 == RMatrix([[2, 4], [6, 8]])
    assert a / 2 == RMatrix([["1/2", 1], ["3/2", 2]])
    assert a.T == RMatrix([[1, 3], [2, 4]])
    with pytest.raises(ValueError):
        a + RMatrix([[1, 2, 3]])
    with pytest.raises(ValueError):
        a @ RMatrix([[1, 2, 3]])


def test_pretty_uses_common_denominator():
    m = RMatrix([["1/2", "-1/3"], [0, 1]])
    assert m.pretty().splitlines()[0] == "(1/6) *"
    assert m.pretty().splitlines()[1].split() == ["3", "-2"]


def test_blocks():
    m = BlockMatrix(RMatrix.identity(4), 2)
    assert m.n == 2 and m.s == 2
    assert m.block(0, 1) == RMatrix.zeros(2)
    assert m.diagonal_blocks() == [RMatrix.identity(2)] * 2
    assert block_ones(3, 2) @ block_ones(3, 2).T == block_all_ones(3, 2)
    with pytest.raises(ValueError):
        BlockMatrix(RMatrix.identity(3), 2)


def test_invert_singular_reports_column():
    with pytest.raises(SingularMatrixError) as info:
        invert(RMatrix([[1, 2], [2, 4]]))
    assert info.value.column == 1


def test_invert_needs_row_swap():
    m = RMatrix([[0, 1], [1, 0]])
    assert invert(m) == m


@given(square())
def test_invert_matches_sympy(m):
    d = oracles.perm_det(oracles.to_fractions(m))
    assert det(m) == d
    if d == 0:
        with pytest.raises(SingularMatrixError):
            invert(m)
        assert rank(m) < m.rows
    else:
        assert invert(m).tolist() == oracles.sympy_inverse(m)
        assert rank(m) == m.rows


@given(square(1, 3))
def test_solve(m):
    if det(m) != 0:
        rhs = RMatrix([[1] for _ in range(m.rows)])
        assert m @ solve(m, rhs) == rhs


@given(square(1, 5))
def test_psd_matches_minor_oracle(m):
    assert is_psd_via_quadratic_form(m) == oracles.psd_by_minors(m)


@given(square(1, 4))
def test_gram_matrices_are_psd(m):
    g = m.T @ m
    assert is_psd_via_quadratic_form(g)
    assert is_positive_definite(g) == (det(m) != 0)


@given(square(1, 5))
def test_symmetric_pd_matches_sylvester_oracle(m):
    assert is_symmetric_pd(m) == oracles.pd_by_leading_minors(m)
    sym = symmetric_part(m)
    assert is_symmetric_pd(sym) == oracles.pd_by_leading_minors(sym)


def test_positive_definite_nonsymmetric():
    # symmetric part is I; skew part irrelevant
    assert is_positive_definite(RMatrix([[1, 5], [-5, 1]]))
    assert not is_symmetric_pd(RMatrix([[1, 5], [-5, 1]]))
    assert not is_positive_definite(RMatrix([[1, 2], [2, 1]]))


def test_row_diag_dominance():
    assert is_row_diag_dominant(RMatrix([[2, -1, -1], [0, 1, -1], [-1, 0, 1]]))
    assert not is_row_diag_dominant(RMatrix([[1, 2], [0, 1]]))


def test_max_violation():
    a = RMatrix([[1, 2], [3, 4]])
    assert max_violation(a, a) is None
    i, j, x, y = max_violation(a, RMatrix([[1, 2], [3, 9]]))
    assert (i, j, x, y) == (1, 1, 4, 9)


def _laplacian_like(n):
    # directed cycle 0 -> 1 -> ... -> 0, scalar
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1
        rows[i][(i + 1) % n] = -1
    return BlockMatrix(RMatrix(rows), 1)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_pinv_matches_sympy(n):
    a = _laplacian_like(n)
    assert pinv_laplacian_like(a).tolist() == oracles.sympy_pinv(a)


def test_pinv_of_unit_three_cycle():
    a = _laplacian_like(3)
    assert pinv_laplacian_like(a) == a.T / 3


def test_pinv_rejects_wrong_null_space():
    with pytest.raises(NullSpaceMismatch):
        pinv_laplacian_like(BlockMatrix(RMatrix([[1, 0], [0, 1]]), 1))
    # rows and columns sum to zero but the graph is disconnected
    two_pairs = RMatrix([[1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1]])
    with pytest.raises(SingularMatrixError):
        pinv_laplacian_like(BlockMatrix(two_pairs, 1))


def test_small_inverse_examples():
    assert invert(RMatrix.identity(3)) == RMatrix.identity(3)
    assert invert(RMatrix([[2, -3], [-3, 5]])) == RMatrix([[5, 3], [3, 2]])
    with pytest.raises(SingularMatrixError):
        invert(RMatrix([[1, 1], [2, 2]]))


def test_definiteness_examples():
    assert is_symmetric_pd(RMatrix([[3, -4], [-4, 7]]) / 5)
    assert is_symmetric_pd(RMatrix.identity(2))
    assert not is_symmetric_pd(RMatrix([[1, 2], [2, 1]]))
    assert not is_symmetric_pd(RMatrix([[1, 0, 0], [0, 1, 0]]))
    assert is_psd_via_quadratic_form(RMatrix.zeros(3))
    assert not is_psd_via_quadratic_form(RMatrix([[0, 1], [-3, 0]]))
    assert is_row_diag_dominant(RMatrix([[2, -1], [-1, 2]]))
    assert not is_row_diag_dominant(RMatrix([[1, -2], [0, 1]]))


@given(square(1, 5))
def test_pd_implies_psd(m):
    if is_symmetric_pd(m):
        assert is_psd_via_quadratic_form(m)


@given(square(1, 5))
def test_inverse_of_row_dominant_matrix(m):
    # |b_ii| >= |b_ji| for B = m^-1 whenever m is row diagonally dominant
    if is_row_diag_dominant(m) and det(m) != 0:
        b = invert(m)
        for i in range(m.rows):
            for j in range(m.rows):
                assert abs(b[i, i]) >= abs(b[j, i])


def test_singleton_pinv():
    assert pinv_laplacian_like(BlockMatrix(RMatrix.zeros(1), 1)).is_zero()
