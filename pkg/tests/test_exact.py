from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from kgeodetic.exact import (
    MAX_IRREDUCIBILITY_DEGREE, DegreeTooLarge, DimensionMismatch, IntMatrix, IntPolynomial,
    NotMonicNormalizable, char_poly, companion_matrix, find_factor, geometric_sum, is_irreducible_small,
    mat_add, mat_mul, mat_pow, newton_power_sums, two_plus_geometric,
)

SWAP = IntMatrix.of([[0, 1], [1, 0]])
C3 = IntMatrix.of([[0, 1, 0], [0, 0, 1], [1, 0, 0]])

matrices = st.integers(1, 6).flatmap(
    lambda w: st.lists(st.lists(st.integers(-3, 3), min_size=w, max_size=w), min_size=w, max_size=w)
).map(IntMatrix.of)


def test_matrix_examples():
    assert mat_pow(IntMatrix.of([[1]]), 5).tolist() == [[1]]
    assert mat_pow(SWAP, 2) == IntMatrix.identity(2)
    assert mat_mul(mat_mul(C3, C3), C3) == IntMatrix.identity(3)
    assert mat_add(SWAP, IntMatrix.identity(2)).tolist() == [[1, 1], [1, 1]]
    assert mat_pow(SWAP, 0) == IntMatrix.identity(2)
    assert (SWAP - SWAP).is_zero()
    assert SWAP.scale(3)[0, 1] == 3 and C3.trace() == 0


def test_matrix_shape_errors():
    with pytest.raises(DimensionMismatch):
        mat_add(SWAP, C3)
    with pytest.raises(DimensionMismatch):
        mat_mul(SWAP, C3)
    with pytest.raises(ValueError):
        IntMatrix.of([[1, 2]])


def test_block_diagonal_and_print():
    B = IntMatrix.block_diagonal([IntMatrix.of([[2]]), SWAP])
    assert B.tolist() == [[2, 0, 0], [0, 0, 1], [0, 1, 0]]
    assert str(SWAP) == "0 1\n1 0"


def test_geometric_sum_examples():
    assert geometric_sum(IntMatrix.of([[1]]), 5).tolist() == [[6]]
    assert geometric_sum(C3, 2).tolist() == [[1] * 3] * 3
    assert geometric_sum(IntMatrix.zero(3), 3) == IntMatrix.identity(3)


def test_char_poly_examples():
    assert char_poly(IntMatrix.of([[1]])) == IntPolynomial.of(-1, 1)
    assert char_poly(SWAP) == IntPolynomial.of(-1, 0, 1)
    assert char_poly(C3) == IntPolynomial.of(-1, 0, 0, 1)
    assert str(char_poly(C3)) == "-1 + x^3"


def test_polynomial_arithmetic():
    x = IntPolynomial.x()
    p = (x - IntPolynomial.of(1)) * (x - IntPolynomial.of(2))
    assert p == IntPolynomial.of(2, -3, 1)
    assert p(3) == 2 and p.degree == 2 and p.leading == 1
    assert IntPolynomial.of(0, 0).degree == -1
    assert (x + IntPolynomial.of(1)) ** 3 == IntPolynomial.of(1, 3, 3, 1)
    assert IntPolynomial.of(4, 6, 2).content() == 2
    assert str(IntPolynomial.of(2, -3, 1)) == "2 - 3*x + x^2"


def test_companion_matrix_roundtrip():
    for k in range(2, 10):
        p = two_plus_geometric(k)
        assert char_poly(companion_matrix(p)) == p
    with pytest.raises(ValueError):
        companion_matrix(IntPolynomial.of(1, 2))


def test_two_plus_geometric():
    assert two_plus_geometric(3) == IntPolynomial.of(2, 1, 1, 1)


def test_newton_examples():
    assert newton_power_sums(IntPolynomial.of(2, -3, 1), 2) == [3, 5]
    assert newton_power_sums(two_plus_geometric(5), 4) == [-1, -1, -1, -1]
    assert newton_power_sums(two_plus_geometric(5), 5)[4] == -6
    # non-monic general path: 2x - 1 has root 1/2
    assert newton_power_sums(IntPolynomial.of(-1, 2), 3) == [Fraction(1, 2), Fraction(1, 4), Fraction(1, 8)]
    with pytest.raises(NotMonicNormalizable):
        newton_power_sums(IntPolynomial.of(), 2)


@pytest.mark.parametrize("k", range(2, 13))
def test_newton_matches_numeric_roots(k):
    p = two_plus_geometric(k)
    sums = newton_power_sums(p, k)
    mpmath.mp.dps = 50
    roots = mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=200, extraprec=200)
    for ell in range(1, k + 1):
        numeric = sum(r ** ell for r in roots)
        assert abs(numeric.imag) < 1e-30
        assert abs(numeric.real - float(sums[ell - 1])) / abs(float(sums[ell - 1])) < 1e-9


def test_irreducibility_examples():
    assert not is_irreducible_small(IntPolynomial.of(-1, 0, 1))
    assert is_irreducible_small(IntPolynomial.of(2, 1, 1))
    assert is_irreducible_small(two_plus_geometric(5))


@pytest.mark.parametrize("k", range(2, MAX_IRREDUCIBILITY_DEGREE + 1))
def test_two_plus_geometric_irreducible(k):
    p = two_plus_geometric(k)
    assert is_irreducible_small(p)
    assert sympy.Poly(list(reversed(p.coeffs)), sympy.Symbol("x")).is_irreducible


def test_reducible_factor_found():
    x = sympy.Symbol("x")
    a = IntPolynomial.of(2, 1, 1)
    b = IntPolynomial.of(3, 0, 1, 1)
    p = a * b * IntPolynomial.of(1, 1, 0, 1)
    assert not is_irreducible_small(p)
    f = find_factor(p)
    assert f is not None and 0 < f.degree < p.degree
    assert sympy.rem(sympy.Poly(list(reversed(p.coeffs)), x), sympy.Poly(list(reversed(f.coeffs)), x)).is_zero
    # irreducibility is over the rationals, so content is ignored
    assert is_irreducible_small(IntPolynomial.of(2, 4))
    assert not is_irreducible_small(IntPolynomial.of(-2, 0, 2))
    with pytest.raises(DegreeTooLarge):
        is_irreducible_small(IntPolynomial((1,) * 14))


@settings(max_examples=200)
@given(matrices)
def test_char_poly_matches_sympy(M):
    x = sympy.Symbol("x")
    expected = sympy.Matrix(M.tolist()).charpoly(x).all_coeffs()
    assert list(reversed(char_poly(M).coeffs)) == [int(c) for c in expected]


@settings(max_examples=200)
@given(matrices)
def test_cayley_hamilton(M):
    assert char_poly(M).eval_matrix(M).is_zero()


@settings(max_examples=150)
@given(matrices)
def test_traces_are_power_sums(M):
    sums = newton_power_sums(char_poly(M), 4)
    for ell in range(1, 5):
        assert mat_pow(M, ell).trace() == sums[ell - 1]


@settings(max_examples=150)
@given(matrices, st.integers(0, 6))
def test_geometric_sum_identity(M, k):
    eye = IntMatrix.identity(M.w)
    assert (M - eye) @ geometric_sum(M, k) == mat_pow(M, k + 1) - eye
