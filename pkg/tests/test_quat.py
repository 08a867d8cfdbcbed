import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sp21kit.errors import DivisionByNearZero
from sp21kit.quat import (DEFAULT_TOL, EXACT, I, J, K, ONE, Quat, Tolerance,
                          from_complex, inv, is_cj, is_complex,
                          is_pure_imaginary, is_real, jk_residual, parts)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=20)
quats = st.builds(Quat, rationals, rationals, rationals, rationals)


def test_basis_multiplication_table():
    assert I * I == Quat(-1)
    assert J * J == Quat(-1)
    assert K * K == Quat(-1)
    assert I * J == K
    assert J * K == I
    assert K * I == J
    assert J * I == -K


@given(quats, quats, quats)
def test_multiplication_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(quats, quats)
def test_norm_multiplicative(a, b):
    assert (a * b).norm2() == a.norm2() * b.norm2()


@given(quats, quats)
def test_conjugation_antihomomorphism(a, b):
    assert (a * b).conj() == b.conj() * a.conj()


@given(quats)
def test_exact_inverse(q):
    if q.norm2() == 0:
        with pytest.raises(DivisionByNearZero):
            inv(q)
    else:
        assert inv(q) * q == ONE
        assert q * inv(q) == ONE


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        Quat(float("nan"))
    with pytest.raises(ValueError):
        Quat(0.0, float("inf"))


def test_views_and_parts():
    q = Quat(1.0, 2.0, 3.0, 4.0)
    assert q.complex_part() == 1 + 2j
    assert q.jk_part() == 3 + 4j
    assert parts(q) == ((1.0, 2.0), (3.0, 4.0))
    assert from_complex(1 + 2j, 3 + 4j) == q


def test_predicates_default_tolerance():
    assert is_complex(Quat(1.0, 2.0, 1e-12, 0.0))
    assert not is_complex(Quat(1.0, 2.0, 1e-6, 0.0))
    assert is_cj(Quat(0.0, 0.0, 1.0, 2.0))
    assert is_real(Quat(3.0))
    assert is_pure_imaginary(Quat(0.0, 1.0, 1.0, 0.0))


def test_predicates_exact_backend():
    assert is_complex(Quat(1, Fraction(1, 3)), EXACT)
    assert not is_complex(Quat(1, 0, Fraction(1, 10 ** 12)), EXACT)
    q = Quat(Fraction(2, 3), Fraction(-1, 7))
    assert inv(q).is_exact()


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(-1e-9)
    assert Tolerance(0.0, 0.0).threshold(100.0) == 0.0
    assert DEFAULT_TOL.threshold(0.0) == DEFAULT_TOL.abs_tol


def test_jk_residual():
    assert jk_residual(Quat(5.0, 5.0, 3.0, 4.0)) == 5.0
    assert jk_residual(Quat(0.0, 0.0, 3.0, 4.0), scale=9.0) == 0.5


def test_scalar_coercion():
    q = Quat(1.0, 1.0)
    assert q + 1 == Quat(2.0, 1.0)
    assert 2 * q == Quat(2.0, 2.0)
    assert q * 2 == Quat(2.0, 2.0)
    assert (1 - q) == Quat(0.0, -1.0)
    assert q / 2 == Quat(0.5, 0.5)
    assert abs(Quat(3.0, 0.0, 4.0)) == 5.0
