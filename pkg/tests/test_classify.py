import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sp21kit.classify import (CASE_I, CASE_II, CASE_III, HYPOTHESIS_VIOLATED,
                              pair_case, pair_case_oracle, qiq_case,
                              qiq_closed_forms)
from sp21kit.errors import ZeroInput
from sp21kit.quat import EXACT, I, J, Quat, is_complex

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=12)
quats = st.builds(Quat, rationals, rationals, rationals, rationals)


def test_case_i_complex_pair():
    r = pair_case(Quat(1.0, 2.0), Quat(-0.5, 3.0))
    assert r.label == CASE_I
    assert r.satisfied_flags[0]


def test_case_ii_cj_pair():
    r = pair_case(Quat(0.0, 0.0, 1.0, 2.0), Quat(0.0, 0.0, -3.0, 1.0))
    assert r.label == CASE_II
    assert r.a_star == 1 + 2j
    assert r.b_star == -3 + 1j


def test_case_iii_real_multiple_of_conjugate():
    a = Quat(1.0, 2.0, 3.0, 4.0)
    b = a.conj() * 2.5
    r = pair_case(a, b)
    assert r.label == CASE_III
    assert abs(r.r - 2.5) < 1e-12


def test_hypothesis_violated():
    r = pair_case(Quat(1.0, 1.0, 1.0, 0.0), Quat(1.0, 0.0, 0.0, 1.0))
    assert r.label == HYPOTHESIS_VIOLATED


def test_zero_input_rejected():
    with pytest.raises(ZeroInput):
        pair_case(Quat(0.0), Quat(1.0))
    with pytest.raises(ZeroInput):
        pair_case_oracle(Quat(1), Quat(0))


def test_overlapping_cases_report_all_flags():
    # a real pair satisfies cases (i) and (iii); priority picks (i)
    r = pair_case_oracle(Quat(2), Quat(3))
    assert r.label == CASE_I
    assert r.satisfied_flags == (True, False, True)


def test_jk_basis_pair_is_case_ii():
    # a = j + k, b = j - k: ab = -2i and ba = 2i are complex, and both
    # factors lie in C*j (they also satisfy no other case shape)
    r = pair_case_oracle(Quat(0, 0, 1, 1), Quat(0, 0, 1, -1))
    assert r.label == CASE_II


@given(quats, quats)
def test_oracle_bilinear_conditions_match_products(a, b):
    if a.norm2() == 0 or b.norm2() == 0:
        return
    r = pair_case_oracle(a, b)
    products_complex = is_complex(a * b, EXACT) and is_complex(b * a, EXACT)
    if not products_complex:
        assert r.label == HYPOTHESIS_VIOLATED and r.satisfied_flags == (False,) * 3


def test_float_agrees_with_oracle_on_random_rationals():
    rng = random.Random(7)
    for _ in range(300):
        shape = rng.randrange(3)
        def rq():
            return Fraction(rng.randrange(-6, 7), rng.randrange(1, 7))
        if shape == 0:
            a, b = Quat(rq(), rq()), Quat(rq(), rq())
        elif shape == 1:
            a, b = Quat(0, 0, rq(), rq()), Quat(0, 0, rq(), rq())
        else:
            a = Quat(rq(), rq(), rq(), rq())
            b = a.conj() * rq()
        if a.norm2() == 0 or b.norm2() == 0:
            continue
        exact = pair_case_oracle(a, b)
        approx = pair_case(Quat(*(float(v) for v in (a.w, a.x, a.y, a.z))),
                           Quat(*(float(v) for v in (b.w, b.x, b.y, b.z))))
        assert approx.label == exact.label
        assert approx.satisfied_flags == exact.satisfied_flags


def test_qiq_case_labels():
    assert qiq_case(Quat(1.0, 2.0)).label == "InC"
    assert qiq_case(Quat(0.0, 0.0, 3.0, -1.0)).label == "InCj"
    assert qiq_case(Quat(1.0, 0.0, 1.0, 0.0)).label == HYPOTHESIS_VIOLATED


@given(quats)
def test_qiq_closed_forms_exact(q):
    qiq_bar, qbar_iq = qiq_closed_forms(q)
    assert qiq_bar == q * I * q.conj()
    assert qbar_iq == q.conj() * I * q
