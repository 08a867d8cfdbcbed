"""Acceptance gate: one test per criterion, at the stated tolerances and
runtime budgets.  Each test asserts its budget; the terminal summary
prints one pass/fail line per criterion."""

import cmath
import itertools
import json
import math
import random
import time
from fractions import Fraction

import pytest

from sp21kit import cli
from sp21kit.classify import pair_case, pair_case_oracle, qiq_closed_forms
from sp21kit.decision import CERTIFIED_LABELS, decide, lemma32_solve, mixed_products
from sp21kit.errors import SingularSystem
from sp21kit.fixtures import (CASE_TAGS, FixtureSpec, falsify_lemma31,
                              make_case32_matrix, make_fixture,
                              make_g_zero_generator)
from sp21kit.kleinian import (GeneratorSet, LoxodromicData, jpart_tr_power4,
                              loxodromic_extract)
from sp21kit.linalg import (QMat3, diag, identity, is_sp21, mat_mul, mat_norm,
                            numeric_inverse, random_sp21, sp_inverse,
                            structure_identities, trace)
from sp21kit.quat import I, Quat, from_complex, inv, jk_residual


def test_criterion_1_sp21_algebra():
    start = time.time()
    for seed in range(1000):
        A = random_sp21(seed)
        ok, residual = is_sp21(A)
        assert ok and residual <= 1e-10
        assert mat_norm(sp_inverse(A) - numeric_inverse(A)) <= 1e-9
        assert max(structure_identities(A)) <= 1e-9
    assert time.time() - start < 5.0


def test_criterion_2_pair_classifier_vs_oracle():
    start = time.time()
    values = (-1, 0, 1)
    grid = [Quat(*c) for c in itertools.product(values, repeat=4)
            if any(c)]
    checked = 0
    for a in grid:
        for b in grid:
            exact = pair_case_oracle(a, b)
            approx = pair_case(Quat(*(float(v) for v in (a.w, a.x, a.y, a.z))),
                               Quat(*(float(v) for v in (b.w, b.x, b.y, b.z))))
            assert approx.label == exact.label, (a, b)
            assert approx.satisfied_flags == exact.satisfied_flags, (a, b)
            checked += 1
    assert checked == 80 * 80

    rng = random.Random(2024)

    def rq():
        return Fraction(rng.randrange(-6, 7), rng.randrange(1, 7))

    synthesized = 0
    for shape in range(3):
        while_count = 0
        while while_count < 10 ** 4:
            if shape == 0:
                a, b = Quat(rq(), rq()), Quat(rq(), rq())
            elif shape == 1:
                a, b = Quat(0, 0, rq(), rq()), Quat(0, 0, rq(), rq())
            else:
                a = Quat(rq(), rq(), rq(), rq())
                b = a.conj() * rq()
            if a.norm2() == 0 or b.norm2() == 0:
                continue
            while_count += 1
            exact = pair_case_oracle(a, b)
            approx = pair_case(Quat(*(float(v) for v in (a.w, a.x, a.y, a.z))),
                               Quat(*(float(v) for v in (b.w, b.x, b.y, b.z))))
            assert approx.label == exact.label, (a, b)
            assert approx.satisfied_flags == exact.satisfied_flags, (a, b)
            synthesized += 1
    assert synthesized == 3 * 10 ** 4
    assert time.time() - start < 10.0


def test_criterion_3_conjugation_closed_forms():
    rng = random.Random(3)
    for _ in range(10 ** 4):
        q = Quat(*(Fraction(rng.randrange(-9, 10), rng.randrange(1, 10))
                   for _ in range(4)))
        qiq_bar, qbar_iq = qiq_closed_forms(q)
        assert qiq_bar == q * I * q.conj()
        assert qbar_iq == q.conj() * I * q


def _constrained_sample(rng):
    lam = rng.uniform(1.05, 10.0)
    while True:
        m0, m2, m3 = (rng.uniform(-0.3, 0.3) for _ in range(3))
        coef = lam + 1.0 / lam
        n0 = (lam ** 4 + 1) / (lam * (lam ** 2 + 1)) * m0
        n2, n3 = -coef * m2, -coef * m3
        rest_m = 1 - m0 * m0 - m2 * m2 - m3 * m3
        rest_n = 1 - n0 * n0 - n2 * n2 - n3 * n3
        if rest_m > 0 and rest_n > 0:
            mu = Quat(m0, math.sqrt(rest_m), m2, m3)
            nu = Quat(n0, rng.choice([-1, 1]) * math.sqrt(rest_n), n2, n3)
            return lam, mu, nu


def test_criterion_4_trace_power_closed_form_and_falsifier():
    start = time.time()
    rng = random.Random(4)
    for _ in range(10 ** 4):
        lam, mu, nu = _constrained_sample(rng)
        A = diag(mu * lam, nu, mu * (1.0 / lam))
        power = identity()
        for _ in range(4):
            power = mat_mul(power, A)
        direct = float(trace(power).y)
        closed = jpart_tr_power4(lam, mu, nu)
        assert abs(closed - direct) <= 1e-9 * (1.0 + abs(direct))

    report = falsify_lemma31(10 ** 5, seed=41)
    assert report.counterexamples == []
    assert report.converged > 10 ** 4  # the projection genuinely works
    assert time.time() - start < 30.0


def test_criterion_5_diagonal_recovery():
    rng = random.Random(5)
    for _ in range(10 ** 3):
        lam = rng.uniform(1.01, 10.0)
        th = rng.uniform(0.0, 2.0 * math.pi)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        mu = from_complex(cmath.exp(1j * th))
        nu = from_complex(cmath.exp(1j * phi))
        A = diag(mu * lam, nu, mu * (1.0 / lam))
        lox = loxodromic_extract(A)
        targets = [from_complex(complex(rng.gauss(0, 1), rng.gauss(0, 1)))
                   for _ in range(3)]
        a, e, l = targets
        trB = a + e + l
        trAB = mu * lam * a + nu * e + mu * (1.0 / lam) * l
        trAinvB = mu.conj() * (1.0 / lam) * a + nu.conj() * e + mu.conj() * lam * l
        sol = lemma32_solve(trB, trAB, trAinvB, lox)
        assert max(abs(s - t) for s, t in zip(sol, targets)) <= 1e-9

    near_one = LoxodromicData(lam=1.0 + 1e-9,
                              mu=from_complex(cmath.exp(0.4j)),
                              nu=from_complex(cmath.exp(-0.8j)),
                              theta=0.4, phi=-0.8)
    with pytest.raises(SingularSystem):
        lemma32_solve(Quat(3.0), Quat(3.0), Quat(3.0), near_one)


def test_criterion_6_mixed_product_recovery():
    generic = make_fixture(FixtureSpec("C1", seed=6, theta=math.pi / 5))
    lox = loxodromic_extract(generic.loxodromic)
    B1, B2 = generic.others
    for entry in ((1, 1), (2, 2), (3, 3)):
        mp = mixed_products(B1, B2, lox, entry)
        assert not mp.degenerate
        assert max(mp.agreement_residuals.values()) <= 1e-9

    # theta = pi/2 makes phi = -2 theta a multiple of pi: its sine column
    # drops but the plain products survive
    half = make_fixture(FixtureSpec("C1", seed=7, theta=math.pi / 2))
    lox = loxodromic_extract(half.loxodromic)
    mp = mixed_products(half.others[0], half.others[1], lox, (1, 1))
    assert mp.degenerate
    assert abs(mp.recovered["b1d2"] - mp.direct["b1d2"]) <= 1e-9
    assert abs(mp.recovered["c1g2"] - mp.direct["c1g2"]) <= 1e-9

    # theta = 0: both sine columns vanish, reduced 2x2 system
    real_rot = make_fixture(FixtureSpec("C31", seed=8))
    lox = loxodromic_extract(real_rot.loxodromic)
    mp = mixed_products(real_rot.others[0], real_rot.others[1], lox, (1, 1))
    assert mp.degenerate
    assert set(mp.undetermined) == {"b1id2", "c1ig2"}
    assert abs(mp.recovered["b1d2"] - mp.direct["b1d2"]) <= 1e-9
    assert abs(mp.recovered["c1g2"] - mp.direct["c1g2"]) <= 1e-9


EXPECTED_LABEL = {
    "C1": "AllComplex",
    "C2": "MiddleJTwist",
    "C31": "ConjBFrame",
    "BD0_C": "BdZeroComplex",
    "BD0_J": "BdZeroJTwist",
    "BD0_IM": "BdZeroImaginaryC",
}


def test_criterion_7_end_to_end_families(tmp_path, capsys):
    start = time.time()
    for tag in CASE_TAGS:
        path = tmp_path / f"{tag}.json"
        assert cli.main(["fixture", "--case", tag, "--seed", "17",
                         "-o", str(path)]) == 0
        assert cli.main(["decide", str(path)]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["case"] == EXPECTED_LABEL[tag]
        assert max(doc["residuals"].values()) <= 1e-8
        if tag in ("C1", "C2", "C31"):
            conj = doc["certificate"]["sp_conjugator"]
            assert conj is not None
            T = QMat3([[Quat(*q) for q in row] for row in conj])
            ok, _ = is_sp21(T)
            assert ok
            gens, _ = cli.load_group(str(path))
            Tinv = sp_inverse(T)
            for M in gens.all_matrices():
                C = mat_mul(mat_mul(Tinv, M), T)
                worst = max(jk_residual(C.entry(i, k), abs(C.entry(i, k)))
                            for i in range(3) for k in range(3))
                assert worst <= 1e-8
    assert time.time() - start < 20.0


def test_criterion_8_contradiction_branches():
    report = decide(make_case32_matrix(seed=8), audit_max_len=2)
    assert report.case_label == "Inconsistent"
    messages = " ".join(d.get("message", "") for d in report.diagnostics)
    assert "lambda = 1" in messages

    A = diag(Quat(2.0), Quat(1.0), Quat(0.5))
    report = decide(GeneratorSet(A, [make_g_zero_generator(8)]))
    assert report.case_label == "CommonFixedPoint"


def test_criterion_9_negative_controls():
    rng = random.Random(9)
    silent = 0
    total = 0
    for tag in CASE_TAGS:
        gens = make_fixture(FixtureSpec(tag, seed=2))
        for _ in range(100):
            mats = list(gens.all_matrices())
            mi = rng.randrange(len(mats))
            i, k, comp = rng.randrange(3), rng.randrange(3), rng.randrange(4)
            rows = [list(r) for r in mats[mi].rows]
            vals = [rows[i][k].w, rows[i][k].x, rows[i][k].y, rows[i][k].z]
            vals[comp] += 1e-3
            rows[i][k] = Quat(*vals)
            mats[mi] = QMat3(rows)
            report = decide(GeneratorSet(mats[0], mats[1:], list(gens.labels)))
            total += 1
            if report.case_label in CERTIFIED_LABELS:
                silent += 1
    assert total == 600
    assert silent == 0
