import math
import random

import pytest

from sp21kit.errors import AtInfinity, NonRealSelfInner, NotSymplectic
from sp21kit.linalg import (FORM_J, HoroCoords, QMat3, QVec3, VectorSign,
                            diag, gram_schmidt_sp21, herm_inner, identity,
                            is_sp21, mat_mul, mat_norm, numeric_inverse,
                            projective_normalize, psi, psi_infinity,
                            psi_inverse, random_sp21, sp_inverse,
                            structure_identities, trace, vector_sign)
from sp21kit.quat import Quat, from_complex


def test_form_matrix():
    assert FORM_J.entry(0, 2) == Quat(1)
    assert FORM_J.entry(1, 1) == Quat(1)
    assert FORM_J.entry(0, 0) == Quat(0)


def test_herm_inner_convention():
    p = QVec3(Quat(1), Quat(2), Quat(3))
    q = QVec3(Quat(0, 1), Quat(1), Quat(0))
    # <p,q> = conj(q1) p3 + conj(q2) p2 + conj(q3) p1
    assert herm_inner(p, q) == Quat(0, -1) * Quat(3) + Quat(2)


def test_vector_signs():
    assert vector_sign(psi_infinity()) == VectorSign.NULL
    interior = psi(HoroCoords(zeta=Quat(0), v=Quat(0), u=1.0))
    assert vector_sign(interior) == VectorSign.NEGATIVE
    assert vector_sign(QVec3(Quat(0), Quat(1), Quat(0))) == VectorSign.POSITIVE


def test_psi_round_trip():
    h = HoroCoords(zeta=Quat(0.3, -0.2, 0.5, 0.1), v=Quat(0, 0.7, -0.4, 0.2), u=1.3)
    p = psi(h)
    assert vector_sign(p) == VectorSign.NEGATIVE
    back = psi_inverse(p.right_scale(Quat(0.4, 1.0, -0.3, 0.2)))
    assert abs(back.zeta - h.zeta) < 1e-12
    assert abs(back.v - h.v) < 1e-12
    assert abs(back.u - h.u) < 1e-12


def test_psi_inverse_at_infinity():
    with pytest.raises(AtInfinity):
        psi_inverse(psi_infinity())


def test_self_inner_always_real():
    # conj(<p,q>) = <q,p>, so the self-product is real for every vector
    rng = random.Random(11)
    for _ in range(50):
        p = QVec3(*(Quat(*(rng.gauss(0, 1) for _ in range(4))) for _ in range(3)))
        v = herm_inner(p, p)
        assert math.hypot(float(v.x), math.hypot(float(v.y), float(v.z))) < 1e-12
        vector_sign(p)  # never raises NonRealSelfInner


def test_random_sp21_membership_and_identities():
    for seed in range(25):
        A = random_sp21(seed)
        ok, residual = is_sp21(A)
        assert ok and residual <= 1e-10
        assert max(structure_identities(A)) <= 1e-9


def test_sp_inverse_matches_numeric_inverse():
    for seed in range(10):
        A = random_sp21(seed)
        B1 = sp_inverse(A)
        B2 = numeric_inverse(A)
        assert mat_norm(B1 - B2) <= 1e-9
        assert mat_norm(mat_mul(A, B1) - identity()) <= 1e-9


def test_sp_inverse_rejects_nonmembers():
    with pytest.raises(NotSymplectic):
        sp_inverse(diag(Quat(2), Quat(1), Quat(1)))


def test_gram_schmidt_scalar_subfields():
    from sp21kit.linalg import _draw_complex, _draw_real
    rng = random.Random(3)
    A = gram_schmidt_sp21(rng, _draw_complex)
    assert all(abs(e.y) < 1e-12 and abs(e.z) < 1e-12
               for row in A.rows for e in row)
    B = gram_schmidt_sp21(rng, _draw_real)
    assert all(abs(e.x) < 1e-12 and abs(e.y) < 1e-12 and abs(e.z) < 1e-12
               for row in B.rows for e in row)


def test_trace_and_norm():
    A = diag(Quat(1), Quat(2), Quat(3, 4))
    assert trace(A) == Quat(6, 4)
    assert mat_norm(A) == 5.0


def test_projective_normalize():
    p = QVec3(Quat(2), Quat(4), Quat(0))
    q = projective_normalize(p)
    assert q.p2 == Quat(1)
    with pytest.raises(ValueError):
        projective_normalize(QVec3(Quat(0), Quat(0), Quat(0)))


def test_matrix_protocol():
    A = random_sp21(7)
    B = random_sp21(8)
    assert mat_norm((A @ B) - mat_mul(A, B)) == 0.0
    v = QVec3(Quat(1), Quat(0, 1), Quat(0, 0, 1))
    w = A @ v
    assert isinstance(w, QVec3)
    # right scaling commutes with the action
    s = Quat(0.5, 0.25, -1.0, 0.75)
    u = A @ v.right_scale(s)
    diff = u - w.right_scale(s)
    assert max(abs(q) for q in diff) < 1e-12
