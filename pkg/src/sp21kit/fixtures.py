"""Generator-set synthesis realizing every case of the classification,
plus the randomized falsifier for the loxodromic trace constraint.

Every recipe solves the membership constraints in closed form, then
re-verifies membership, the eighteen entrywise identities, and the
length-4 trace audit before emitting anything.  Identical specs produce
identical output.
"""

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .errors import InfeasibleSpec
from .kleinian import GeneratorSet, trace_audit
from .linalg import (QMat3, _draw_complex, _draw_real, diag,
                     gram_schmidt_sp21, is_sp21, mat_mul, sp_inverse,
                     structure_identities)
from .quat import DEFAULT_TOL, I, Quat, from_complex

CASE_TAGS = ("C1", "C2", "C31", "BD0_C", "BD0_J", "BD0_IM")

_ENTRY_FLOOR = 5e-2
_MAX_RETRIES = 500


@dataclass(frozen=True)
class FixtureSpec:
    """Recipe selector: case family, rng seed, and loxodromic shape.

    C31 and BD0_IM force theta = 0 (mod pi): their loxodromic rotation
    part must be real (a requirement of the shapes themselves — a real
    diagonal cannot rotate by pi/2).
    """

    case_tag: str
    seed: int = 0
    num_generators: int = 2
    lam: float = 2.0
    theta: Optional[float] = None

    def __post_init__(self):
        if self.case_tag not in CASE_TAGS:
            raise InfeasibleSpec(f"unknown case tag {self.case_tag!r}")
        if not self.lam > 1.0:
            raise InfeasibleSpec("lambda must exceed 1")
        if self.num_generators < 1:
            raise InfeasibleSpec("need at least one generator besides the loxodromic")
        if self.theta is None:
            default = 0.0 if self.case_tag in ("C31", "BD0_IM") else math.pi / 5
            object.__setattr__(self, "theta", default)
        if self.case_tag in ("C31", "BD0_IM"):
            r = self.theta % math.pi
            if min(r, math.pi - r) > 1e-12:
                raise InfeasibleSpec(
                    f"{self.case_tag} requires theta = 0 (mod pi): the rotation "
                    "part of its loxodromic is real")


def _sparse(a, c, e, g, l):
    z = Quat(0)
    return QMat3([[a, z, c], [z, e, z], [g, z, l]])


def _complex_loxodromic(lam, theta, phi):
    mu = cmath.exp(1j * theta)
    return diag(from_complex(lam * mu), from_complex(cmath.exp(1j * phi)),
                from_complex(mu / lam))


def _gated_gram_schmidt(rng, draw, entries):
    for _ in range(_MAX_RETRIES):
        M = gram_schmidt_sp21(rng, draw)
        if min(abs(getattr(M, name)) for name in entries) >= _ENTRY_FLOOR:
            return M
    raise InfeasibleSpec("could not draw a generator clear of the entry floor")


def _generic_unit(rng):
    """Unit quaternion bounded away from C and from C*j."""
    for _ in range(_MAX_RETRIES):
        q = Quat(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = abs(q)
        if n < 1e-3:
            continue
        q = q / n
        if math.hypot(q.w, q.x) >= 0.2 and math.hypot(q.y, q.z) >= 0.2:
            return q
    raise InfeasibleSpec("could not draw a generic unit quaternion")


def _conjugate_all(T, mats, tol=DEFAULT_TOL):
    Tinv = sp_inverse(T, tol)
    return [mat_mul(mat_mul(Tinv, M), T) for M in mats]


def _unit_complex(rng):
    return from_complex(cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi)))


def _bd0_c_generator(rng):
    # a free complex; g = i t a kills Re(conj(a) g); l = i s c kills
    # Re(conj(c) l); c then solves conj(a) l + conj(g) c = 1 exactly.
    for _ in range(_MAX_RETRIES):
        a = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        if not 0.3 <= abs(a) <= 3.0:
            continue
        t = rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.5)
        s = rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.5)
        if abs(s - t) < 0.2:
            continue
        g = 1j * t * a
        c = 1.0 / (1j * (s - t) * a.conjugate())
        l = 1j * s * c
        if min(abs(c), abs(l)) < _ENTRY_FLOOR:
            continue
        return _sparse(from_complex(a), from_complex(c), _unit_complex(rng),
                       from_complex(g), from_complex(l))
    raise InfeasibleSpec("sparse complex recipe kept hitting degenerate draws")


def _bd0_j_generator(rng):
    # c = c_* j and g = g_* j with g_* = (1 - conj(a) l) / conj(c_*),
    # the unique solution of conj(a) l + conj(g) c = 1 for this shape.
    for _ in range(_MAX_RETRIES):
        a = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        l = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        cstar = complex(rng.gauss(0, 1), rng.gauss(0, 1))
        if min(abs(a), abs(l)) < 0.3 or not 0.3 <= abs(cstar) <= 3.0:
            continue
        gstar = (1.0 - a.conjugate() * l) / cstar.conjugate()
        if abs(gstar) < _ENTRY_FLOOR:
            continue
        return _sparse(from_complex(a), from_complex(0, cstar),
                       _unit_complex(rng), from_complex(0, gstar),
                       from_complex(l))
    raise InfeasibleSpec("sparse j-twist recipe kept hitting degenerate draws")


def _bd0_im_generator(rng, direction):
    # a, l real, c along the shared imaginary direction, g = r conj(c)
    # with r = (l a - 1)/|c|^2 solving conj(a) l + conj(g) c = 1.
    for _ in range(_MAX_RETRIES):
        a = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
        l = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
        c = direction * rng.uniform(0.5, 2.0)
        r = (l * a - 1.0) / float(c.norm2())
        if abs(r) < _ENTRY_FLOOR:
            continue
        return _sparse(Quat(a), c, _unit_complex(rng), c.conj() * r, Quat(l))
    raise InfeasibleSpec("imaginary-c recipe kept hitting degenerate draws")


def _build(spec, rng):
    lam, theta, n = spec.lam, spec.theta, spec.num_generators
    if spec.case_tag == "C1":
        A = _complex_loxodromic(lam, theta, -2.0 * theta)
        others = [_gated_gram_schmidt(rng, _draw_complex, ("b", "c", "d", "g"))
                  for _ in range(n)]
        return GeneratorSet(A, others)
    if spec.case_tag == "C2":
        A = _complex_loxodromic(lam, theta, -2.0 * theta)
        others = [_gated_gram_schmidt(rng, _draw_complex, ("b", "c", "d", "g"))
                  for _ in range(n)]
        T = diag(Quat(1), Quat(0, 0, 1), Quat(1))
        mats = _conjugate_all(T, [A] + others)
        return GeneratorSet(mats[0], mats[1:])
    if spec.case_tag == "C31":
        mu = 1.0 if math.cos(theta) > 0 else -1.0
        eps = rng.choice([-1.0, 1.0])
        A = diag(Quat(lam * mu), Quat(eps), Quat(mu / lam))
        others = [_gated_gram_schmidt(rng, _draw_real,
                                      ("b", "c", "d", "f", "g", "h"))
                  for _ in range(n)]
        T = diag(Quat(1), _generic_unit(rng), Quat(1))
        mats = _conjugate_all(T, [A] + others)
        return GeneratorSet(mats[0], mats[1:])
    if spec.case_tag == "BD0_C":
        A = _complex_loxodromic(lam, theta, -2.0 * theta)
        return GeneratorSet(A, [_bd0_c_generator(rng) for _ in range(n)])
    if spec.case_tag == "BD0_J":
        A = _complex_loxodromic(lam, theta, -2.0 * theta)
        return GeneratorSet(A, [_bd0_j_generator(rng) for _ in range(n)])
    # BD0_IM: real rotation part, generic middle angle, one shared
    # imaginary direction for every c entry
    mu_angle = 0.0 if math.cos(theta) > 0 else math.pi
    A = _complex_loxodromic(lam, mu_angle, rng.uniform(0.0, 2.0 * math.pi))
    u = _generic_unit(rng)
    direction = u * I * u.conj()  # generic unit imaginary direction
    if abs(direction.x) < 0.1 or math.hypot(direction.y, direction.z) < 0.1:
        direction = Quat(0, 0.6, 0.64, 0.48)
    return GeneratorSet(A, [_bd0_im_generator(rng, direction) for _ in range(n)])


def _emission_gate(gens, tol=DEFAULT_TOL):
    for M in gens.all_matrices():
        ok, residual = is_sp21(M, tol)
        if not ok or residual > 1e-10:
            return False
        if max(structure_identities(M)) > 1e-9:
            return False
    return trace_audit(gens, 4, tol).passed


def make_fixture(spec):
    """Synthesize a generator set realizing the requested case family."""
    rng = random.Random(f"{spec.case_tag}/{spec.seed}")
    for _ in range(20):
        gens = _build(spec, rng)
        if _emission_gate(gens):
            return gens
    raise InfeasibleSpec(f"no emittable generator set for {spec.case_tag} "
                         f"seed {spec.seed}")


def make_case32_matrix(seed=0, lam=2.0):
    """A symplectic matrix of the purely-imaginary-c contradiction shape
    [a b c; r1 conj(b) e -conj(b); r1^2 c -r1 b a], paired with a real
    diagonal loxodromic.

    Closed-form recipe for unit b with w = b i conj(b):
    r1 = -2 a1 (a1 + s w_x), Re(a) = Re(e) = sqrt(1 + 2 r1 - s^2),
    Im(e) = s i, c = (a1 i + s w)/r1.  Words of length 3 already have
    non-complex traces for this shape (the contradiction at work), so
    audits should run at length 2.
    """
    rng = random.Random(f"case32/{seed}")
    for _ in range(_MAX_RETRIES):
        b = _generic_unit(rng)
        w = b * I * b.conj()
        a1 = rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 0.35)
        s = rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 0.5)
        r1 = -2.0 * a1 * (a1 + s * float(w.x))
        disc = 1.0 + 2.0 * r1 - s * s
        if abs(r1) < 0.02 or disc < 0.05:
            continue
        a0 = math.sqrt(disc)
        a = Quat(a0, a1)
        e = Quat(a0, s)
        c = (Quat(0, a1) + w * s) / r1
        if math.hypot(float(c.y), float(c.z)) < _ENTRY_FLOOR or abs(c) < _ENTRY_FLOOR:
            continue
        B = QMat3([[a, b, c],
                   [b.conj() * r1, e, -b.conj()],
                   [c * (r1 * r1), -(b * r1), a]])
        ok, residual = is_sp21(B)
        if not ok or residual > 1e-10:
            continue
        A = diag(Quat(lam), Quat(1), Quat(1.0 / lam))
        return GeneratorSet(A, [B])
    raise InfeasibleSpec("contradiction-shape recipe exhausted its retries")


def make_g_zero_generator(seed=0):
    """A symplectic generator with g = 0 (hence d = f = b = 0): it fixes
    the point at infinity, sharing it with any diagonal loxodromic."""
    rng = random.Random(f"gzero/{seed}")
    a = complex(rng.gauss(0, 1), rng.gauss(0, 1))
    while abs(a) < 0.3:
        a = complex(rng.gauss(0, 1), rng.gauss(0, 1))
    l = 1.0 / a.conjugate()
    # Re(conj(l) c) = 0: take c = i t l
    c = 1j * rng.uniform(0.5, 2.0) * l
    return _sparse(from_complex(a), from_complex(c), _unit_complex(rng),
                   Quat(0), from_complex(l))


# ---------------------------------------------------------------------------
# randomized falsifier


@dataclass
class FalsificationReport:
    trials: int
    converged: int
    counterexamples: List[dict] = field(default_factory=list)
    rejected_candidates: List[dict] = field(default_factory=list)
    max_residual_converged: float = 0.0


def _qmul_rows(p, q):
    """Row-wise Hamilton product of (N, 4) arrays."""
    w = p[:, 0] * q[:, 0] - p[:, 1] * q[:, 1] - p[:, 2] * q[:, 2] - p[:, 3] * q[:, 3]
    x = p[:, 0] * q[:, 1] + p[:, 1] * q[:, 0] + p[:, 2] * q[:, 3] - p[:, 3] * q[:, 2]
    y = p[:, 0] * q[:, 2] - p[:, 1] * q[:, 3] + p[:, 2] * q[:, 0] + p[:, 3] * q[:, 1]
    z = p[:, 0] * q[:, 3] + p[:, 1] * q[:, 2] - p[:, 2] * q[:, 1] + p[:, 3] * q[:, 0]
    return np.stack([w, x, y, z], axis=1)


def _constraint_residuals(lam, mu, nu):
    """(N, 10): j/k parts of tr(A^n), n = 1..4, plus the two unit norms,
    for A = diag(lam mu, nu, mu/lam)."""
    cols = []
    mup, nup = mu, nu
    for n in range(1, 5):
        if n > 1:
            mup = _qmul_rows(mup, mu)
            nup = _qmul_rows(nup, nu)
        coef = (lam ** n + lam ** (-n))[:, None]
        t = coef * mup + nup
        cols.append(t[:, 2])
        cols.append(t[:, 3])
    cols.append(np.sum(mu * mu, axis=1) - 1.0)
    cols.append(np.sum(nu * nu, axis=1) - 1.0)
    return np.stack(cols, axis=1)


def _project(lam, x, max_iter=40, fd_eps=1e-7, damping=1e-10):
    """Gauss-Newton projection of x = (mu, nu) onto the constraint set."""
    for _ in range(max_iter):
        r = _constraint_residuals(lam, x[:, :4], x[:, 4:])
        active = np.max(np.abs(r), axis=1) > 1e-13
        if not active.any():
            break
        xa, la, ra = x[active], lam[active], r[active]
        J = np.empty((xa.shape[0], r.shape[1], 8))
        for k in range(8):
            xp = xa.copy()
            xp[:, k] += fd_eps
            J[:, :, k] = (_constraint_residuals(la, xp[:, :4], xp[:, 4:]) - ra) / fd_eps
        Jt = J.transpose(0, 2, 1)
        JtJ = Jt @ J + damping * np.eye(8)
        step = np.linalg.solve(JtJ, Jt @ ra[:, :, None])[:, :, 0]
        x[active] -= np.clip(step, -0.5, 0.5)
    return x, _constraint_residuals(lam, x[:, :4], x[:, 4:])


def _verify_candidate(lam, mu, nu):
    """Scalar re-check, independent of the vectorized path."""
    mu = Quat(*mu)
    nu = Quat(*nu)
    A = diag(mu * lam, nu, mu * (1.0 / lam))
    residual = max(abs(float(mu.norm2()) - 1.0), abs(float(nu.norm2()) - 1.0))
    power = diag(Quat(1), Quat(1), Quat(1))
    for _ in range(4):
        power = mat_mul(power, A)
        t = power.a + power.e + power.l
        residual = max(residual, math.hypot(float(t.y), float(t.z)))
    mu_jk = math.hypot(float(mu.y), float(mu.z))
    nu_jk = math.hypot(float(nu.y), float(nu.z))
    return residual, max(mu_jk, nu_jk)


def falsify_lemma31(trials, seed=0, tol=DEFAULT_TOL, inject_candidates=None):
    """Search for a diagonal loxodromic with complex power traces but a
    non-complex rotation part.

    Random (lambda, mu, nu) seeds are projected onto the manifold where
    tr(A)..tr(A^4) have j/k parts below 1e-12; any converged sample whose
    mu or nu keeps a j/k part above 1e-6 is a counterexample candidate
    and gets re-verified by independent scalar arithmetic.  The list of
    genuine counterexamples is expected to stay empty.
    """
    if trials > 10 ** 7:
        raise ValueError("trials capped at 1e7")
    rng = np.random.default_rng(seed)
    lam = rng.uniform(1.0 + 1e-6, 10.0, size=trials)
    x = rng.normal(size=(trials, 8))
    x[:, :4] /= np.linalg.norm(x[:, :4], axis=1, keepdims=True)
    x[:, 4:] /= np.linalg.norm(x[:, 4:], axis=1, keepdims=True)

    x, r = _project(lam, x)
    worst = np.max(np.abs(r), axis=1)
    converged = worst <= 1e-12
    jk = np.maximum(np.hypot(x[:, 2], x[:, 3]), np.hypot(x[:, 6], x[:, 7]))
    candidate_idx = np.flatnonzero(converged & (jk > 1e-6))

    pool = [{"lambda": float(lam[i]), "mu": x[i, :4].tolist(),
             "nu": x[i, 4:].tolist(), "injected": False}
            for i in candidate_idx]
    for fake in (inject_candidates or []):
        flam, fmu, fnu = fake
        pool.append({"lambda": float(flam), "mu": list(fmu), "nu": list(fnu),
                     "injected": True})

    report = FalsificationReport(
        trials=trials,
        converged=int(np.count_nonzero(converged)),
        max_residual_converged=float(np.max(worst[converged], initial=0.0)))
    for cand in pool:
        residual, cand_jk = _verify_candidate(cand["lambda"], cand["mu"], cand["nu"])
        cand["constraint_residual"] = residual
        cand["rotation_jk"] = cand_jk
        if residual <= 1e-12 and cand_jk > 1e-6:
            report.counterexamples.append(cand)
        else:
            report.rejected_candidates.append(cand)
    return report
