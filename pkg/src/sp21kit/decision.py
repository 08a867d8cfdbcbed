"""The constructive case split: solvers, contradiction checks, certificates.

`decide` drives the full pipeline over a generator set whose traces are
complex: verify the hypotheses, branch on the shape of the off-diagonal
pair (b, d) (or (c, g) when every generator has b = d = 0), and emit a
frame certificate for the invariant complex family, together with an
Sp(2,1) conjugator whenever the frame is J-unitary.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import classify
from .errors import (NonComplexTraces, ReductionFailed, SingularSystem,
                     Sp21Error, StructureMismatch)
from .kleinian import (loxodromic_extract, lemma31_check,
                       reassemble_loxodromic, trace_audit)
from .linalg import (QMat3, diag, identity, is_sp21, mat_mul, mat_norm,
                     sp_inverse, trace)
from .quat import (DEFAULT_TOL, Quat, from_complex, inv, is_complex,
                   is_pure_imaginary, jk_residual)

# case labels
ALL_COMPLEX = "AllComplex"
MIDDLE_J_TWIST = "MiddleJTwist"
CONJ_B_FRAME = "ConjBFrame"
BD_ZERO_COMPLEX = "BdZeroComplex"
BD_ZERO_J_TWIST = "BdZeroJTwist"
BD_ZERO_IMAGINARY_C = "BdZeroImaginaryC"
INCONSISTENT = "Inconsistent"
HYPOTHESIS_VIOLATED = "HypothesisViolated"
COMMON_FIXED_POINT = "CommonFixedPoint"

CERTIFIED_LABELS = frozenset({
    ALL_COMPLEX, MIDDLE_J_TWIST, CONJ_B_FRAME,
    BD_ZERO_COMPLEX, BD_ZERO_J_TWIST, BD_ZERO_IMAGINARY_C,
})


@dataclass
class FrameCertificate:
    """Unit triple (u1, u2, u3): entry (i,k) of every generator becomes
    complex under q -> inv(u_i) q u_k, certifying invariance of the
    right-C-module family (u1 z1, u2 z2, u3 z3)^t."""

    u1: Quat
    u2: Quat
    u3: Quat
    family: str  # Standard | MiddleTwist | FirstTwist | MiddleScaledByConjB | FirstScaledByImaginaryC
    sp_conjugator: Optional[QMat3] = None

    def units(self):
        return (self.u1, self.u2, self.u3)


@dataclass
class CaseReport:
    case_label: str
    certificate: Optional[FrameCertificate] = None
    residuals: Dict[str, float] = field(default_factory=dict)
    diagnostics: List[dict] = field(default_factory=list)


@dataclass
class Case3Structure:
    r1: float
    r2: float
    b: Quat
    e_real: float
    a: Quat
    c: Quat
    consistency_residuals: Dict[str, float] = field(default_factory=dict)


def lemma32_solve(trB, trAB, trAinvB, lox, tol=DEFAULT_TOL):
    """Recover the diagonal (a, e, l) of B from three word traces.

    The 3x3 system over C acts on each unknown quaternion q = alpha +
    beta j separately on its alpha and beta components (complex scalars
    multiply both complex halves on the left), so two complex solves
    reconstruct the quaternion solutions.  Complex traces force beta ~ 0.
    """
    for name, t in (("tr(B)", trB), ("tr(AB)", trAB), ("tr(A^-1 B)", trAinvB)):
        if not is_complex(t, tol):
            raise NonComplexTraces(f"{name} has jk part {jk_residual(t):.3e}")
    if not (is_complex(lox.mu, tol) and is_complex(lox.nu, tol)):
        raise NonComplexTraces("loxodromic (mu, nu) must be complex")
    mu = lox.mu.complex_part()
    nu = lox.nu.complex_part()
    lam = lox.lam
    M = np.array([
        [1, 1, 1],
        [lam * mu, nu, mu / lam],
        [mu.conjugate() / lam, nu.conjugate(), lam * mu.conjugate()],
    ], dtype=complex)
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > 1e8:
        raise SingularSystem(f"trace system condition estimate {cond:.3e}")
    rhs_alpha = np.array([t.complex_part() for t in (trB, trAB, trAinvB)])
    rhs_beta = np.array([t.jk_part() for t in (trB, trAB, trAinvB)])
    alphas = np.linalg.solve(M, rhs_alpha)
    betas = np.linalg.solve(M, rhs_beta)
    return tuple(from_complex(al, be) for al, be in zip(alphas, betas))


_ENTRY_PRODUCTS = {
    (1, 1): ("b1d2", "b1id2", "c1g2", "c1ig2"),
    (2, 2): ("d1b2", "d1ib2", "f1h2", "f1ih2"),
    (3, 3): ("g1c2", "g1ic2", "h1f2", "h1if2"),
}


@dataclass
class MixedProducts:
    entry: tuple
    recovered: Dict[str, Optional[Quat]]
    direct: Dict[str, Quat]
    degenerate: bool
    undetermined: List[str]
    solve_residual: float
    complexness_residuals: Dict[str, float]
    agreement_residuals: Dict[str, float]


def _direct_products(B1, B2, entry):
    i = Quat(0, 1)
    if entry == (1, 1):
        pairs = (B1.b, B2.d, B1.c, B2.g)
    elif entry == (2, 2):
        pairs = (B1.d, B2.b, B1.f, B2.h)
    elif entry == (3, 3):
        pairs = (B1.g, B2.c, B1.h, B2.f)
    else:
        raise ValueError(f"entry must be a diagonal position, got {entry}")
    u, v, s, t = pairs
    names = _ENTRY_PRODUCTS[entry]
    return {names[0]: u * v, names[1]: u * i * v,
            names[2]: s * t, names[3]: s * i * t}


def mixed_products(B1, B2, lox, entry=(1, 1), tol=DEFAULT_TOL):
    """Recover the cross products (e.g. b1 d2, b1 i d2, c1 g2, c1 i g2)
    from diagonal entries of B1 A^n B2, n = 1..4.

    When the relevant angles are congruent to 0 mod pi the sine columns
    vanish and the reduced system determines only the plain products;
    those drop to the undetermined list.
    """
    if lox.theta is None or lox.phi is None:
        raise NonComplexTraces("loxodromic (mu, nu) must be complex")
    names = _ENTRY_PRODUCTS[entry]
    lam, theta, phi = lox.lam, lox.theta, lox.phi
    i0 = entry[0] - 1

    A = reassemble_loxodromic(lox)
    An = identity()
    rows = []
    rhs = []
    for n in range(1, 5):
        An = mat_mul(An, A)
        direct_entry = mat_mul(mat_mul(B1, An), B2).entry(i0, i0)
        if entry == (1, 1):
            known = (lam ** n) * cmath.exp(1j * n * theta) \
                * B1.a.complex_part() * B2.a.complex_part()
            row = [math.cos(n * phi), math.sin(n * phi),
                   lam ** -n * math.cos(n * theta), lam ** -n * math.sin(n * theta)]
        elif entry == (2, 2):
            known = cmath.exp(1j * n * phi) \
                * B1.e.complex_part() * B2.e.complex_part()
            row = [lam ** n * math.cos(n * theta), lam ** n * math.sin(n * theta),
                   lam ** -n * math.cos(n * theta), lam ** -n * math.sin(n * theta)]
        else:
            known = (lam ** -n) * cmath.exp(1j * n * theta) \
                * B1.l.complex_part() * B2.l.complex_part()
            row = [lam ** n * math.cos(n * theta), lam ** n * math.sin(n * theta),
                   math.cos(n * phi), math.sin(n * phi)]
        rows.append(row)
        rhs.append(direct_entry - from_complex(known))

    M = np.array(rows)
    col_norm = np.max(np.abs(M), axis=0)
    keep = [k for k in range(4) if col_norm[k] > 1e-8]
    undetermined = [names[k] for k in range(4) if k not in keep]
    degenerate = bool(undetermined)
    Msub = M[:, keep]
    svals = np.linalg.svd(Msub, compute_uv=False)
    if svals[-1] <= 1e-8 * svals[0]:
        raise SingularSystem(
            f"mixed-product system singular beyond the degenerate regime "
            f"(sigma ratio {svals[-1] / svals[0]:.3e})")
    rhs_mat = np.array([[q.w, q.x, q.y, q.z] for q in rhs], dtype=float)
    sol, res, _, _ = np.linalg.lstsq(Msub, rhs_mat, rcond=None)
    fit = np.max(np.abs(Msub @ sol - rhs_mat))
    scale = 1.0 + max(mat_norm(B1), mat_norm(B2)) ** 2 * lam ** 4
    if fit > 1e-6 * scale:
        raise SingularSystem(f"mixed-product system inconsistent (residual {fit:.3e})")

    recovered = {name: None for name in names}
    for j, k in enumerate(keep):
        recovered[names[k]] = Quat(*sol[j])

    direct = _direct_products(B1, B2, entry)
    complexness = {}
    agreement = {}
    for name in names:
        q = recovered[name]
        if q is None:
            continue
        complexness[name] = jk_residual(q, abs(q))
        agreement[name] = abs(q - direct[name])
    return MixedProducts(entry=entry, recovered=recovered, direct=direct,
                         degenerate=degenerate, undetermined=undetermined,
                         solve_residual=fit, complexness_residuals=complexness,
                         agreement_residuals=agreement)


def case3_structure(B, tol=DEFAULT_TOL):
    """Extract (r1, r2) and verify the rigid shape
    [a b c; r1 conj(b) e r2 conj(b); r1^2 c r1 r2 b r2^2 a].

    The e-real claim is specific to the c-complex branch; here the
    imaginary part of e is only recorded as a residual.
    """
    b, d, f, h = B.b, B.d, B.f, B.h
    scale = 1.0 + mat_norm(B)
    thr = tol.threshold(scale)
    for name, q in (("b", b), ("d", d), ("f", f), ("h", h)):
        if abs(q) <= thr:
            raise StructureMismatch(f"{name} vanishes", abs(q))
    pc = classify.pair_case(b, d, tol)
    if not pc.satisfied_flags[2]:
        raise StructureMismatch("d = r1 conj(b)")
    r1 = float((d * b).w) / float(b.norm2())
    r2 = float((f * b).w) / float(b.norm2())
    e = B.e
    residuals = {
        "d=r_1 b-bar": abs(d - b.conj() * r1),
        "f=r_2 b-bar": abs(f - b.conj() * r2),
        "h=r_1r_2 b": abs(h - b * (r1 * r2)),
        "r_1r_2=(1-|e|^2)/(2|b|^2)":
            abs(r1 * r2 - (1.0 - float(e.norm2())) / (2.0 * float(b.norm2()))),
        "l=r_2^2 a": abs(B.l - B.a * (r2 * r2)),
        "g=r_1^2 c": abs(B.g - B.c * (r1 * r1)),
    }
    e_imag = math.sqrt(float(e.x) ** 2 + float(e.y) ** 2 + float(e.z) ** 2)
    residuals["e real"] = e_imag
    for relation in ("d=r_1 b-bar", "f=r_2 b-bar", "h=r_1r_2 b",
                     "r_1r_2=(1-|e|^2)/(2|b|^2)", "l=r_2^2 a", "g=r_1^2 c"):
        if residuals[relation] > thr * 1e3:
            raise StructureMismatch(relation, residuals[relation])
    return Case3Structure(r1=r1, r2=r2, b=b, e_real=float(e.w), a=B.a, c=B.c,
                          consistency_residuals=residuals)


def case32_contradiction(B, lox, tol=DEFAULT_TOL, r2_tol=1e-2):
    """The purely-imaginary-c branch always terminates in a contradiction.

    Verifies r2 = -1 through the real part of the (1,3)-entry of B^2
    (equal to |b|^2 (r2+1)^2 / 2 under identity (3)), then exhibits the
    modulus clash of BA: its (1,2)- and (2,3)-entries would have to
    share a modulus, forcing lambda = 1.
    """
    cs = case3_structure(B, tol)
    a, b, c, r1, r2 = cs.a, cs.b, cs.c, cs.r1, cs.r2
    b2 = float(b.norm2())
    entry13_re = 2.0 * float((a * c + Quat(r2 * b2) + c * a * (r2 * r2)).w)
    predicted = b2 * (r2 + 1.0) ** 2
    r2_confirmed = abs(r2 + 1.0) <= r2_tol
    A = reassemble_loxodromic(lox)
    BA = mat_mul(B, A)
    m12 = abs(BA.entry(0, 1))
    m23 = abs(BA.entry(1, 2))
    return {
        "finding": INCONSISTENT,
        "lemma": "bd!=0 case 3.2",
        "r2": r2,
        "r2_confirmed": r2_confirmed,
        "entry13_real_part": entry13_re,
        "entry13_real_part_predicted": predicted,
        "modulus_12": m12,
        "modulus_23": m23,
        "lambda": lox.lam,
        "message": ("shape forces |(BA)_{12}| = |(BA)_{23}|, i.e. "
                    f"|b| = |b|/lambda, which requires lambda = 1; this "
                    f"contradicts lambda = {lox.lam:.6g} > 1, so the "
                    "configuration cannot occur"),
    }


def bd_zero_reduce(B, tol=DEFAULT_TOL):
    """Check b = d = f = h = 0 and return the sparse form (a, c, e, g, l).

    The vanishing of d and h is cross-checked against the entrywise
    identities (6) and (15): with c != 0 they force d and h to zero once
    b and f vanish.
    """
    scale = 1.0 + mat_norm(B)
    thr = tol.threshold(scale) * 1e3
    id6 = abs(B.d * B.c.conj() + B.e * B.b.conj() + B.f * B.a.conj())
    id15 = abs(B.h.conj() * B.c + B.e.conj() * B.f + B.b.conj() * B.l)
    if abs(B.d) > thr:
        raise ReductionFailed("(6)", id6)
    if abs(B.h) > thr:
        raise ReductionFailed("(15)", id15)
    if abs(B.b) > thr or abs(B.f) > thr:
        raise ReductionFailed("(2)", max(abs(B.b), abs(B.f)))
    return {"a": B.a, "c": B.c, "e": B.e, "g": B.g, "l": B.l,
            "identity6_residual": id6, "identity15_residual": id15}


def bd0_theta_check(B, lox, tol=DEFAULT_TOL, angle_tol=1e-6):
    """For the sparse g = r conj(c) branch the rotation angle must be 0 mod pi.

    Otherwise the trace hypothesis forces c i c complex, which the
    qi-conjugation lemma rules out for purely imaginary non-complex c.
    """
    theta = lox.theta
    if theta is None:
        return {"finding": HYPOTHESIS_VIOLATED,
                "message": "loxodromic mu is not complex"}
    residue = min(theta % math.pi, math.pi - (theta % math.pi))
    c = B.c
    if residue <= angle_tol:
        return {"finding": "ThetaOk", "theta": theta, "residue_mod_pi": residue}
    cic = c * Quat(0, 1) * c
    cic_jk = jk_residual(cic, abs(cic))
    return {
        "finding": INCONSISTENT,
        "lemma": "bd=0 theta claim",
        "theta": theta,
        "residue_mod_pi": residue,
        "cic_jk_residual": cic_jk,
        "message": ("theta != 0 (mod pi) would force c i c complex; "
                    f"c i c has jk residual {cic_jk:.3e}, contradicting the "
                    "qi-conjugation lemma for purely imaginary non-complex c"),
    }


def verify_certificate(gens, cert, tol=DEFAULT_TOL):
    """Per-generator max jk residual of the frame-conjugated entries.

    With an Sp(2,1) conjugator present, additionally checks membership
    of the conjugator and entrywise complexness of T^-1 B T (for a
    diagonal frame the two computations coincide; both are run).
    """
    u = cert.units()
    uinv = [inv(q, tol) for q in u]
    out = {}
    for M, label in zip(gens.all_matrices(), gens.labels):
        worst = 0.0
        for i in range(3):
            for k in range(3):
                v = uinv[i] * M.entry(i, k) * u[k]
                worst = max(worst, jk_residual(v, abs(v)))
        out[label] = worst
    if cert.sp_conjugator is not None:
        T = cert.sp_conjugator
        ok, residual = is_sp21(T, tol)
        if not ok:
            raise StructureMismatch("sp_conjugator not in Sp(2,1)", residual)
        Tinv = sp_inverse(T, tol)
        for M, label in zip(gens.all_matrices(), gens.labels):
            C = mat_mul(mat_mul(Tinv, M), T)
            worst = max(jk_residual(C.entry(i, k), abs(C.entry(i, k)))
                        for i in range(3) for k in range(3))
            out[label] = max(out[label], worst)
    return out


def _unit(q):
    return q / abs(q)


def _frame(u1, u2, u3, family, with_conjugator):
    conj = diag(u1, u2, u3) if with_conjugator else None
    return FrameCertificate(u1=u1, u2=u2, u3=u3, family=family, sp_conjugator=conj)


def _certified(gens, label, cert, tol, cert_tol, diagnostics):
    try:
        residuals = verify_certificate(gens, cert, tol)
    except (StructureMismatch, Sp21Error) as exc:
        diagnostics.append({"finding": "CertificateRejected", "message": str(exc)})
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
    worst = max(residuals.values())
    if worst > cert_tol:
        diagnostics.append({"finding": "CertificateRejected",
                            "message": f"frame residual {worst:.3e} exceeds {cert_tol:.1e}"})
        return CaseReport(HYPOTHESIS_VIOLATED, None, residuals, diagnostics)
    return CaseReport(label, cert, residuals, diagnostics)


def _branch_bd_nonzero(gens, B, lox, tol, cert_tol, diagnostics):
    pc = classify.pair_case(B.b, B.d, tol)
    diagnostics.append({"finding": "PairCase", "pair": "(b, d)",
                        "label": pc.label, "flags": list(pc.satisfied_flags)})
    if pc.label == classify.CASE_I:
        for other in gens.others:
            if other is not B:
                try:
                    mp = mixed_products(B, other, lox, (1, 1), tol)
                except Sp21Error as exc:
                    diagnostics.append({"finding": "MixedProductsSkipped",
                                        "message": str(exc)})
                    continue
                diagnostics.append({
                    "finding": "MixedProducts", "entry": [1, 1],
                    "complexness": mp.complexness_residuals,
                    "undetermined": mp.undetermined})
        cert = _frame(Quat(1), Quat(1), Quat(1), "Standard", with_conjugator=True)
        return _certified(gens, ALL_COMPLEX, cert, tol, cert_tol, diagnostics)
    if pc.label == classify.CASE_II:
        cert = _frame(Quat(1), Quat(0, 0, 1), Quat(1), "MiddleTwist",
                      with_conjugator=True)
        return _certified(gens, MIDDLE_J_TWIST, cert, tol, cert_tol, diagnostics)
    if pc.label == classify.CASE_III:
        try:
            cs = case3_structure(B, tol)
        except StructureMismatch as exc:
            diagnostics.append({"finding": "StructureMismatch",
                                "relation": exc.relation, "message": str(exc)})
            return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
        diagnostics.append({"finding": "Case3Structure", "r1": cs.r1, "r2": cs.r2,
                            "residuals": cs.consistency_residuals})
        if is_complex(B.c, tol):
            thr = tol.threshold(1.0 + mat_norm(B)) * 1e3
            if cs.consistency_residuals["e real"] > thr:
                diagnostics.append({"finding": "StructureMismatch",
                                    "relation": "e real",
                                    "message": "c complex requires real e"})
                return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
            u2 = _unit(B.b.conj())
            cert = _frame(Quat(1), u2, Quat(1), "MiddleScaledByConjB",
                          with_conjugator=True)
            return _certified(gens, CONJ_B_FRAME, cert, tol, cert_tol, diagnostics)
        if is_pure_imaginary(B.c, tol):
            diagnostics.append(case32_contradiction(B, lox, tol))
            return CaseReport(INCONSISTENT, None, {}, diagnostics)
        diagnostics.append({"finding": "ShapeViolation",
                            "message": "c is neither complex nor purely imaginary, "
                                       "but cg = r1^2 c^2 must be complex"})
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
    diagnostics.append({"finding": "PairHypothesisViolated", "pair": "(b, d)"})
    return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)


def _branch_bd_zero(gens, lox, tol, cert_tol, diagnostics):
    for B, label in zip(gens.others, gens.labels[1:]):
        try:
            red = bd_zero_reduce(B, tol)
        except ReductionFailed as exc:
            diagnostics.append({"finding": "ReductionFailed", "generator": label,
                                "identity": exc.identity, "message": str(exc)})
            return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
        diagnostics.append({"finding": "SparseReduced", "generator": label,
                            "identity6": red["identity6_residual"],
                            "identity15": red["identity15_residual"]})
    B = gens.others[0]
    pc = classify.pair_case(B.c, B.g, tol)
    diagnostics.append({"finding": "PairCase", "pair": "(c, g)",
                        "label": pc.label, "flags": list(pc.satisfied_flags)})
    if pc.label == classify.CASE_I:
        cert = _frame(Quat(1), Quat(1), Quat(1), "Standard", with_conjugator=True)
        return _certified(gens, BD_ZERO_COMPLEX, cert, tol, cert_tol, diagnostics)
    if pc.label == classify.CASE_II:
        diagnostics.append({"finding": "ConjugatorNotJUnitary",
                            "message": "frame (j, 1, 1) has conj(u1) u3 != 1; "
                                       "family invariance certified without an "
                                       "Sp(2,1) conjugator"})
        cert = _frame(Quat(0, 0, 1), Quat(1), Quat(1), "FirstTwist",
                      with_conjugator=False)
        return _certified(gens, BD_ZERO_J_TWIST, cert, tol, cert_tol, diagnostics)
    if pc.label == classify.CASE_III:
        theta_diag = bd0_theta_check(B, lox, tol)
        diagnostics.append(theta_diag)
        if theta_diag["finding"] == INCONSISTENT:
            return CaseReport(INCONSISTENT, None, {}, diagnostics)
        if theta_diag["finding"] == HYPOTHESIS_VIOLATED:
            return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
        # identity (3) gives Re(ca) = 0, so a is real for imaginary c
        re_ca = abs(float((B.c * B.a).w))
        a_imag = math.sqrt(float(B.a.x) ** 2 + float(B.a.y) ** 2 + float(B.a.z) ** 2)
        thr = tol.threshold(1.0 + mat_norm(B)) * 1e3
        if a_imag > thr:
            diagnostics.append({"finding": "StructureMismatch", "relation": "a real",
                                "message": f"Re(ca) = {re_ca:.3e}, |Im a| = {a_imag:.3e}"})
            return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
        diagnostics.append({"finding": "ConjugatorNotJUnitary",
                            "message": "frame (c/|c|, 1, 1) has conj(u1) u3 != 1; "
                                       "family invariance certified without an "
                                       "Sp(2,1) conjugator"})
        cert = _frame(_unit(B.c), Quat(1), Quat(1), "FirstScaledByImaginaryC",
                      with_conjugator=False)
        return _certified(gens, BD_ZERO_IMAGINARY_C, cert, tol, cert_tol, diagnostics)
    diagnostics.append({"finding": "PairHypothesisViolated", "pair": "(c, g)"})
    return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)


def decide(gens, tol=DEFAULT_TOL, audit_max_len=4, cert_tol=1e-8):
    """Full decision pipeline over a generator set.

    Always returns a CaseReport; hypothesis failures, contradictions and
    shared fixed points are reported as case labels, never raised.
    """
    diagnostics = []

    worst, worst_label, lox_off = gens.validate(tol)
    sp_thr = tol.threshold((1.0 + max(mat_norm(M) for M in gens.all_matrices())) ** 2)
    if worst > sp_thr:
        diagnostics.append({"finding": "NotSymplectic", "generator": worst_label,
                            "residual": worst})
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)

    try:
        lox = loxodromic_extract(gens.loxodromic, tol)
        hyp, concl, witness = lemma31_check(gens.loxodromic, tol)
    except Sp21Error as exc:
        diagnostics.append({"finding": "LoxodromicRejected", "message": str(exc)})
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
    if not hyp:
        diagnostics.append({"finding": "LoxodromicTraceNotComplex", **witness})
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
    if not concl:
        diagnostics.append({"finding": "LoxodromicAnomaly",
                            "message": "complex power traces but non-complex (mu, nu)",
                            **witness})
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)

    audit = trace_audit(gens, audit_max_len, tol)
    diagnostics.append({"finding": "TraceAudit", "passed": audit.passed,
                        "max_jk_residual": audit.max_jk_residual,
                        "worst_word": audit.worst_word.format(gens.labels)
                        if audit.worst_word else None,
                        "words_checked": audit.words_checked})
    if not audit.passed:
        return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)

    if not gens.others:
        cert = _frame(Quat(1), Quat(1), Quat(1), "Standard", with_conjugator=True)
        return _certified(gens, ALL_COMPLEX, cert, tol, cert_tol, diagnostics)

    # step 0: a vanishing c or g entry means a fixed point shared with A
    for B, label in zip(gens.others, gens.labels[1:]):
        thr = tol.threshold(1.0 + mat_norm(B)) * 1e3
        if abs(B.c) <= thr or abs(B.g) <= thr:
            diagnostics.append({
                "finding": COMMON_FIXED_POINT, "generator": label,
                "message": "c = 0 forces f = 0 by identity (12) and the generator "
                           "fixes 0; g = 0 forces d = 0 by (16) and it fixes infinity"})
            return CaseReport(COMMON_FIXED_POINT, None, {}, diagnostics)

    # step 1: complex diagonals, cross-checked through the trace solver
    A = gens.loxodromic
    Ainv = sp_inverse(A, tol)
    for B, label in zip(gens.others, gens.labels[1:]):
        bad = [n for n, q in (("a", B.a), ("e", B.e), ("l", B.l))
               if not is_complex(q, tol)]
        if bad:
            diagnostics.append({"finding": "DiagonalNotComplex",
                                "generator": label, "entries": bad})
            return CaseReport(HYPOTHESIS_VIOLATED, None, {}, diagnostics)
        try:
            sol = lemma32_solve(trace(B), trace(mat_mul(A, B)),
                                trace(mat_mul(Ainv, B)), lox, tol)
            solver_err = max(abs(sol[0] - B.a), abs(sol[1] - B.e), abs(sol[2] - B.l))
            diagnostics.append({"finding": "DiagonalSolved", "generator": label,
                                "solver_residual": solver_err})
        except Sp21Error as exc:
            diagnostics.append({"finding": "DiagonalSolverSkipped",
                                "generator": label, "message": str(exc)})

    # step 2/3: branch on the bd != 0 dichotomy
    def bd_magnitude(B):
        return abs(B.b) * abs(B.d)

    hi = [B for B in gens.others
          if bd_magnitude(B) > 1e3 * tol.abs_tol * (1.0 + mat_norm(B))]
    lo = [B for B in gens.others
          if B not in hi and bd_magnitude(B) > tol.abs_tol * (1.0 + mat_norm(B))]
    if hi:
        return _branch_bd_nonzero(gens, hi[0], lox, tol, cert_tol, diagnostics)
    if lo:
        diagnostics.append({"finding": "BorderlineBranch",
                            "message": "bd magnitude between the soft and hard "
                                       "thresholds; attempting both branches"})
        report = _branch_bd_nonzero(gens, lo[0], lox, tol, cert_tol,
                                    list(diagnostics))
        if report.case_label in CERTIFIED_LABELS:
            return report
        return _branch_bd_zero(gens, lox, tol, cert_tol, diagnostics)
    return _branch_bd_zero(gens, lox, tol, cert_tol, diagnostics)
