"""Group words, trace audits, and the diagonal loxodromic normal form."""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import (CapExceeded, ConstraintViolated, NotDiagonal,
                     NotLoxodromic, NotSymplectic)
from .linalg import QMat3, diag, identity, is_sp21, mat_mul, mat_norm, sp_inverse, trace
from .quat import DEFAULT_TOL, Quat, inv, is_complex, jk_residual

WORD_LEN_CAP = 6
WORD_BUDGET = 10 ** 5


@dataclass
class GeneratorSet:
    """A distinguished diagonal loxodromic plus the remaining generators.

    Validation is on demand (`validate`), not at construction: the
    decision procedure must be able to ingest corrupted inputs and
    report them rather than refuse them.
    """

    loxodromic: QMat3
    others: List[QMat3] = field(default_factory=list)
    labels: Optional[List[str]] = None

    def __post_init__(self):
        if self.labels is None:
            self.labels = ["A"] + [f"B{i + 1}" for i in range(len(self.others))]
        if len(self.labels) != 1 + len(self.others):
            raise ValueError("labels must cover the loxodromic and every generator")

    def all_matrices(self):
        return [self.loxodromic] + list(self.others)

    def validate(self, tol=DEFAULT_TOL):
        """Max Sp(2,1) residual and the loxodromic off-diagonal residual."""
        worst = 0.0
        worst_label = None
        for M, label in zip(self.all_matrices(), self.labels):
            _, residual = is_sp21(M, tol)
            if residual > worst:
                worst, worst_label = residual, label
        off = max(abs(self.loxodromic.entry(i, k))
                  for i in range(3) for k in range(3) if i != k)
        return worst, worst_label, off


@dataclass
class LoxodromicData:
    lam: float
    mu: Quat
    nu: Quat
    theta: Optional[float] = None
    phi: Optional[float] = None
    normalized: bool = False


@dataclass(frozen=True)
class Word:
    """Freely reduced word: letters are (generator index, exponent +-1)."""

    letters: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        for (i1, e1), (i2, e2) in zip(self.letters, self.letters[1:]):
            if i1 == i2 and e1 == -e2:
                raise ValueError("word is not freely reduced")

    def __len__(self):
        return len(self.letters)

    def format(self, labels):
        out = []
        for idx, exp in self.letters:
            name = labels[idx]
            out.append(name if exp == 1 else f"{name}^-1")
        return " ".join(out)


@dataclass
class TraceAuditReport:
    max_jk_residual: float
    worst_word: Optional[Word]
    words_checked: int
    passed: bool


def loxodromic_extract(A, tol=DEFAULT_TOL):
    """Read (lambda, mu, nu) off a diagonal loxodromic diag(lambda mu, nu, mu/lambda)."""
    scale = 1.0 + mat_norm(A)
    off = max(abs(A.entry(i, k)) for i in range(3) for k in range(3) if i != k)
    if off > tol.threshold(scale):
        raise NotDiagonal(f"off-diagonal magnitude {off:.3e}")
    ok, residual = is_sp21(A, tol)
    if not ok:
        raise NotSymplectic(f"A*JA - J residual {residual:.3e}")
    lam = abs(A.a)
    if lam <= 1.0 + tol.abs_tol:
        raise NotLoxodromic(f"|a11| = {lam} not > 1")
    mu = A.a / lam
    nu = A.e
    # Sp(2,1) forces conj(a11) a33 = 1 and |a22| = 1; double-check.
    thr = tol.threshold(scale)
    if abs(A.a.conj() * A.l - Quat(1)) > thr or abs(abs(nu) - 1.0) > thr:
        raise NotSymplectic("diagonal entries violate the form constraints")
    theta = math.atan2(float(mu.x), float(mu.w)) % (2 * math.pi) \
        if is_complex(mu, tol) else None
    phi = math.atan2(float(nu.x), float(nu.w)) % (2 * math.pi) \
        if is_complex(nu, tol) else None
    mu_inv2 = inv(mu * mu)
    normalized = abs(nu - mu_inv2) <= tol.threshold(1.0)
    return LoxodromicData(lam=lam, mu=mu, nu=nu, theta=theta, phi=phi,
                          normalized=normalized)


def reassemble_loxodromic(lox):
    return diag(lox.mu * lox.lam, lox.nu, lox.mu * (1.0 / lox.lam))


def lemma31_check(A, tol=DEFAULT_TOL):
    """Complex traces of A..A^4 force complex (mu, nu) for a diagonal loxodromic.

    Returns (hypothesis holds, conclusion holds, witness).
    """
    lox = loxodromic_extract(A, tol)
    power = identity()
    jk = []
    for n in range(1, 5):
        power = mat_mul(power, A)
        t = trace(power)
        jk.append(jk_residual(t, abs(t)))
    thr = tol.threshold(1.0)
    holds = all(r <= thr for r in jk)
    conclusion = is_complex(lox.mu, tol) and is_complex(lox.nu, tol)
    if not holds:
        witness = {"failing_power": 1 + jk.index(next(r for r in jk if r > thr)),
                   "jk_residuals": jk}
    else:
        witness = {"jk_residuals": jk,
                   "mu_jk": jk_residual(lox.mu), "nu_jk": jk_residual(lox.nu)}
    return holds, conclusion, witness


def jpart_tr_power4(lam, mu, nu, tol=DEFAULT_TOL):
    """Closed form for the j-part of tr(A^4), A = diag(lambda mu, nu, mu/lambda).

    Valid on the constraint manifold: |mu| = |nu| = 1 and
    nu = (lam^4+1)/(lam (lam^2+1)) mu0 + nu1 i - (lam + 1/lam)(mu2 j + mu3 k).
    """
    if lam <= 1.0:
        raise ConstraintViolated("lambda must exceed 1")
    thr = tol.threshold(1.0) + 1e-9
    if abs(abs(mu) - 1.0) > thr or abs(abs(nu) - 1.0) > thr:
        raise ConstraintViolated("mu and nu must be unit quaternions")
    nu0_expected = (lam ** 4 + 1) / (lam * (lam ** 2 + 1)) * float(mu.w)
    coef = lam + 1.0 / lam
    if (abs(float(nu.w) - nu0_expected) > thr
            or abs(float(nu.y) + coef * float(mu.y)) > thr
            or abs(float(nu.z) + coef * float(mu.z)) > thr):
        raise ConstraintViolated("nu does not satisfy the constraint rewriting")
    mu0, mu2 = float(mu.w), float(mu.y)
    return (4 * mu0 * mu2 * (lam ** 2 - 1) * (lam ** 6 - 1)
            * (4 * lam ** 2 * mu0 ** 2 - (lam ** 2 + 1) ** 2)
            / (lam ** 4 * (lam ** 2 + 1) ** 2))


def enumerate_words(num_gens, max_len, budget=WORD_BUDGET, cap=WORD_LEN_CAP):
    """All freely reduced words of length 1..max_len, shortlex order.

    The alphabet is g1, g1^-1, g2, g2^-1, ... in that (shortlex) order.
    """
    if max_len > cap:
        raise CapExceeded(f"max_len {max_len} exceeds cap {cap}; raise the budget explicitly")
    alphabet = [(i, e) for i in range(num_gens) for e in (1, -1)]
    words = []
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for prefix in frontier:
            for letter in alphabet:
                if prefix and prefix[-1][0] == letter[0] and prefix[-1][1] == -letter[1]:
                    continue
                w = prefix + (letter,)
                nxt.append(w)
                if len(words) + len(nxt) > budget:
                    raise CapExceeded(f"word budget {budget} exceeded")
        words.extend(nxt)
        frontier = nxt
    return [Word(w) for w in words]


def word_eval(gens, word, tol=DEFAULT_TOL):
    """Left-to-right product; inverse letters use the closed-form inverse."""
    mats = gens.all_matrices()
    result = identity()
    for idx, exp in word.letters:
        M = mats[idx] if exp == 1 else sp_inverse(mats[idx], tol)
        result = mat_mul(result, M)
    return result


def trace_audit(gens, max_len=4, tol=DEFAULT_TOL, budget=WORD_BUDGET):
    """Check complexness of tr(w) over every freely reduced word up to max_len.

    The jk residual of each trace is divided by the product of the
    operand matrix norms so long words are judged on the same scale.
    The result is deterministic: ties in the max residual break toward
    the shortlex-first word.
    """
    mats = gens.all_matrices()
    inverses = [sp_inverse(M, tol) for M in mats]
    norms = [max(1.0, mat_norm(M)) for M in mats]
    inv_norms = [max(1.0, mat_norm(M)) for M in inverses]

    worst = 0.0
    worst_word = None
    count = 0

    # depth-first with incremental products: one matrix multiply per word
    alphabet = [(i, e) for i in range(len(mats)) for e in (1, -1)]

    by_length = {0: [((), identity(), 1.0)]}
    for length in range(1, max_len + 1):
        nxt = []
        for prefix, prod, scale in by_length[length - 1]:
            for idx, exp in alphabet:
                if prefix and prefix[-1][0] == idx and prefix[-1][1] == -exp:
                    continue
                M = mats[idx] if exp == 1 else inverses[idx]
                s = scale * (norms[idx] if exp == 1 else inv_norms[idx])
                w = prefix + ((idx, exp),)
                p = mat_mul(prod, M)
                count += 1
                if count > budget:
                    raise CapExceeded(f"word budget {budget} exceeded")
                t = trace(p)
                residual = jk_residual(t) / s
                if residual > worst:
                    worst = residual
                    worst_word = Word(w)
                nxt.append((w, p, s))
        by_length[length] = nxt
    passed = worst <= tol.threshold(1.0)
    return TraceAuditReport(max_jk_residual=worst, worst_word=worst_word,
                            words_checked=count, passed=passed)
