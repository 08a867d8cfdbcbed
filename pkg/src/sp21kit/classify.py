"""Classification of quaternion pairs with complex products.

For nonzero a, b with ab and ba complex, one of three shapes holds:
(i) both complex, (ii) both in C*j, (iii) b a real multiple of conj(a).
The cases overlap (e.g. a real pair satisfies (i) and (iii)); the label
picks the first satisfied case in the fixed priority I > II > III and
all satisfied flags are reported for diagnostics.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ZeroInput
from .quat import (DEFAULT_TOL, EXACT, I, Quat, is_cj, is_complex)

CASE_I = "CaseI"
CASE_II = "CaseII"
CASE_III = "CaseIII"
HYPOTHESIS_VIOLATED = "HypothesisViolated"


@dataclass
class PairCase:
    label: str
    r: Optional[float] = None
    a_star: Optional[complex] = None
    b_star: Optional[complex] = None
    satisfied_flags: tuple = (False, False, False)


@dataclass
class QiqCase:
    label: str  # "InC" | "InCj" | "HypothesisViolated"


def _case_iii_scale(a, b, tol):
    """r with b = r conj(a), from the single well-conditioned formula Re(ba)/|a|^2."""
    r = float((b * a).w) / float(a.norm2())
    residual = abs(b - a.conj() * r)
    ok = residual <= tol.threshold(1.0 + abs(a) + abs(b)) and abs(r) > tol.abs_tol
    return r, ok


def pair_case(a, b, tol=DEFAULT_TOL):
    if abs(a) <= tol.abs_tol or abs(b) <= tol.abs_tol:
        raise ZeroInput("pair classification requires two nonzero quaternions")
    if not (is_complex(a * b, tol) and is_complex(b * a, tol)):
        return PairCase(HYPOTHESIS_VIOLATED)

    flag_i = is_complex(a, tol) and is_complex(b, tol)
    flag_ii = is_cj(a, tol) and is_cj(b, tol)
    r, flag_iii = _case_iii_scale(a, b, tol)

    flags = (flag_i, flag_ii, flag_iii)
    if flag_i:
        return PairCase(CASE_I, satisfied_flags=flags)
    if flag_ii:
        # a = a_* j  =>  a_* = x - y i ... recover by right-dividing by j:
        # (y j + z k) = (y + z i) j
        return PairCase(CASE_II,
                        a_star=complex(float(a.y), float(a.z)),
                        b_star=complex(float(b.y), float(b.z)),
                        satisfied_flags=flags)
    if flag_iii:
        return PairCase(CASE_III, r=r, satisfied_flags=flags)
    return PairCase(HYPOTHESIS_VIOLATED, satisfied_flags=flags)


def _exact_fraction(v):
    return v if isinstance(v, (int, Fraction)) else Fraction(v)


def pair_case_oracle(a, b):
    """Exact-rational classifier; evaluates the defining predicates with zero tolerance.

    Also evaluates the four bilinear conditions equivalent to ab, ba in C:
    a0 b2 + a2 b0 = 0, a3 b1 - a1 b3 = 0, a0 b3 + a3 b0 = 0, a1 b2 - a2 b1 = 0.
    """
    a = Quat(*(map(_exact_fraction, (a.w, a.x, a.y, a.z))))
    b = Quat(*(map(_exact_fraction, (b.w, b.x, b.y, b.z))))
    if a.norm2() == 0 or b.norm2() == 0:
        raise ZeroInput("oracle requires nonzero quaternions")

    bilinear = (
        a.w * b.y + a.y * b.w,
        a.z * b.x - a.x * b.z,
        a.w * b.z + a.z * b.w,
        a.x * b.y - a.y * b.x,
    )
    if any(v != 0 for v in bilinear):
        return PairCase(HYPOTHESIS_VIOLATED)
    # consistency: the bilinear conditions are exactly complexness of ab and ba
    assert is_complex(a * b, EXACT) and is_complex(b * a, EXACT)

    flag_i = is_complex(a, EXACT) and is_complex(b, EXACT)
    flag_ii = is_cj(a, EXACT) and is_cj(b, EXACT)
    r = Fraction((b * a).w, 1) / a.norm2()
    flag_iii = r != 0 and b == a.conj() * r
    flags = (flag_i, flag_ii, flag_iii)
    if flag_i:
        return PairCase(CASE_I, satisfied_flags=flags)
    if flag_ii:
        return PairCase(CASE_II,
                        a_star=complex(float(a.y), float(a.z)),
                        b_star=complex(float(b.y), float(b.z)),
                        satisfied_flags=flags)
    if flag_iii:
        return PairCase(CASE_III, r=r, satisfied_flags=flags)
    return PairCase(HYPOTHESIS_VIOLATED, satisfied_flags=flags)


def qiq_case(q, tol=DEFAULT_TOL):
    """Classify q from the complexness of q i conj(q) and conj(q) i q."""
    if not (is_complex(q * I * q.conj(), tol) and is_complex(q.conj() * I * q, tol)):
        return QiqCase(HYPOTHESIS_VIOLATED)
    if is_complex(q, tol):
        return QiqCase("InC")
    if is_cj(q, tol):
        return QiqCase("InCj")
    return QiqCase(HYPOTHESIS_VIOLATED)


def qiq_closed_forms(q):
    """Closed-form component expressions for q i conj(q) and conj(q) i q."""
    q0, q1, q2, q3 = q.w, q.x, q.y, q.z
    qiq_bar = Quat(0,
                   q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3,
                   2 * (q0 * q3 + q1 * q2),
                   -2 * (q0 * q2 - q1 * q3))
    qbar_iq = Quat(0,
                   q0 * q0 + q1 * q1 - q2 * q2 - q3 * q3,
                   -2 * (q0 * q3 - q1 * q2),
                   2 * (q0 * q2 + q1 * q3))
    return qiq_bar, qbar_iq
