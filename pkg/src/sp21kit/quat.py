"""Quaternion scalar arithmetic.

Two backends share one class: binary64 components for the main numeric
path, and exact ``fractions.Fraction`` (or int) components for oracle
tests.  All operations are component-generic; only the comparison
predicates care which backend is in use, via the tolerance they are
given (EXACT, i.e. zero thresholds, for the rational backend).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

_EXACT_TYPES = (int, Fraction)


class Quat:
    """A quaternion w + x i + y j + z k.

    Components may be float (numeric backend) or int/Fraction (exact
    backend).  NaN/Inf components are rejected at construction so the
    zero-part predicates stay two-valued.
    """

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w=0, x=0, y=0, z=0):
        for c in (w, x, y, z):
            if isinstance(c, float) and not math.isfinite(c):
                raise ValueError(f"non-finite quaternion component: {c!r}")
        self.w = w
        self.x = x
        self.y = y
        self.z = z

    # -- algebra -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Quat(self.w + other.w, self.x + other.x,
                    self.y + other.y, self.z + other.z)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Quat(self.w - other.w, self.x - other.x,
                    self.y - other.y, self.z - other.z)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Quat(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quat):
            a, b = self, other
            return Quat(
                a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
                a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
                a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
                a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
            )
        return Quat(self.w * other, self.x * other,
                    self.y * other, self.z * other)

    def __rmul__(self, other):
        # real scalars commute; quaternion*quaternion goes through __mul__
        return Quat(other * self.w, other * self.x,
                    other * self.y, other * self.z)

    def __truediv__(self, scalar):
        return Quat(self.w / scalar, self.x / scalar,
                    self.y / scalar, self.z / scalar)

    def conj(self):
        return Quat(self.w, -self.x, -self.y, -self.z)

    def norm2(self):
        """Exact |q|^2 (stays in the component field)."""
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __abs__(self):
        return math.sqrt(float(self.norm2()))

    # -- views ---------------------------------------------------------

    def complex_part(self):
        """The (w, x) pair as a Python complex."""
        return complex(self.w, self.x)

    def jk_part(self):
        """The (y, z) pair as a Python complex (coefficient of j in q = alpha + beta j)."""
        return complex(self.y, self.z)

    def is_exact(self):
        return all(isinstance(c, _EXACT_TYPES) for c in (self.w, self.x, self.y, self.z))

    # -- protocol ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Quat):
            other = _coerce(other)
        return (self.w == other.w and self.x == other.x
                and self.y == other.y and self.z == other.z)

    def __hash__(self):
        return hash((self.w, self.x, self.y, self.z))

    def __repr__(self):
        return f"Quat({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


def _coerce(value):
    if isinstance(value, Quat):
        return value
    if isinstance(value, (int, float, Fraction)):
        return Quat(value)
    if isinstance(value, complex):
        return Quat(value.real, value.imag)
    raise TypeError(f"cannot coerce {type(value).__name__} to Quat")


def from_complex(alpha, beta=0j):
    """Build alpha + beta*j from two complex numbers."""
    alpha = complex(alpha)
    beta = complex(beta)
    return Quat(alpha.real, alpha.imag, beta.real, beta.imag)


ONE = Quat(1)
I = Quat(0, 1)
J = Quat(0, 0, 1)
K = Quat(0, 0, 0, 1)


@dataclass(frozen=True)
class Tolerance:
    """Comparison thresholds.

    A part counts as zero when its magnitude is at most
    abs_tol + rel_scale * |operand|.  Both thresholds are zero for the
    exact backend (EXACT below), making every predicate literal.
    """

    abs_tol: float = 1e-9
    rel_scale: float = 1e-12

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_scale < 0:
            raise ValueError("tolerance thresholds must be nonnegative")

    def threshold(self, scale):
        return self.abs_tol + self.rel_scale * scale


DEFAULT_TOL = Tolerance()
EXACT = Tolerance(0.0, 0.0)


def mul(a, b):
    return a * b


def conj(q):
    return q.conj()


def norm(q):
    return abs(q)


def inv(q, tol=DEFAULT_TOL):
    """Multiplicative inverse conj(q)/|q|^2."""
    from .errors import DivisionByNearZero

    n2 = q.norm2()
    if q.is_exact():
        if n2 == 0:
            raise DivisionByNearZero("inverse of zero quaternion")
        c = q.conj()
        return Quat(Fraction(c.w, 1) / n2, Fraction(c.x, 1) / n2,
                    Fraction(c.y, 1) / n2, Fraction(c.z, 1) / n2)
    if abs(q) <= tol.abs_tol:
        raise DivisionByNearZero(f"|q| = {abs(q):.3e} below tolerance")
    c = q.conj()
    return Quat(c.w / n2, c.x / n2, c.y / n2, c.z / n2)


def parts(q):
    """((w, x), (y, z)) — the complex part and the j/k part."""
    return ((q.w, q.x), (q.y, q.z))


def is_complex(q, tol=DEFAULT_TOL):
    thr = tol.threshold(abs(q))
    return abs(q.y) <= thr and abs(q.z) <= thr


def is_cj(q, tol=DEFAULT_TOL):
    """Membership in C*j, i.e. zero 1- and i-parts."""
    thr = tol.threshold(abs(q))
    return abs(q.w) <= thr and abs(q.x) <= thr


def is_real(q, tol=DEFAULT_TOL):
    thr = tol.threshold(abs(q))
    return abs(q.x) <= thr and abs(q.y) <= thr and abs(q.z) <= thr


def is_pure_imaginary(q, tol=DEFAULT_TOL):
    return abs(q.w) <= tol.threshold(abs(q))


def jk_residual(q, scale=None):
    """Magnitude of the j/k part, optionally normalized by 1 + scale."""
    r = math.hypot(float(q.y), float(q.z))
    if scale is not None:
        r /= 1.0 + scale
    return r
