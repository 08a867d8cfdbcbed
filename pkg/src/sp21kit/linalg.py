"""The Hermitian space H^{2,1}: form, vectors, 3x3 quaternionic matrices.

The form is the antidiagonal signature-(2,1) matrix FORM_J, with
<p,q> = conj(q)^t J p.  Vectors are right-module representatives:
projective rescaling multiplies on the right.
"""

import math
import random
from dataclasses import dataclass
from enum import Enum

from .errors import (AtInfinity, DegenerateDraw, IllConditioned,
                     NonRealSelfInner, NotSymplectic)
from .quat import DEFAULT_TOL, Quat, inv, is_pure_imaginary

_SQRT2 = math.sqrt(2.0)


class QVec3:
    """Column vector (p1, p2, p3)^t over the quaternions."""

    __slots__ = ("p1", "p2", "p3")

    def __init__(self, p1, p2, p3):
        self.p1 = p1
        self.p2 = p2
        self.p3 = p3

    def right_scale(self, q):
        return QVec3(self.p1 * q, self.p2 * q, self.p3 * q)

    def __add__(self, other):
        return QVec3(self.p1 + other.p1, self.p2 + other.p2, self.p3 + other.p3)

    def __sub__(self, other):
        return QVec3(self.p1 - other.p1, self.p2 - other.p2, self.p3 - other.p3)

    def __iter__(self):
        return iter((self.p1, self.p2, self.p3))

    def __eq__(self, other):
        return isinstance(other, QVec3) and tuple(self) == tuple(other)

    def __repr__(self):
        return f"QVec3({self.p1!r}, {self.p2!r}, {self.p3!r})"


class QMat3:
    """3x3 matrix over the quaternions, entries a b c / d e f / g h l."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("QMat3 needs a 3x3 array of quaternions")
        self.rows = rows

    # entry names follow the a..l layout used throughout
    @property
    def a(self):
        return self.rows[0][0]

    @property
    def b(self):
        return self.rows[0][1]

    @property
    def c(self):
        return self.rows[0][2]

    @property
    def d(self):
        return self.rows[1][0]

    @property
    def e(self):
        return self.rows[1][1]

    @property
    def f(self):
        return self.rows[1][2]

    @property
    def g(self):
        return self.rows[2][0]

    @property
    def h(self):
        return self.rows[2][1]

    @property
    def l(self):
        return self.rows[2][2]

    def entry(self, i, k):
        return self.rows[i][k]

    def column(self, k):
        return QVec3(self.rows[0][k], self.rows[1][k], self.rows[2][k])

    def conj_transpose(self):
        r = self.rows
        return QMat3([[r[k][i].conj() for k in range(3)] for i in range(3)])

    def __matmul__(self, other):
        if isinstance(other, QVec3):
            return mat_apply(self, other)
        return mat_mul(self, other)

    def __mul__(self, scalar):
        return QMat3([[e * scalar for e in row] for row in self.rows])

    def __rmul__(self, scalar):
        return QMat3([[scalar * e for e in row] for row in self.rows])

    def __sub__(self, other):
        return QMat3([[self.rows[i][k] - other.rows[i][k] for k in range(3)]
                      for i in range(3)])

    def __neg__(self):
        return QMat3([[-e for e in row] for row in self.rows])

    def __eq__(self, other):
        return isinstance(other, QMat3) and self.rows == other.rows

    def __repr__(self):
        return f"QMat3({self.rows!r})"


def diag(q1, q2, q3):
    zero = Quat(0)
    return QMat3([[q1, zero, zero], [zero, q2, zero], [zero, zero, q3]])


def identity():
    return diag(Quat(1), Quat(1), Quat(1))


FORM_J = QMat3([[Quat(0), Quat(0), Quat(1)],
                [Quat(0), Quat(1), Quat(0)],
                [Quat(1), Quat(0), Quat(0)]])


def mat_mul(A, B):
    out = []
    for i in range(3):
        row = []
        for k in range(3):
            s = A.rows[i][0] * B.rows[0][k]
            s = s + A.rows[i][1] * B.rows[1][k]
            s = s + A.rows[i][2] * B.rows[2][k]
            row.append(s)
        out.append(row)
    return QMat3(out)


def mat_apply(A, p):
    return QVec3(
        A.rows[0][0] * p.p1 + A.rows[0][1] * p.p2 + A.rows[0][2] * p.p3,
        A.rows[1][0] * p.p1 + A.rows[1][1] * p.p2 + A.rows[1][2] * p.p3,
        A.rows[2][0] * p.p1 + A.rows[2][1] * p.p2 + A.rows[2][2] * p.p3,
    )


def mat_norm(A):
    """Max entry magnitude; matches the entrywise identity checks."""
    return max(abs(e) for row in A.rows for e in row)


def herm_inner(p, q):
    """<p,q> = conj(q1) p3 + conj(q2) p2 + conj(q3) p1."""
    return q.p1.conj() * p.p3 + q.p2.conj() * p.p2 + q.p3.conj() * p.p1


class VectorSign(Enum):
    NEGATIVE = "negative"
    NULL = "null"
    POSITIVE = "positive"


def vector_sign(p, tol=DEFAULT_TOL):
    """Sign of the (real) self-product <p,p>; invariant under right scaling."""
    v = herm_inner(p, p)
    scale = max(abs(p.p1), abs(p.p2), abs(p.p3)) ** 2
    thr = tol.threshold(scale)
    im = math.sqrt(float(v.x) ** 2 + float(v.y) ** 2 + float(v.z) ** 2)
    if im > thr:
        raise NonRealSelfInner(f"<p,p> has imaginary part {im:.3e}")
    r = float(v.w)
    if r < -thr:
        return VectorSign.NEGATIVE
    if r > thr:
        return VectorSign.POSITIVE
    return VectorSign.NULL


@dataclass
class HoroCoords:
    """Horospherical coordinates (zeta, v, u); boundary when u = 0."""

    zeta: Quat
    v: Quat
    u: float

    def __post_init__(self):
        if abs(self.v.w) > 1e-12 * (1.0 + abs(self.v)):
            raise ValueError("v must be purely imaginary")
        if self.u < 0:
            raise ValueError("height u must be nonnegative")


def psi(h):
    """Siegel-domain embedding (zeta, v, u) -> [-|zeta|^2 - u + v; sqrt2 zeta; 1]."""
    top = Quat(-float(h.zeta.norm2()) - h.u) + h.v
    return QVec3(top, h.zeta * _SQRT2, Quat(1))


def psi_infinity():
    return QVec3(Quat(1), Quat(0), Quat(0))


def psi_inverse(p, tol=DEFAULT_TOL):
    """Invert psi after right-normalizing the representative to p3 = 1."""
    if abs(p.p3) <= tol.threshold(max(abs(p.p1), abs(p.p2), abs(p.p3))):
        raise AtInfinity("representative has p3 ~ 0")
    s = inv(p.p3, tol)
    p1 = p.p1 * s
    zeta = (p.p2 * s) / _SQRT2
    u = -float(p1.w) - float(zeta.norm2())
    if u < -tol.abs_tol:
        raise ValueError(f"point lies outside the closed Siegel domain (u = {u:.3e})")
    return HoroCoords(zeta=zeta, v=Quat(0, p1.x, p1.y, p1.z), u=max(u, 0.0))


def is_sp21(A, tol=DEFAULT_TOL):
    """(membership, residual): residual is the max-entry norm of A*JA - J."""
    R = mat_mul(mat_mul(A.conj_transpose(), FORM_J), A) - FORM_J
    residual = mat_norm(R)
    scale = (1.0 + mat_norm(A)) ** 2
    return residual <= tol.threshold(scale), residual


def sp_inverse(A, tol=DEFAULT_TOL):
    """Closed-form inverse for Sp(2,1): conjugate entries flipped across the antidiagonal."""
    ok, residual = is_sp21(A, tol)
    if not ok:
        raise NotSymplectic(f"A*JA - J residual {residual:.3e}")
    r = A.rows
    return QMat3([
        [r[2][2].conj(), r[1][2].conj(), r[0][2].conj()],
        [r[2][1].conj(), r[1][1].conj(), r[0][1].conj()],
        [r[2][0].conj(), r[1][0].conj(), r[0][0].conj()],
    ])


# The eighteen entrywise relations equivalent to A A^{-1} = A^{-1} A = I
# with the closed-form inverse; each item is (lhs(entries), rhs).
def structure_identities(A):
    a, b, c = A.a, A.b, A.c
    d, e, f = A.d, A.e, A.f
    g, h, l = A.g, A.h, A.l
    one = Quat(1)
    zero = Quat(0)
    cj = Quat.conj
    rels = [
        (a * cj(l) + b * cj(h) + c * cj(g), one),
        (a * cj(f) + b * cj(e) + c * cj(d), zero),
        (a * cj(c) + b * cj(b) + c * cj(a), zero),
        (d * cj(l) + e * cj(h) + f * cj(g), zero),
        (d * cj(f) + e * cj(e) + f * cj(d), one),
        (d * cj(c) + e * cj(b) + f * cj(a), zero),
        (g * cj(l) + h * cj(h) + l * cj(g), zero),
        (g * cj(f) + h * cj(e) + l * cj(d), zero),
        (g * cj(c) + h * cj(b) + l * cj(a), one),
        (cj(l) * a + cj(f) * d + cj(c) * g, one),
        (cj(l) * b + cj(f) * e + cj(c) * h, zero),
        (cj(l) * c + cj(f) * f + cj(c) * l, zero),
        (cj(h) * a + cj(e) * d + cj(b) * g, zero),
        (cj(h) * b + cj(e) * e + cj(b) * h, one),
        (cj(h) * c + cj(e) * f + cj(b) * l, zero),
        (cj(g) * a + cj(d) * d + cj(a) * g, zero),
        (cj(g) * b + cj(d) * e + cj(a) * h, zero),
        (cj(g) * c + cj(d) * f + cj(a) * l, one),
    ]
    return [abs(lhs - rhs) for lhs, rhs in rels]


def trace(A):
    """Sum of diagonal entries (quaternion-valued, not similarity-invariant)."""
    return A.a + A.e + A.l


def numeric_inverse(A, cond_cap=1e12):
    """Gaussian elimination with partial pivoting over the quaternions."""
    n = 3
    aug = [[A.rows[i][k] for k in range(n)] +
           [Quat(1) if i == k else Quat(0) for k in range(n)] for i in range(n)]
    norm_a = mat_norm(A)
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(aug[r][col]))
        if abs(aug[piv][col]) * cond_cap < norm_a or abs(aug[piv][col]) == 0.0:
            raise IllConditioned(f"pivot {abs(aug[piv][col]):.3e} too small")
        aug[col], aug[piv] = aug[piv], aug[col]
        pinv = inv(aug[col][col])
        aug[col] = [pinv * v for v in aug[col]]
        for r in range(n):
            if r != col:
                factor = aug[r][col]
                aug[r] = [aug[r][k] - factor * aug[col][k] for k in range(2 * n)]
    Ainv = QMat3([row[n:] for row in aug])
    if mat_norm(Ainv) * norm_a > cond_cap:
        raise IllConditioned("condition estimate exceeds cap")
    return Ainv


def _draw_quaternion(rng):
    return Quat(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))


def _draw_complex(rng):
    return Quat(rng.gauss(0, 1), rng.gauss(0, 1))


def _draw_real(rng):
    return Quat(rng.gauss(0, 1))


def _draw_imaginary(rng):
    return Quat(0, rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))


def gram_schmidt_sp21(rng, draw=_draw_quaternion, max_retries=50):
    """Random J-orthonormal column frame (null, positive, null) -> Sp(2,1).

    Columns (c1, c2, c3) are built so the column Gram matrix equals J:
    two null columns pairing to 1 and one positive unit column.  The
    draw function controls the scalar subfield (quaternion / complex /
    real), so the same routine produces U(2,1) and O(2,1)-type samples.
    """
    for _ in range(max_retries):
        try:
            zeta1 = draw(rng)
            v1 = draw(rng)
            c1 = QVec3(Quat(-float(zeta1.norm2())) + (v1 - Quat(v1.w)),
                       zeta1 * _SQRT2, Quat(1))
            zeta3 = draw(rng)
            v3 = draw(rng)
            p3 = QVec3(Quat(-float(zeta3.norm2())) + (v3 - Quat(v3.w)),
                       zeta3 * _SQRT2, Quat(1))
            s = herm_inner(p3, c1)
            if abs(s) < 1e-6:
                raise DegenerateDraw("null columns nearly incident")
            c3 = p3.right_scale(inv(s))
            v = QVec3(draw(rng), draw(rng), draw(rng))
            # subtract the c1/c3 components; <c1,c1>=<c3,c3>=0, <c3,c1>=1
            v2 = v - c1.right_scale(herm_inner(v, c3)) - c3.right_scale(herm_inner(v, c1))
            nrm = herm_inner(v2, v2)
            if float(nrm.w) < 1e-8:
                raise DegenerateDraw("positive column degenerate")
            c2 = v2.right_scale(Quat(1.0 / math.sqrt(float(nrm.w))))
            A = QMat3([[c1.p1, c2.p1, c3.p1],
                       [c1.p2, c2.p2, c3.p2],
                       [c1.p3, c2.p3, c3.p3]])
            ok, residual = is_sp21(A)
            if not ok or residual > 1e-10:
                raise DegenerateDraw(f"frame residual {residual:.3e}")
            return A
        except DegenerateDraw:
            continue
    raise DegenerateDraw("exceeded retry budget for J-Gram-Schmidt")


def random_sp21(seed):
    """Deterministic pseudo-random element of Sp(2,1)."""
    rng = random.Random(seed)
    return gram_schmidt_sp21(rng)


def projective_normalize(p, tol=DEFAULT_TOL):
    """Right-divide by the largest-magnitude coordinate (projective representative)."""
    coords = list(p)
    mags = [abs(q) for q in coords]
    k = max(range(3), key=lambda i: mags[i])
    if mags[k] <= tol.abs_tol:
        raise ValueError("zero vector has no projective representative")
    return p.right_scale(inv(coords[k], tol))


def is_imaginary_quat(q, tol=DEFAULT_TOL):
    return is_pure_imaginary(q, tol)
