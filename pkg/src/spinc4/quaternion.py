"""Quaternion arithmetic with the exact conventions used by the rest of the package.

The quaternion algebra H is treated as a Hermitian plane: complex scalars
C = span(1, i) act by *right* multiplication, the complex basis (1, j) is
orthonormal, and |p|^2 = p * conj(p).  With these conventions the real basis
(1, i, j, k) is *negative* oriented (the positive basis is (1, i, j, -k),
because (1, j) induces the real basis (1, 1*i, j, j*i) and j*i = -k).

Every quaternion q decomposes as q = a + j*b with complex a, b (the "right
pair"), and left multiplication by p = a + j*b acts on right pairs as the
matrix [[a, -conj(b)], [b, conj(a)]].  The same four numbers also decompose
as q = alpha + beta*j (the "left pair"), which is the natural coordinate
system when complex scalars act on the left (quaternion lines in H^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Quaternion",
    "ONE",
    "I",
    "J",
    "K",
    "quat_mul",
    "quat_conj",
    "quat_inv",
    "quat_norm",
    "left_mult_matrix",
    "orientation_det",
]


@dataclass(frozen=True, slots=True)
class Quaternion:
    """Element w + x*i + y*j + z*k of H, immutable."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    # ---- constructors ----

    @staticmethod
    def from_right_pair(a: complex, b: complex) -> "Quaternion":
        """Quaternion a + j*b.  Note j*(i*Im b) = -k*Im b."""
        a, b = complex(a), complex(b)
        return Quaternion(a.real, a.imag, b.real, -b.imag)

    @staticmethod
    def from_left_pair(alpha: complex, beta: complex) -> "Quaternion":
        """Quaternion alpha + beta*j."""
        alpha, beta = complex(alpha), complex(beta)
        return Quaternion(alpha.real, alpha.imag, beta.real, beta.imag)

    @staticmethod
    def from_complex(c: complex) -> "Quaternion":
        return Quaternion(c.real, c.imag, 0.0, 0.0)

    # ---- coordinate views ----

    def right_pair(self) -> tuple[complex, complex]:
        """(a, b) with self = a + j*b.  Round-trips exactly."""
        return complex(self.w, self.x), complex(self.y, -self.z)

    def left_pair(self) -> tuple[complex, complex]:
        """(alpha, beta) with self = alpha + beta*j."""
        return complex(self.w, self.x), complex(self.y, self.z)

    def components(self) -> tuple[float, float, float, float]:
        return self.w, self.x, self.y, self.z

    # ---- algebra ----

    def __add__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w + other.w, self.x + other.x,
                          self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(self.w - other.w, self.x - other.x,
                          self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        # Hamilton product, i*j = k, j*i = -k.
        pw, px, py, pz = self.w, self.x, self.y, self.z
        qw, qx, qy, qz = other.w, other.x, other.y, other.z
        return Quaternion(
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        )

    def scale(self, s: float) -> "Quaternion":
        return Quaternion(s * self.w, s * self.x, s * self.y, s * self.z)

    def times_complex(self, c: complex) -> "Quaternion":
        """Right multiplication by c in C = span(1, i): the complex scalar action."""
        return self * Quaternion.from_complex(c)

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def inverse(self) -> "Quaternion":
        n2 = self.norm2()
        if n2 == 0.0:
            raise ZeroDivisionError("zero quaternion has no inverse")
        return self.conj().scale(1.0 / n2)

    def normalized(self) -> "Quaternion":
        n = self.norm()
        if n == 0.0:
            raise ZeroDivisionError("cannot normalize the zero quaternion")
        return self.scale(1.0 / n)

    def real_part(self) -> float:
        return self.w

    def imag_part(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def dot(self, other: "Quaternion") -> float:
        """Euclidean inner product of H = R^4; equals Re(self * conj(other))."""
        return (self.w * other.w + self.x * other.x
                + self.y * other.y + self.z * other.z)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.norm2() <= tol * tol

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Quaternion({self.w:.12g}, {self.x:.12g}, {self.y:.12g}, {self.z:.12g})"


ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return p * q


def quat_conj(q: Quaternion) -> Quaternion:
    return q.conj()


def quat_inv(q: Quaternion) -> Quaternion:
    return q.inverse()


def quat_norm(q: Quaternion) -> float:
    return q.norm()


def left_mult_matrix(p: Quaternion) -> np.ndarray:
    """2x2 complex matrix [[a, -conj(b)], [b, conj(a)]] of left multiplication by p.

    Applied to the right pair of q it reproduces the right pair of p*q, and its
    determinant is |p|^2.
    """
    a, b = p.right_pair()
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]], dtype=complex)


def orientation_det(q1: Quaternion, q2: Quaternion, q3: Quaternion,
                    q4: Quaternion) -> float:
    """Determinant of four quaternions against the *canonical* orientation of H.

    Positive iff (q1, q2, q3, q4) is positively oriented for the canonical
    orientation, whose positive bases include (1, i, j, -k).  Since (1, i, j, k)
    is negative oriented, this is minus the determinant in (1, i, j, k)
    coordinates.
    """
    m = np.array([q.components() for q in (q1, q2, q3, q4)], dtype=float)
    return -float(np.linalg.det(m))
