"""The model spin^c(4) geometry: S+ = S- = C^2, K = C, wedge(phi, chi) = ad - bc.

Spinors are pairs of complex numbers tagged with a chirality.  Under the
standard identification S+/- = H (spinor (a, b) <-> quaternion a + j*b) the
Clifford multiplication V x S+ -> S- is plain quaternion multiplication, and
the homothety space V consists of the left multiplications, i.e. the 2x2
matrices [[a, -conj(b)], [b, conj(a)]], with det A = |A|^2 = |a|^2 + |b|^2 >= 0.

Hermitian inner products are linear in the first slot and conjugate-linear in
the second throughout the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quaternion import Quaternion, left_mult_matrix

__all__ = [
    "Spinor",
    "AdaptedBases",
    "DegenerateSpinorError",
    "wedge",
    "herm",
    "clifford_mul",
    "det_v",
    "v_dot",
    "adapt_bases",
]

PLUS = "plus"
MINUS = "minus"


class DegenerateSpinorError(ValueError):
    """Raised when an operation requires a nonzero spinor."""


@dataclass(frozen=True, slots=True)
class Spinor:
    """Element (a, b) of the model half-spinor plane, with chirality tag."""

    a: complex
    b: complex
    chirality: str = PLUS

    def norm2(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2

    def norm(self) -> float:
        return math.sqrt(self.norm2())

    def scale(self, c: complex) -> "Spinor":
        return Spinor(c * self.a, c * self.b, self.chirality)

    def __add__(self, other: "Spinor") -> "Spinor":
        _require_same_chirality(self, other)
        return Spinor(self.a + other.a, self.b + other.b, self.chirality)

    def __sub__(self, other: "Spinor") -> "Spinor":
        _require_same_chirality(self, other)
        return Spinor(self.a - other.a, self.b - other.b, self.chirality)

    def __neg__(self) -> "Spinor":
        return Spinor(-self.a, -self.b, self.chirality)

    def normalized(self) -> "Spinor":
        n = self.norm()
        if n == 0.0:
            raise DegenerateSpinorError("cannot normalize the zero spinor")
        return self.scale(1.0 / n)

    def to_quaternion(self) -> Quaternion:
        """Lemma-style identification: (a, b) <-> a + j*b."""
        return Quaternion.from_right_pair(self.a, self.b)

    @staticmethod
    def from_quaternion(q: Quaternion, chirality: str = PLUS) -> "Spinor":
        a, b = q.right_pair()
        return Spinor(a, b, chirality)

    def as_vector(self) -> np.ndarray:
        return np.array([self.a, self.b], dtype=complex)


def _require_same_chirality(phi: Spinor, chi: Spinor) -> None:
    if phi.chirality != chi.chirality:
        raise ValueError(
            f"chirality mismatch: {phi.chirality!r} vs {chi.chirality!r}")


def wedge(phi: Spinor, chi: Spinor) -> complex:
    """Skew pairing phi ^ chi = a*d - b*c, valued in K = C.

    Satisfies |phi ^ chi|^2 = |phi|^2 |chi|^2 - |<phi, chi>|^2; in particular
    |phi ^ chi| = |phi| |chi| for orthogonal arguments.
    """
    _require_same_chirality(phi, chi)
    return phi.a * chi.b - phi.b * chi.a


def herm(phi: Spinor, chi: Spinor) -> complex:
    """Hermitian inner product, linear in phi, conjugate-linear in chi."""
    _require_same_chirality(phi, chi)
    return phi.a * chi.a.conjugate() + phi.b * chi.b.conjugate()


def clifford_mul(A: Quaternion, phi: Spinor) -> Spinor:
    """Clifford multiplication V x S+ -> S-: quaternion multiplication A * phi.

    A is a point of V (a homothety S+ -> S- of nonnegative determinant) in its
    quaternion coordinates; |A*phi| = |A| |phi|.
    """
    if phi.chirality != PLUS:
        raise ValueError("clifford_mul expects a plus-chirality spinor")
    return Spinor.from_quaternion(A * phi.to_quaternion(), MINUS)


def det_v(A: Quaternion) -> float:
    """Determinant of the homothety A: equals |a|^2 + |b|^2 = |A|^2 >= 0."""
    a, b = A.right_pair()
    return abs(a) ** 2 + abs(b) ** 2


def v_dot(A: Quaternion, B: Quaternion) -> float:
    """Euclidean inner product of V; 4<A,B> equals the real trace of A* B."""
    return A.dot(B)


def v_matrix(A: Quaternion) -> np.ndarray:
    """Matrix of A as a homothety S+ -> S- in the standard spinor bases."""
    return left_mult_matrix(A)


@dataclass(frozen=True, slots=True)
class AdaptedBases:
    """Orthonormal spinor bases (phi+, chi+), (phi-, chi-) with equal wedges."""

    phi_plus: Spinor
    chi_plus: Spinor
    phi_minus: Spinor
    chi_minus: Spinor


def adapt_bases(psi: Spinor) -> AdaptedBases:
    """Adapted bases with phi+ = psi/|psi| and wedge fixed real positive.

    chi+ = (-conj(b), conj(a)) is the unique unit spinor orthogonal to
    phi+ = (a, b) with phi+ ^ chi+ = |a|^2 + |b|^2 = 1; the minus bases can
    then stay the standard ones, whose wedge is 1 as well.
    """
    if psi.chirality != PLUS:
        raise ValueError("adapt_bases expects a plus-chirality spinor")
    if psi.norm() == 0.0:
        raise DegenerateSpinorError("adapt_bases needs a nonzero spinor")
    phi_plus = psi.normalized()
    chi_plus = Spinor(-phi_plus.b.conjugate(), phi_plus.a.conjugate(), PLUS)
    phi_minus = Spinor(1.0, 0.0, MINUS)
    chi_minus = Spinor(0.0, 1.0, MINUS)
    return AdaptedBases(phi_plus, chi_plus, phi_minus, chi_minus)
