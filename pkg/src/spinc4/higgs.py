"""Higgs fields and the lambda+/mu+ splitting of spinors over the Grassmannian.

A Higgs field is a section of the positive half-spinor bundle transverse to
the zero section, defined up to multiplication by positive functions.  Two
models are implemented:

* the flat C^2 model, whose Higgs field is the constant unit spinor (1, 0);
* the standard Higgs fields on S^4 = P(W): psi(L) = <u, w> w / |w|^2 for a
  fixed nonzero u in W = H^2, with the single transverse zero at u_perp.

At a Grassmann point (y, T) the pulled-back Higgs spinor splits as
psi = phi + chi into its components along the line L and its orthogonal
complement, where (L, L') = psi_inverse(T).  The zero set of chi is Q (the
plane is a complex line with matching orientation), the zero set of phi is
Qbar, and for any positive-oriented orthonormal basis (A, B) of T the model
wedge satisfies  A psi ^ B psi = -2i phi ^ chi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .grassmann import OrientedPlane, psi_inverse
from .projective import (LineFrame, QuatLine, QuatPair, SphereChart,
                         quat_pair_herm, quat_pair_norm)
from .quaternion import I
from .spin import PLUS, Spinor, clifford_mul, herm, wedge

__all__ = [
    "PlaneKind",
    "PlaneClassification",
    "SpinorSplit",
    "StandardHiggsField",
    "FLAT_HIGGS_SPINOR",
    "split_at",
    "classify_plane",
    "wedge_identity_residual",
    "local_representatives",
]

FLAT_HIGGS_SPINOR = Spinor(1.0, 0.0, PLUS)


class PlaneKind(Enum):
    Q_COMPLEX = "Q"
    QBAR_COMPLEX = "Qbar"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True, slots=True)
class SpinorSplit:
    """Components of a spinor along L (phi) and L_perp (chi); phi + chi
    reconstructs the input exactly."""

    phi: Spinor
    chi: Spinor

    def phi_norm(self) -> float:
        return self.phi.norm()

    def chi_norm(self) -> float:
        return self.chi.norm()


@dataclass(frozen=True, slots=True)
class PlaneClassification:
    kind: PlaneKind
    phi_norm: float
    chi_norm: float
    psi_norm: float


def split_at(psi_spinor: Spinor, T: OrientedPlane) -> SpinorSplit:
    """lambda+/mu+ decomposition of a spinor at the oriented plane T."""
    L, _ = psi_inverse(T)
    phi = L.rep.scale(herm(psi_spinor, L.rep))
    chi = psi_spinor - phi
    return SpinorSplit(phi, chi)


def classify_plane(psi_spinor: Spinor, T: OrientedPlane, tol: float = 1e-8,
                   zero_abs: float = 1e-10) -> PlaneClassification:
    """Q / Qbar / Both / Neither verdict for the plane T.

    Thresholds are relative to |psi| (the classification is scale invariant);
    Both requires |psi| below the absolute threshold zero_abs, which only the
    Higgs zero attains.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = psi_spinor.norm()
    split = split_at(psi_spinor, T)
    pn, cn = split.phi_norm(), split.chi_norm()
    if n < zero_abs:
        kind = PlaneKind.BOTH
    elif cn <= tol * n:
        kind = PlaneKind.Q_COMPLEX
    elif pn <= tol * n:
        kind = PlaneKind.QBAR_COMPLEX
    else:
        kind = PlaneKind.NEITHER
    return PlaneClassification(kind, pn, cn, n)


def wedge_identity_residual(T: OrientedPlane, psi_spinor: Spinor) -> float:
    """|A psi ^ B psi - (-2i) phi ^ chi| for the stored orthonormal basis."""
    apsi = clifford_mul(T.a, psi_spinor)
    bpsi = clifford_mul(T.b, psi_spinor)
    split = split_at(psi_spinor, T)
    lhs = wedge(apsi, bpsi)
    rhs = -2j * wedge(split.phi, split.chi)
    return abs(lhs - rhs)


class StandardHiggsField:
    """psi(L) = <u, w> w / |w|^2 on P(W), the orthogonal projection of u.

    The single zero is the line u_perp, where every oriented plane lies in
    both Q and Qbar.
    """

    def __init__(self, u: QuatPair):
        self.chart = SphereChart(u)
        self.u = self.chart.u
        self.u_norm2 = self.chart.u_norm2

    def zero_line(self) -> QuatLine:
        return QuatLine(*self.chart.v)

    def value(self, L: QuatLine) -> QuatPair:
        """The spinor psi(L) as a vector of W lying in L."""
        w = L.rep()
        c = quat_pair_herm(self.u, w)
        return (c * w[0], c * w[1])

    def spinor_at(self, frame: LineFrame) -> Spinor:
        """Coordinates of psi at the line of the frame, in (w_hat, j w_hat)."""
        a, b = quat_pair_herm(self.u, frame.w_hat).left_pair()
        return Spinor(a, b, PLUS)

    def spinor_from_u_coefficient(self, coeff: complex, w_norm: float) -> Spinor:
        """Higgs spinor when the representative is w = (...) + coeff * u with
        the rest orthogonal to u: <u, w_hat> = |u|^2 conj(coeff) / |w|.

        This avoids the cancellation of the generic inner product near the
        Higgs zero, where |psi| is tiny.
        """
        c = self.u_norm2 * coeff.conjugate() / w_norm
        return Spinor(c, 0.0, PLUS)

    def residual_acs_residual(self, y: tuple[complex, complex],
                              t: tuple[complex, complex]) -> float:
        """Residual of Lemma-type compatibility: the almost complex structure
        induced by psi/|psi| at Theta(y), pulled back through Theta, equals
        multiplication by i on V.

        Both tangent vectors are pushed to quaternion coordinates at the line
        Theta(y); J acts by A -> A s i s^{-1} with s the unit Higgs spinor as
        a quaternion.
        """
        chart = self.chart
        w_raw = chart.embed(*y)
        w_raw = (w_raw[0] + chart.u[0], w_raw[1] + chart.u[1])
        frame = chart.frame_at(w_raw)
        a_t = frame.tangent_quat(chart.embed(*t))
        a_it = frame.tangent_quat(chart.embed(1j * t[0], 1j * t[1]))
        s = self.spinor_at(frame)
        sq = s.to_quaternion().normalized()
        j_at = a_t * sq * I * sq.conj()
        return (a_it - j_at).norm() / max(a_t.norm(), 1e-300)


def local_representatives(field: StandardHiggsField
                          ) -> tuple[Callable[[complex], complex],
                                     Callable[[complex], complex]]:
    """Chart representatives of phi and chi around their zeros.

    In the projective charts z -> K(z u + v) and z -> K(z v + u) the sections
    become z -> conj(z) and z -> z, both divided by (|z|^2 + 1)|u|^2: one
    transverse zero each, with antilinear resp. complex-linear differential
    and winding -1 resp. +1 around it.
    """
    u2 = field.u_norm2

    def phi_rep(z: complex) -> complex:
        return z.conjugate() / ((abs(z) ** 2 + 1.0) * u2)

    def chi_rep(z: complex) -> complex:
        return z / ((abs(z) ** 2 + 1.0) * u2)

    return phi_rep, chi_rep


def winding_number(values: list[complex], tol: float = 0.1) -> int:
    """Winding of a closed loop of nonzero complex values around 0.

    Sums phase increments wrapped to (-pi, pi]; the total must be within tol
    of an integer multiple of 2 pi, and no single step may exceed pi/2 (the
    loop is too coarse otherwise).
    """
    total = 0.0
    n = len(values)
    for k in range(n):
        a, b = values[k], values[(k + 1) % n]
        if a == 0 or b == 0:
            raise ValueError("winding undefined: loop passes through zero")
        step = math.atan2((b / a).imag, (b / a).real)
        if abs(step) > math.pi / 2:
            raise ValueError("phase step exceeds pi/2: refine the loop")
        total += step
    turns = total / (2.0 * math.pi)
    nearest = round(turns)
    if abs(turns - nearest) > tol:
        raise ValueError(f"winding {turns} is not close to an integer")
    return int(nearest)
