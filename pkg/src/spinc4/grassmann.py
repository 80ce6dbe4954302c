"""Oriented 2-planes in the homothety 4-space V and the diffeomorphism Psi.

Psi sends a pair of complex lines (L, L') in S+ x S- to the oriented plane
{A in V : A L c L'}.  With unit quaternion representatives p, q of L, L' this
plane is q C conj(p), with positive-oriented orthonormal basis
(q conj(p), q i conj(p)).  Its inverse recovers L as the eigenline of
A^{-1} B for the eigenvalue of positive imaginary part (and L' from -A B^{-1}),
which for left multiplication by s + v (s real, v imaginary) is s + i|v|,
solved here in closed form by the projector x -> (x - n x i)/2, n = v/|v|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .quaternion import ONE, I, J, K, Quaternion, orientation_det
from .spin import MINUS, PLUS, Spinor, clifford_mul, herm

__all__ = [
    "ProjectiveLine",
    "OrientedPlane",
    "MembershipVerdict",
    "PlaneTangent",
    "psi",
    "psi_inverse",
    "plane_complement",
    "membership",
    "grassmann_acs",
    "psi_tangent",
    "projective_distance",
    "plane_distance",
]

_BASIS = (ONE, I, J, K)


class MembershipVerdict(Enum):
    IN_L = "InL"
    IN_L_PERP = "InLperp"
    NEITHER = "Neither"


@dataclass(frozen=True, slots=True)
class ProjectiveLine:
    """Complex line in S+ or S-, stored as a unit spinor representative."""

    rep: Spinor

    def __post_init__(self):
        n = self.rep.norm()
        if n == 0.0:
            raise ValueError("projective line needs a nonzero representative")
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "rep", self.rep.normalized())

    @property
    def chirality(self) -> str:
        return self.rep.chirality

    def canonical(self) -> "ProjectiveLine":
        """Representative with the first component of modulus > 1e-8 made real
        positive (phase moved to the other component otherwise)."""
        a, b = self.rep.a, self.rep.b
        pivot = a if abs(a) > 1e-8 else b
        phase = pivot / abs(pivot)
        return ProjectiveLine(self.rep.scale(1.0 / phase))

    def perp(self) -> "ProjectiveLine":
        """Orthogonal line; for L = pC this is pjC, i.e. (a,b) -> (-conj b, conj a)."""
        r = self.rep
        return ProjectiveLine(Spinor(-r.b.conjugate(), r.a.conjugate(), r.chirality))

    def distance(self, other: "ProjectiveLine") -> float:
        return projective_distance(self, other)

    def contains(self, phi: Spinor, tol: float = 1e-9) -> bool:
        rest = phi - self.rep.scale(herm(phi, self.rep))
        return rest.norm() <= tol * max(phi.norm(), 1e-300)


def projective_distance(L1: ProjectiveLine, L2: ProjectiveLine) -> float:
    """min over phases of |rep1 - e^{i theta} rep2|.

    The minimizing phase is arg<rep1, rep2>; subtracting the aligned
    representative keeps the result accurate near zero, where the closed form
    sqrt(2 - 2|<,>|) loses half the digits.
    """
    ip = herm(L1.rep, L2.rep)
    phase = ip / abs(ip) if ip != 0 else 1.0
    diff = L1.rep - L2.rep.scale(phase)
    return diff.norm()


@dataclass(frozen=True, slots=True)
class OrientedPlane:
    """Oriented real 2-plane in V, an ordered orthonormal pair (a, b)."""

    a: Quaternion
    b: Quaternion

    @staticmethod
    def from_span(v1: Quaternion, v2: Quaternion,
                  tol: float = 1e-12) -> "OrientedPlane":
        """Gram-Schmidt on an ordered independent pair, preserving orientation."""
        n1 = v1.norm()
        scale = max(n1, v2.norm())
        if n1 <= tol * scale or scale == 0.0:
            raise ValueError("span is rank deficient")
        e1 = v1.scale(1.0 / n1)
        w = v2 - e1.scale(e1.dot(v2))
        nw = w.norm()
        if nw <= tol * scale:
            raise ValueError("span is rank deficient")
        return OrientedPlane(e1, w.scale(1.0 / nw))

    def orthonormality_defect(self) -> float:
        return max(abs(self.a.norm() - 1.0), abs(self.b.norm() - 1.0),
                   abs(self.a.dot(self.b)))

    def bivector(self) -> tuple[float, float, float, float, float, float]:
        """Plucker coordinates of a^b in Lambda^2 R^4 (basis order 01,02,03,12,13,23)."""
        a, b = self.a.components(), self.b.components()
        return (
            a[0] * b[1] - a[1] * b[0],
            a[0] * b[2] - a[2] * b[0],
            a[0] * b[3] - a[3] * b[0],
            a[1] * b[2] - a[2] * b[1],
            a[1] * b[3] - a[3] * b[1],
            a[2] * b[3] - a[3] * b[2],
        )

    def distance(self, other: "OrientedPlane") -> float:
        return plane_distance(self, other)

    def project(self, v: Quaternion) -> Quaternion:
        return self.a.scale(self.a.dot(v)) + self.b.scale(self.b.dot(v))

    def project_out(self, v: Quaternion) -> Quaternion:
        return v - self.project(v)

    def rotate_basis(self, theta: float) -> "OrientedPlane":
        c, s = math.cos(theta), math.sin(theta)
        return OrientedPlane(self.a.scale(c) + self.b.scale(s),
                             self.a.scale(-s) + self.b.scale(c))

    def reversed(self) -> "OrientedPlane":
        return OrientedPlane(self.b, self.a)


def plane_distance(t1: OrientedPlane, t2: OrientedPlane) -> float:
    """Euclidean distance of unit Plucker bivectors; 0 iff equal oriented planes."""
    b1, b2 = t1.bivector(), t2.bivector()
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(b1, b2)))


def psi(L: ProjectiveLine, Lp: ProjectiveLine) -> OrientedPlane:
    """Oriented plane {A : A L c L'} with basis (q conj(p), q i conj(p))."""
    if L.chirality != PLUS or Lp.chirality != MINUS:
        raise ValueError("psi expects (plus, minus) chirality lines")
    p = L.rep.to_quaternion()
    q = Lp.rep.to_quaternion()
    pc = p.conj()
    return OrientedPlane(q * pc, q * I * pc)


def _positive_eigenline(omega: Quaternion, chirality: str,
                        tol: float = 1e-9) -> ProjectiveLine:
    """Eigenline of left multiplication by omega for its eigenvalue s + i|v|.

    Solutions of n x = x i (n the unit imaginary part of omega) form the
    eigenline; (x - n x i)/2 projects onto it.
    """
    v = omega.imag_part()
    nv = v.norm()
    if nv <= tol * max(omega.norm(), 1e-300):
        raise ValueError("eigenvalues are real: input plane data is corrupted")
    n = v.scale(1.0 / nv)
    best = None
    for seed in (ONE, J):
        cand = (seed - n * seed * I).scale(0.5)
        if best is None or cand.norm2() > best.norm2():
            best = cand
    return ProjectiveLine(Spinor.from_quaternion(best.normalized(), chirality))


def psi_inverse(T: OrientedPlane, tol_defect: float = 1e-8
                ) -> tuple[ProjectiveLine, ProjectiveLine]:
    """Lines (L, L') with psi(L, L') = T, independent of the basis choice.

    Small orthonormality drift (defect below tol_defect) is absorbed by one
    Gram-Schmidt pass; larger defects are rejected.
    """
    defect = T.orthonormality_defect()
    if defect > tol_defect:
        raise ValueError(
            f"basis orthonormality defect {defect:.3e} exceeds {tol_defect:.1e}")
    if defect > 1e-15:
        T = OrientedPlane.from_span(T.a, T.b)
    A, B = T.a, T.b
    # A^{-1} B and -A B^{-1} for unit A, B; inverses are conjugates.
    L = _positive_eigenline(A.conj() * B, PLUS)
    Lp = _positive_eigenline(-(A * B.conj()), MINUS)
    return L, Lp


def plane_complement(T: OrientedPlane) -> OrientedPlane:
    """Orthogonal complement carrying the orientation of Psi(L_perp, L').

    That orientation is the reverse of the direct-sum convention: with
    (a, b, c, d) positive-oriented in canonical V, the complement is returned
    as (d, c).
    """
    basis = [T.a, T.b]
    for cand in _BASIS:
        w = cand
        for e in basis:
            w = w - e.scale(e.dot(w))
        if w.norm() > 0.4:
            basis.append(w.normalized())
            if len(basis) == 4:
                break
    c, d = basis[2], basis[3]
    if orientation_det(T.a, T.b, c, d) < 0.0:
        c, d = d, c
    return OrientedPlane(d, c)


def membership(T: OrientedPlane, psi_spinor: Spinor,
               tol: float = 1e-8) -> MembershipVerdict:
    """Whether psi lies in L, in L_perp, or neither, for (L, .) = psi_inverse(T).

    Equivalently: InL iff Clifford multiplication by T maps psi to a complex
    line preserving orientation (B psi = i A psi), InLperp iff reversing.
    """
    n = psi_spinor.norm()
    if n == 0.0:
        raise ValueError("membership needs a nonzero spinor")
    L, _ = psi_inverse(T)
    coeff = herm(psi_spinor, L.rep)
    along = abs(coeff)
    across = (psi_spinor - L.rep.scale(coeff)).norm()
    if across <= tol * n:
        return MembershipVerdict.IN_L
    if along <= tol * n:
        return MembershipVerdict.IN_L_PERP
    return MembershipVerdict.NEITHER


def membership_direct(T: OrientedPlane, psi_spinor: Spinor,
                      tol: float = 1e-8) -> MembershipVerdict:
    """Independent orientation test: compare B psi against +/- i A psi."""
    n = psi_spinor.norm()
    if n == 0.0:
        raise ValueError("membership needs a nonzero spinor")
    apsi = clifford_mul(T.a, psi_spinor)
    bpsi = clifford_mul(T.b, psi_spinor)
    plus = (bpsi - apsi.scale(1j)).norm()
    minus = (bpsi + apsi.scale(1j)).norm()
    if plus <= tol * n:
        return MembershipVerdict.IN_L
    if minus <= tol * n:
        return MembershipVerdict.IN_L_PERP
    return MembershipVerdict.NEITHER


@dataclass(frozen=True, slots=True)
class PlaneTangent:
    """Tangent vector of the Grassmannian at T: a linear map T -> T_perp,
    stored by its values on the basis (a, b)."""

    at_a: Quaternion
    at_b: Quaternion

    def norm(self) -> float:
        return math.sqrt(self.at_a.norm2() + self.at_b.norm2())

    def __add__(self, other: "PlaneTangent") -> "PlaneTangent":
        return PlaneTangent(self.at_a + other.at_a, self.at_b + other.at_b)

    def __sub__(self, other: "PlaneTangent") -> "PlaneTangent":
        return PlaneTangent(self.at_a - other.at_a, self.at_b - other.at_b)

    def __neg__(self) -> "PlaneTangent":
        return PlaneTangent(-self.at_a, -self.at_b)


def grassmann_acs(T: OrientedPlane, t: PlaneTangent) -> PlaneTangent:
    """Complex structure on T_T[G2+(V)]: precompose with rotation by +pi/2 in T.

    The rotation sends a -> b, b -> -a, so J(S) takes (S(a), S(b)) to
    (S(b), -S(a)); applying it twice negates the map.
    """
    del T  # orientation data is already encoded in the basis order
    return PlaneTangent(t.at_b, -t.at_a)


def _unit_curve(p: Quaternion, c: complex, t: float) -> Quaternion:
    """Unit-quaternion curve through p with derivative p j c at t = 0."""
    return (p + (p * J).times_complex(c).scale(t)).normalized()


def psi_tangent(L: ProjectiveLine, Lp: ProjectiveLine, c: complex,
                slot: str, h: float = 1e-4) -> PlaneTangent:
    """Central finite-difference differential of Psi in one slot.

    The tangent c of the projective line is realized by the curve with
    dp/dt = p j c (resp. dq/dt = q j c), and the result is read off as the
    map T -> T_perp sending the basis of T = psi(L, L') to the projections of
    the basis velocities.
    """
    p0 = L.rep.to_quaternion()
    q0 = Lp.rep.to_quaternion()
    T = psi(L, Lp)

    def basis_at(t: float) -> tuple[Quaternion, Quaternion]:
        p = _unit_curve(p0, c, t) if slot == "plus" else p0
        q = _unit_curve(q0, c, t) if slot == "minus" else q0
        pc = p.conj()
        return q * pc, q * I * pc

    ap, bp = basis_at(h)
    am, bm = basis_at(-h)
    va = (ap - am).scale(0.5 / h)
    vb = (bp - bm).scale(0.5 / h)
    return PlaneTangent(T.project_out(va), T.project_out(vb))


def antilinearity_residual(L: ProjectiveLine, Lp: ProjectiveLine, c: complex,
                           h: float = 1e-4) -> float:
    """Residual of dPsi(ic) = -J dPsi(c) in the L slot (antilinearity)."""
    T = psi(L, Lp)
    t1 = psi_tangent(L, Lp, c, "plus", h)
    t2 = psi_tangent(L, Lp, 1j * c, "plus", h)
    r = t2 + grassmann_acs(T, t1)
    return r.norm() / max(t1.norm(), 1e-300)


def complex_linearity_residual(L: ProjectiveLine, Lp: ProjectiveLine, c: complex,
                               h: float = 1e-4) -> float:
    """Residual of dPsi(ic) = +J dPsi(c) in the L' slot (complex-linearity)."""
    T = psi(L, Lp)
    t1 = psi_tangent(L, Lp, c, "minus", h)
    t2 = psi_tangent(L, Lp, 1j * c, "minus", h)
    r = t2 - grassmann_acs(T, t1)
    return r.norm() / max(t1.norm(), 1e-300)
