"""Ambient-space models: CP^2, the 4-sphere S = V u {infinity}, and HP^1.

The projective plane P = P(V x C) is written in homogeneous coordinates
[y : z] with y in a Hermitian plane V and z complex.  The projection
pr([y, z]) = y/z (infinity when z = 0) collapses the line at infinity H to a
point, and Phi(y) = y/|y|^2 is the inversion swapping 0 and infinity.

The quaternion plane W = H^2 is a *left* H-module with the sesquilinear inner
product <x, y> = x1 conj(y1) + x2 conj(y2), so <p x, q y> = p <x, y> conj(q).
Its lines are L = H w; restricting scalars to C = span(1, i) (acting on the
left) makes each line a Hermitian plane with complex basis (w, j w) for any
unit w.  The chart Theta(y) = H(y + u), Theta(infinity) = u_perp identifies
S with P(W) once V is taken to be u_perp.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .quaternion import Quaternion

__all__ = [
    "CP2Point",
    "S4Point",
    "QuatLine",
    "RationalCurve",
    "HCrossing",
    "LineFrame",
    "SphereChart",
    "BasePointError",
    "pr",
    "inversion_phi",
    "dphi_linearity_check",
    "iml_rank_check",
    "plucker_genus",
    "h_transversality_check",
    "quat_pair_herm",
    "quat_pair_norm",
    "quat_line_distance",
]

Vec = tuple[complex, complex]
QuatPair = tuple[Quaternion, Quaternion]


# ---------------------------------------------------------------------------
# CP^2 and the 4-sphere
# ---------------------------------------------------------------------------

def _cnorm(y: Vec) -> float:
    return math.sqrt(abs(y[0]) ** 2 + abs(y[1]) ** 2)


@dataclass(frozen=True, slots=True)
class CP2Point:
    """Point [y1 : y2 : z] of P(V x C), normalized to unit norm and canonical
    phase (largest-modulus coordinate made real positive)."""

    y1: complex
    y2: complex
    z: complex

    def __post_init__(self):
        coords = (self.y1, self.y2, self.z)
        n = math.sqrt(sum(abs(c) ** 2 for c in coords))
        if n == 0.0:
            raise ValueError("homogeneous coordinates cannot all vanish")
        pivot = max(coords, key=abs)
        scale = (abs(pivot) / pivot) / n
        object.__setattr__(self, "y1", self.y1 * scale)
        object.__setattr__(self, "y2", self.y2 * scale)
        object.__setattr__(self, "z", self.z * scale)

    def y(self) -> Vec:
        return (self.y1, self.y2)

    def distance(self, other: "CP2Point") -> float:
        ip = (self.y1 * other.y1.conjugate() + self.y2 * other.y2.conjugate()
              + self.z * other.z.conjugate())
        phase = ip / abs(ip) if ip != 0 else 1.0
        return math.sqrt(abs(self.y1 - phase * other.y1) ** 2
                         + abs(self.y2 - phase * other.y2) ** 2
                         + abs(self.z - phase * other.z) ** 2)


@dataclass(frozen=True, slots=True)
class S4Point:
    """Point of S = V u {infinity}: either Finite(y) or Infinity."""

    y: Vec | None

    @staticmethod
    def finite(y1: complex, y2: complex) -> "S4Point":
        return S4Point((complex(y1), complex(y2)))

    @staticmethod
    def infinity() -> "S4Point":
        return S4Point(None)

    @property
    def is_infinity(self) -> bool:
        return self.y is None

    def distance(self, other: "S4Point") -> float:
        """Chordal distance through the two charts (identity and Phi)."""
        a, b = self, other
        if a.is_infinity and b.is_infinity:
            return 0.0
        pa, pb = inversion_phi(a), inversion_phi(b)
        d_main = _cnorm((a.y[0] - b.y[0], a.y[1] - b.y[1])) \
            if (a.y is not None and b.y is not None) else math.inf
        d_phi = _cnorm((pa.y[0] - pb.y[0], pa.y[1] - pb.y[1])) \
            if (pa.y is not None and pb.y is not None) else math.inf
        return min(d_main, d_phi)


def pr(point: CP2Point) -> S4Point:
    """pr([y, z]) = y/z when z is nonzero, infinity otherwise."""
    if abs(point.z) <= 1e-15:
        return S4Point.infinity()
    return S4Point.finite(point.y1 / point.z, point.y2 / point.z)


def inversion_phi(p: S4Point) -> S4Point:
    """Phi(y) = y/|y|^2, Phi(0) = infinity, Phi(infinity) = 0."""
    if p.is_infinity:
        return S4Point.finite(0.0, 0.0)
    n2 = abs(p.y[0]) ** 2 + abs(p.y[1]) ** 2
    if n2 == 0.0:
        return S4Point.infinity()
    return S4Point.finite(p.y[0] / n2, p.y[1] / n2)


def _phi_map(y: Vec) -> Vec:
    n2 = abs(y[0]) ** 2 + abs(y[1]) ** 2
    return (y[0] / n2, y[1] / n2)


def dphi_linearity_check(y: Vec, h: float = 1e-4) -> dict[str, float]:
    """Finite-difference residuals of the (anti)linearity of dPhi at y.

    dPhi is complex-linear on the orthogonal complement of y, where it acts by
    multiplication by |y|^{-2}, and antilinear on the line C y.
    """
    ny = _cnorm(y)
    if ny == 0.0:
        raise ValueError("dphi_linearity_check needs a nonzero base point")
    v_perp = (-y[1].conjugate() / ny, y[0].conjugate() / ny)
    v_rad = (y[0] / ny, y[1] / ny)
    h = h * ny  # Phi is homogeneous of degree -1: scale the step with |y|

    def d(v: Vec) -> Vec:
        plus = _phi_map((y[0] + h * v[0], y[1] + h * v[1]))
        minus = _phi_map((y[0] - h * v[0], y[1] - h * v[1]))
        return ((plus[0] - minus[0]) / (2 * h), (plus[1] - minus[1]) / (2 * h))

    def times_i(v: Vec) -> Vec:
        return (1j * v[0], 1j * v[1])

    dv = d(v_perp)
    div = d(times_i(v_perp))
    lin = _cnorm((div[0] - 1j * dv[0], div[1] - 1j * dv[1]))
    scale = _cnorm((dv[0] - v_perp[0] / ny ** 2, dv[1] - v_perp[1] / ny ** 2))

    dr = d(v_rad)
    dir_ = d(times_i(v_rad))
    anti = _cnorm((dir_[0] + 1j * dr[0], dir_[1] + 1j * dr[1]))
    return {
        "complex_linear_on_perp": lin * ny ** 2,
        "antilinear_on_radial": anti * ny ** 2,
        "perp_scale_factor": scale * ny ** 2,
    }


def iml_rank_check(y0: Vec, h: float = 1e-5,
                   rank_tol: float = 1e-7) -> tuple[int, np.ndarray, float]:
    """Rank and image of d(Phi o pr) at the point [y0 : 0] of P.

    Phi(pr([y : z])) = conj(z) y / |y|^2 in the Phi-chart, which is smooth
    across H.  Returns (numerical rank, 4 x 2 matrix whose columns span the
    image as a real plane in V, angular distance of that plane to the real
    span of (y0, i y0)).
    """
    ny = _cnorm(y0)
    if ny == 0.0:
        raise ValueError("iml_rank_check needs a nonzero line direction")
    y0 = (y0[0] / ny, y0[1] / ny)
    e = (-y0[1].conjugate(), y0[0].conjugate())  # unit, orthogonal to y0

    def g(z1: complex, z2: complex) -> np.ndarray:
        y = (y0[0] + z1 * e[0], y0[1] + z1 * e[1])
        n2 = abs(y[0]) ** 2 + abs(y[1]) ** 2
        w = (z2.conjugate() * y[0] / n2, z2.conjugate() * y[1] / n2)
        return np.array([w[0].real, w[0].imag, w[1].real, w[1].imag])

    dirs = [(1.0, 0.0), (1j, 0.0), (0.0, 1.0), (0.0, 1j)]
    cols = []
    for d1, d2 in dirs:
        cols.append((g(h * d1, h * d2) - g(-h * d1, -h * d2)) / (2 * h))
    jac = np.stack(cols, axis=1)
    u, s, _ = np.linalg.svd(jac)
    rank = int(np.sum(s > rank_tol * max(s[0], 1e-300)))
    image = u[:, :2]
    target = np.stack([
        [y0[0].real, y0[0].imag, y0[1].real, y0[1].imag],
        [(1j * y0[0]).real, (1j * y0[0]).imag, (1j * y0[1]).real, (1j * y0[1]).imag],
    ], axis=1)
    target, _ = np.linalg.qr(target)
    overlaps = np.linalg.svd(image.T @ target, compute_uv=False)
    angle = math.acos(min(max(overlaps.min(), -1.0), 1.0))
    return rank, image, angle


# ---------------------------------------------------------------------------
# Quaternion lines in W = H^2
# ---------------------------------------------------------------------------

def quat_pair_herm(x: QuatPair, y: QuatPair) -> Quaternion:
    """<x, y> = x1 conj(y1) + x2 conj(y2); left-linear in x."""
    return x[0] * y[0].conj() + x[1] * y[1].conj()


def quat_pair_norm(x: QuatPair) -> float:
    return math.sqrt(x[0].norm2() + x[1].norm2())


def _pair_scale(p: Quaternion, x: QuatPair) -> QuatPair:
    return (p * x[0], p * x[1])


def _pair_sub(x: QuatPair, y: QuatPair) -> QuatPair:
    return (x[0] - y[0], x[1] - y[1])


@dataclass(frozen=True, slots=True)
class QuatLine:
    """Quaternion line H w in W = H^2, stored by a unit representative.

    Equality is modulo left multiplication of the representative by a unit
    quaternion; canonical() left-rotates the larger component to be real
    positive.
    """

    w1: Quaternion
    w2: Quaternion

    def __post_init__(self):
        n = quat_pair_norm((self.w1, self.w2))
        if n == 0.0:
            raise ValueError("quaternion line needs a nonzero representative")
        if abs(n - 1.0) > 1e-12:
            object.__setattr__(self, "w1", self.w1.scale(1.0 / n))
            object.__setattr__(self, "w2", self.w2.scale(1.0 / n))

    def rep(self) -> QuatPair:
        return (self.w1, self.w2)

    def canonical(self) -> "QuatLine":
        pivot = self.w1 if self.w1.norm() >= self.w2.norm() else self.w2
        p = pivot.conj().scale(1.0 / pivot.norm())
        return QuatLine(*_pair_scale(p, self.rep()))

    def project(self, x: QuatPair) -> QuatPair:
        """Orthogonal projection of x onto the line: <x, w> w for unit w."""
        return _pair_scale(quat_pair_herm(x, self.rep()), self.rep())

    def project_out(self, x: QuatPair) -> QuatPair:
        return _pair_sub(x, self.project(x))

    def distance(self, other: "QuatLine") -> float:
        return quat_line_distance(self, other)


def quat_line_distance(L1: QuatLine, L2: QuatLine) -> float:
    """Norm of the component of rep(L1) orthogonal to L2 (sine of the angle)."""
    return quat_pair_norm(L2.project_out(L1.rep()))


# ---------------------------------------------------------------------------
# Rational curves [p : q : r] and the hyperplane at infinity
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class LineFrame:
    """Adapted spinor frame at a quaternion line L = H w.

    w_hat is a unit representative of L and m a unit vector of the orthogonal
    line; (w_hat, j w_hat) and (m, j m) are complex bases of the fibres
    sigma+ = L and sigma- = L_perp (complex scalars acting on the left), and
    the canonical wedge identifications send both bases to 1 in K =  C.  In
    these frames Clifford multiplication is quaternion multiplication: the
    tangent vector A with A(w_hat) = a m + b (j m) has quaternion coordinates
    a + j b.
    """

    w_hat: QuatPair
    m: QuatPair

    def line(self) -> QuatLine:
        return QuatLine(*self.w_hat)

    def plus_coords(self, x: QuatPair) -> tuple[complex, complex]:
        """Left-pair coordinates of the L-component of x in (w_hat, j w_hat)."""
        return quat_pair_herm(x, self.w_hat).left_pair()

    def tangent_quat(self, xi: QuatPair) -> Quaternion:
        """Quaternion coordinates of the tangent vector d pi_w(xi) in V.

        xi is a velocity of representatives; its class mod L determines the
        H-linear map A: L -> W/L =~ L_perp, read off in the frame (m, j m).
        """
        line = QuatLine(*self.w_hat)
        perp = line.project_out(xi)
        a, b = quat_pair_herm(perp, self.m).left_pair()
        return Quaternion.from_right_pair(a, b)


def _unit_perp_pair(w: QuatPair, seed: QuatPair | None = None) -> QuatPair:
    """Unit vector orthogonal to the quaternion line H w."""
    line = QuatLine(*w)
    candidates = [seed] if seed is not None else []
    candidates += [(Quaternion(1.0), Quaternion()), (Quaternion(), Quaternion(1.0))]
    best, best_norm = None, 0.0
    for cand in candidates:
        if cand is None:
            continue
        res = line.project_out(cand)
        n = quat_pair_norm(res)
        if n > best_norm:
            best, best_norm = res, n
        if n > 0.7:
            break
    if best is None or best_norm < 1e-8:
        raise ValueError("could not build an orthogonal frame")
    return (best[0].scale(1.0 / best_norm), best[1].scale(1.0 / best_norm))


class SphereChart:
    """The identification Theta: S = V u {infinity} -> P(W) for V = u_perp.

    V is the quaternion line orthogonal to u, treated as a Hermitian plane
    with complex basis (v, j v) for a fixed unit v; points of V are stored by
    their complex coordinates (alpha, beta), i.e. as the quaternion
    (alpha + beta j) acting on v from the left.  Theta(y) = H(y + u) and
    Theta(infinity) = u_perp itself.
    """

    def __init__(self, u: QuatPair):
        nu = quat_pair_norm(u)
        if nu == 0.0:
            raise ValueError("the defining vector u must be nonzero")
        self.u: QuatPair = (u[0], u[1])
        self.u_norm2 = nu * nu
        self.v = _unit_perp_pair(u)

    def embed(self, alpha: complex, beta: complex) -> QuatPair:
        """W-vector of the V-point with coordinates (alpha, beta)."""
        return _pair_scale(Quaternion.from_left_pair(alpha, beta), self.v)

    def coords(self, y: QuatPair) -> tuple[complex, complex]:
        """Inverse of embed on V (the H v component coordinates)."""
        return quat_pair_herm(y, self.v).left_pair()

    def theta(self, point: S4Point) -> QuatLine:
        if point.is_infinity:
            return QuatLine(*self.v)
        y = self.embed(*point.y)
        return QuatLine(y[0] + self.u[0], y[1] + self.u[1])

    def theta_inverse(self, L: QuatLine, tol: float = 1e-13) -> S4Point:
        w = L.rep()
        c = quat_pair_herm(w, self.u).scale(1.0 / self.u_norm2)
        if c.norm() <= tol:
            return S4Point.infinity()
        y = _pair_sub(_pair_scale(c.inverse(), w), self.u)
        return S4Point(self.coords(y))

    def frame_at(self, w_raw: QuatPair,
                 seed_m: QuatPair | None = None) -> LineFrame:
        """Adapted frame at H w_raw; w_hat = w_raw/|w_raw| varies continuously
        with w_raw, and m follows seed_m when one is supplied."""
        n = quat_pair_norm(w_raw)
        if n == 0.0:
            raise ValueError("zero vector spans no line")
        w_hat = (w_raw[0].scale(1.0 / n), w_raw[1].scale(1.0 / n))
        return LineFrame(w_hat, _unit_perp_pair(w_hat, seed_m))


class BasePointError(ValueError):
    """Raised when a parametrization hits p = q = r = 0."""


@dataclass(frozen=True)
class RationalCurve:
    """Homogeneous polynomial triple (p, q, r) in (s, t) of common degree.

    Coefficient index k holds the coefficient of s^(d-k) t^k.  The curve maps
    [s : t] to [p : q : r] in CP^2, with (p, q) the V part and r the z part.
    """

    p: tuple[complex, ...]
    q: tuple[complex, ...]
    r: tuple[complex, ...]

    def __post_init__(self):
        d = len(self.p) - 1
        if d < 1 or len(self.q) != d + 1 or len(self.r) != d + 1:
            raise ValueError("p, q, r must share a common degree >= 1")
        object.__setattr__(self, "p", tuple(complex(c) for c in self.p))
        object.__setattr__(self, "q", tuple(complex(c) for c in self.q))
        object.__setattr__(self, "r", tuple(complex(c) for c in self.r))

    @property
    def degree(self) -> int:
        return len(self.p) - 1

    def components(self) -> tuple[tuple[complex, ...], ...]:
        return self.p, self.q, self.r

    def _scale(self) -> float:
        return max(max(abs(c) for c in cs) for cs in self.components())

    def evaluate(self, s: complex, t: complex) -> tuple[complex, complex, complex]:
        if s == 0 and t == 0:
            raise ValueError("(s, t) = (0, 0) is not a parameter point")
        vals = tuple(_eval_homog(cs, s, t) for cs in self.components())
        scale = self._scale() * max(abs(s), abs(t)) ** self.degree
        if all(abs(v) <= 1e-12 * scale for v in vals):
            raise BasePointError(f"base point at [{s} : {t}]")
        return vals

    def evaluate_point(self, s: complex, t: complex) -> CP2Point:
        return CP2Point(*self.evaluate(s, t))

    def derivatives(self, s: complex, t: complex
                    ) -> tuple[tuple[complex, complex, complex],
                               tuple[complex, complex, complex]]:
        """Analytic partials (d/ds, d/dt) of (p, q, r) at (s, t)."""
        ds = tuple(_eval_homog(_deriv_s(cs), s, t) for cs in self.components())
        dt = tuple(_eval_homog(_deriv_t(cs), s, t) for cs in self.components())
        return ds, dt

    def validate(self) -> None:
        """Reject curves with base points (common zeros of p, q, r)."""
        scale = self._scale()
        roots = _homog_roots(self.p, scale)
        for s, t in roots:
            norm = max(abs(s), abs(t))
            vq = abs(_eval_homog(self.q, s, t))
            vr = abs(_eval_homog(self.r, s, t))
            if max(vq, vr) <= 1e-9 * scale * norm ** self.degree:
                raise BasePointError(
                    f"p, q, r share the zero [{s:.6g} : {t:.6g}]")


def _eval_homog(coeffs: tuple[complex, ...], s: complex, t: complex) -> complex:
    d = len(coeffs) - 1
    return sum(c * s ** (d - k) * t ** k for k, c in enumerate(coeffs))


def _deriv_s(coeffs: tuple[complex, ...]) -> tuple[complex, ...]:
    d = len(coeffs) - 1
    out = tuple(c * (d - k) for k, c in enumerate(coeffs[:-1]))
    return out if out else (0.0,)


def _deriv_t(coeffs: tuple[complex, ...]) -> tuple[complex, ...]:
    out = tuple(c * k for k, c in enumerate(coeffs) if k >= 1)
    return out if out else (0.0,)


def _homog_roots(coeffs: tuple[complex, ...], scale: float
                 ) -> list[tuple[complex, complex]]:
    """Roots of a homogeneous polynomial on the parameter sphere, as [s : t]
    pairs with t = 1, plus [1 : 0] repeated for each degree drop."""
    d = len(coeffs) - 1
    tol = 1e-12 * max(scale, 1e-300)
    lead = 0
    while lead <= d and abs(coeffs[lead]) <= tol:
        lead += 1
    roots: list[tuple[complex, complex]] = [(1.0, 0.0)] * lead
    reduced = coeffs[lead:]
    if len(reduced) >= 2:
        # coefficient k of s^(d'-k) t^k is the descending-power coefficient in
        # the affine variable z = s/t
        for z in np.roots(np.array(reduced, dtype=complex)):
            roots.append((complex(z), 1.0))
    return roots


@dataclass(frozen=True, slots=True)
class HCrossing:
    """A parameter point where the curve meets the line at infinity."""

    s: complex
    t: complex
    multiplicity: int
    transverse: bool
    dr_along_curve: float


def h_transversality_check(curve: RationalCurve,
                           tol: float = 1e-8) -> list[HCrossing]:
    """H-crossings of the curve (roots of r) with transversality verdicts.

    A crossing is transverse iff the root is simple, i.e. the derivative of r
    along the curve parameter does not vanish there.
    """
    scale = max(abs(c) for c in curve.r)
    if scale == 0.0:
        raise ValueError("r vanishes identically: the curve lies in H")
    d = curve.degree
    raw = _homog_roots(curve.r, scale)
    # cluster equal roots to get multiplicities
    clusters: list[list[tuple[complex, complex]]] = []
    for s, t in raw:
        for cl in clusters:
            s0, t0 = cl[0]
            if abs(s * t0 - s0 * t) <= 1e-7 * max(1.0, abs(s)) * max(1.0, abs(s0)):
                cl.append((s, t))
                break
        else:
            clusters.append([(s, t)])
    out = []
    for cl in clusters:
        s, t = cl[0]
        mult = len(cl)
        ds, dt = curve.derivatives(s, t)
        norm = max(abs(s), abs(t))
        dr = math.hypot(abs(ds[2]), abs(dt[2])) / (scale * norm ** (d - 1))
        out.append(HCrossing(s, t, mult, mult == 1 and dr > tol, dr))
    return sorted(out, key=lambda c: (abs(c.t) < 1e-12, c.s.real, c.s.imag))


def plucker_genus(d: int, delta: int) -> int | None:
    """Genus ((d-1)(d-2) - 2 delta)/2 of a degree-d curve with delta nodes;
    None when the count is negative (over-noded)."""
    if d < 1 or delta < 0:
        raise ValueError("need degree d >= 1 and delta >= 0")
    g2 = (d - 1) * (d - 2) - 2 * delta
    if g2 < 0:
        return None
    return g2 // 2
