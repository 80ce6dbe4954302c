import math

import numpy as np
import pytest

from spinc4.projective import (BasePointError, CP2Point, HCrossing, QuatLine,
                               RationalCurve, S4Point, SphereChart,
                               dphi_linearity_check, h_transversality_check,
                               iml_rank_check, inversion_phi, plucker_genus,
                               pr, quat_line_distance, quat_pair_herm)
from spinc4.quaternion import ONE, I, J, K, Quaternion


def random_vec(rng):
    v = rng.standard_normal(4)
    return (complex(v[0], v[1]), complex(v[2], v[3]))


def random_pair(rng):
    return (Quaternion(*rng.standard_normal(4)), Quaternion(*rng.standard_normal(4)))


# ---- pr and Phi ----

def test_pr_basics():
    p = CP2Point(1 + 2j, -0.5, 1.0)
    out = pr(p)
    assert not out.is_infinity
    assert abs(out.y[0] - (1 + 2j)) < 1e-14
    assert abs(out.y[1] - (-0.5)) < 1e-14
    assert pr(CP2Point(1.0, 2j, 0.0)).is_infinity
    # homogeneity
    out2 = pr(CP2Point(2 * (1 + 2j), 2 * (-0.5), 2.0))
    assert abs(out.y[0] - out2.y[0]) < 1e-12


def test_pr_homogeneous_well_defined():
    rng = np.random.default_rng(30)
    for _ in range(200):
        y = random_vec(rng)
        z = complex(*rng.standard_normal(2))
        c = complex(*rng.standard_normal(2))
        if abs(z) < 1e-3 or abs(c) < 1e-3:
            continue
        a = pr(CP2Point(y[0], y[1], z))
        b = pr(CP2Point(c * y[0], c * y[1], c * z))
        assert abs(a.y[0] - b.y[0]) < 1e-12 * max(1.0, abs(a.y[0]))
        assert abs(a.y[1] - b.y[1]) < 1e-12 * max(1.0, abs(a.y[1]))


def test_phi_involution_and_fixed_sphere():
    assert inversion_phi(S4Point.finite(0, 0)).is_infinity
    assert inversion_phi(S4Point.infinity()).y == (0, 0)
    p = S4Point.finite(0.6, 0.8j)  # unit norm
    q = inversion_phi(p)
    assert abs(q.y[0] - 0.6) < 1e-14 and abs(q.y[1] - 0.8j) < 1e-14
    rng = np.random.default_rng(31)
    for _ in range(200):
        p = S4Point.finite(*random_vec(rng))
        pp = inversion_phi(inversion_phi(p))
        assert abs(pp.y[0] - p.y[0]) < 1e-12 * max(1.0, abs(p.y[0]))
        assert abs(pp.y[1] - p.y[1]) < 1e-12 * max(1.0, abs(p.y[1]))


def test_dphi_linearity():
    rep = dphi_linearity_check((1.0, 0.0))
    assert rep["complex_linear_on_perp"] < 1e-8
    assert rep["perp_scale_factor"] < 1e-8
    rep = dphi_linearity_check((2.0, 0.0))
    assert rep["perp_scale_factor"] < 1e-6  # |dPhi(v)| = 1/4 against FD
    rng = np.random.default_rng(32)
    for _ in range(100):
        rep = dphi_linearity_check(random_vec(rng))
        assert rep["complex_linear_on_perp"] < 1e-6
        assert rep["antilinear_on_radial"] < 1e-6
        assert rep["perp_scale_factor"] < 1e-6


def test_iml_rank_and_image():
    for axis in ((1.0, 0.0), (0.0, 1.0)):
        rank, _, angle = iml_rank_check(axis)
        assert rank == 2
        assert angle < 1e-6
    rng = np.random.default_rng(33)
    for _ in range(50):
        rank, _, angle = iml_rank_check(random_vec(rng))
        assert rank == 2
        assert angle < 1e-5


# ---- quaternion lines and Theta ----

def test_quat_line_left_module_invariance():
    rng = np.random.default_rng(34)
    for _ in range(100):
        w = random_pair(rng)
        p = Quaternion(*rng.standard_normal(4))
        if p.norm() < 1e-3:
            continue
        L1 = QuatLine(*w)
        L2 = QuatLine(p * w[0], p * w[1])
        assert quat_line_distance(L1, L2) < 1e-12


def test_theta_round_trip():
    rng = np.random.default_rng(35)
    chart = SphereChart((Quaternion(0.3, -1.2, 0.5, 2.0), Quaternion(1.0, 0.0, -0.7, 0.1)))
    for _ in range(1000):
        y = random_vec(rng)
        p = chart.theta_inverse(chart.theta(S4Point(y)))
        assert not p.is_infinity
        assert abs(p.y[0] - y[0]) < 1e-11 * max(1.0, abs(y[0]))
        assert abs(p.y[1] - y[1]) < 1e-11 * max(1.0, abs(y[1]))


def test_theta_zero_and_infinity():
    chart = SphereChart((Quaternion(), ONE))
    L0 = chart.theta(S4Point.finite(0, 0))
    assert quat_line_distance(L0, QuatLine(Quaternion(), ONE)) < 1e-14
    Linf = chart.theta(S4Point.infinity())
    # Theta(infinity) is the line V = u_perp
    assert quat_pair_herm(Linf.rep(), chart.u).norm() < 1e-14
    assert chart.theta_inverse(Linf).is_infinity


def test_chart_embed_coords_roundtrip():
    chart = SphereChart((Quaternion(0.1, 0.2, 0.3, 0.4), Quaternion(-1.0, 0.5, 0.0, 2.0)))
    rng = np.random.default_rng(36)
    for _ in range(100):
        a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        aa, bb = chart.coords(chart.embed(a, b))
        assert abs(aa - a) < 1e-12 * max(1.0, abs(a))
        assert abs(bb - b) < 1e-12 * max(1.0, abs(b))
    # embed is left-complex-linear: embed(i a, i b) = i . embed(a, b)
    x = chart.embed(1j * 0.5, 1j * (-2.0))
    y = chart.embed(0.5, -2.0)
    iy = (I * y[0], I * y[1])
    assert (x[0] - iy[0]).norm() < 1e-13
    assert (x[1] - iy[1]).norm() < 1e-13


# ---- rational curves ----

def test_evaluate_line_curve():
    line = RationalCurve((1, 0), (0, 1), (1, 1))  # (s, t, s+t)
    vals = line.evaluate(1.0, 0.0)
    point = pr(CP2Point(*vals))
    assert abs(point.y[0] - 1.0) < 1e-14 and abs(point.y[1]) < 1e-14
    # at [1 : -1] the r component vanishes: H-crossing
    assert pr(line.evaluate_point(1.0, -1.0)).is_infinity


def test_curve_derivatives_match_fd():
    rng = np.random.default_rng(37)
    coeffs = lambda: tuple(complex(*rng.standard_normal(2)) for _ in range(4))
    curve = RationalCurve(coeffs(), coeffs(), coeffs())
    h = 1e-6
    for _ in range(20):
        s, t = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        ds, dt = curve.derivatives(s, t)
        for idx in range(3):
            fd = (curve.evaluate(s + h, t)[idx] - curve.evaluate(s - h, t)[idx]) / (2 * h)
            assert abs(fd - ds[idx]) < 1e-5 * max(1.0, abs(ds[idx]))
            fd = (curve.evaluate(s, t + h)[idx] - curve.evaluate(s, t - h)[idx]) / (2 * h)
            assert abs(fd - dt[idx]) < 1e-5 * max(1.0, abs(dt[idx]))


def test_base_point_detection():
    # common factor s: p = s*s, q = s*t, r = s*(s+t)
    bad = RationalCurve((1, 0, 0), (0, 1, 0), (1, 1, 0))
    with pytest.raises(BasePointError):
        bad.validate()
    good = RationalCurve((1, 0, 0), (0, 0, 1), (0, 1, 0))
    good.validate()


def test_h_transversality():
    line = RationalCurve((1, 0), (0, 1), (0, 1))  # r = t: simple root at t=0
    crossings = h_transversality_check(line)
    assert len(crossings) == 1
    assert crossings[0].transverse
    assert abs(crossings[0].t) < 1e-12  # the crossing is [1 : 0]

    double = RationalCurve((1, 0, 0), (0, 0, 1), (0, 0, 1))  # (s^2, t^2, t^2)
    crossings = h_transversality_check(double)
    assert len(crossings) == 1
    assert crossings[0].multiplicity == 2
    assert not crossings[0].transverse

    conic = RationalCurve((1, 0, 0), (0, 0, 1), (0, 1, 0))  # (s^2, t^2, s t)
    crossings = h_transversality_check(conic)
    assert len(crossings) == 2
    assert all(c.transverse for c in crossings)
    params = sorted((abs(c.s), abs(c.t)) for c in crossings)
    assert params[0][0] < 1e-12 or params[0][1] < 1e-12


def test_h_transversality_random_degree3():
    rng = np.random.default_rng(38)
    for _ in range(50):
        coeffs = lambda: tuple(complex(*rng.standard_normal(2)) for _ in range(4))
        curve = RationalCurve(coeffs(), coeffs(), coeffs())
        crossings = h_transversality_check(curve)
        assert sum(c.multiplicity for c in crossings) == 3
        # random cubics have simple roots with probability one
        assert all(c.transverse for c in crossings)
        # oracle: companion-matrix roots of r are pairwise distinct
        roots = np.roots(np.array(curve.r, dtype=complex))
        dists = [abs(a - b) for i, a in enumerate(roots) for b in roots[i + 1:]]
        assert min(dists) > 1e-6


def test_plucker_genus_table():
    assert plucker_genus(1, 0) == 0
    assert plucker_genus(2, 0) == 0
    assert plucker_genus(3, 0) == 1
    assert plucker_genus(3, 1) == 0
    assert plucker_genus(2, 1) is None
    with pytest.raises(ValueError):
        plucker_genus(0, 0)
