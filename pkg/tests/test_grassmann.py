import math

import numpy as np
import pytest

from spinc4.quaternion import ONE, I, J, K, Quaternion
from spinc4.grassmann import (MembershipVerdict, OrientedPlane, PlaneTangent,
                              ProjectiveLine, antilinearity_residual,
                              complex_linearity_residual, grassmann_acs,
                              membership, membership_direct, plane_complement,
                              plane_distance, projective_distance, psi,
                              psi_inverse, psi_tangent)
from spinc4.spin import MINUS, PLUS, Spinor, clifford_mul, herm


def random_line(rng, chirality=PLUS):
    v = rng.standard_normal(4)
    return ProjectiveLine(Spinor(complex(v[0], v[1]), complex(v[2], v[3]), chirality))


def random_plane(rng):
    return psi(random_line(rng, PLUS), random_line(rng, MINUS))


def line_pair(rng):
    return random_line(rng, PLUS), random_line(rng, MINUS)


L_E1 = ProjectiveLine(Spinor(1, 0, PLUS))
LP_E1 = ProjectiveLine(Spinor(1, 0, MINUS))
LP_E2 = ProjectiveLine(Spinor(0, 1, MINUS))


def test_psi_hand_examples():
    T = psi(L_E1, LP_E1)
    assert (T.a - ONE).norm() < 1e-15
    assert (T.b - I).norm() < 1e-15

    T = psi(L_E1, LP_E2)  # p = 1, q = j: basis (j, j i) = (j, -k)
    assert (T.a - J).norm() < 1e-15
    assert (T.b + K).norm() < 1e-15


def test_psi_maps_L_into_Lprime():
    rng = np.random.default_rng(11)
    for _ in range(500):
        L, Lp = line_pair(rng)
        T = psi(L, Lp)
        for A in (T.a, T.b):
            image = ProjectiveLine(clifford_mul(A, L.rep))
            assert projective_distance(image, Lp) < 1e-10


def test_psi_inverse_hand_example():
    T = OrientedPlane(ONE, I)
    L, Lp = psi_inverse(T)
    assert projective_distance(L, L_E1) < 1e-12
    assert projective_distance(Lp, LP_E1) < 1e-12


def test_psi_roundtrip():
    rng = np.random.default_rng(12)
    worst_line, worst_plane = 0.0, 0.0
    for _ in range(2000):
        L, Lp = line_pair(rng)
        T = psi(L, Lp)
        L2, Lp2 = psi_inverse(T)
        worst_line = max(worst_line, projective_distance(L, L2),
                         projective_distance(Lp, Lp2))
        worst_plane = max(worst_plane, plane_distance(T, psi(L2, Lp2)))
    assert worst_line < 1e-9
    assert worst_plane < 1e-9


def test_psi_inverse_basis_invariance():
    rng = np.random.default_rng(13)
    for _ in range(200):
        T = random_plane(rng)
        theta = rng.uniform(0, 2 * math.pi)
        L1, Lp1 = psi_inverse(T)
        L2, Lp2 = psi_inverse(T.rotate_basis(theta))
        assert projective_distance(L1, L2) < 1e-9
        assert projective_distance(Lp1, Lp2) < 1e-9


def test_psi_inverse_rejects_bad_basis():
    with pytest.raises(ValueError):
        psi_inverse(OrientedPlane(ONE, ONE + I.scale(0.5)))


def test_plane_complement_example():
    T = OrientedPlane(ONE, I)
    comp = plane_complement(T)
    # underlying plane is span(j, k)
    for v in (J, K):
        assert comp.project_out(v).norm() < 1e-12
    # orientation agrees with Psi(L_perp, L')
    L, Lp = psi_inverse(T)
    assert plane_distance(comp, psi(L.perp(), Lp)) < 1e-10
    # and the unoriented complement of the complement is T again
    comp2 = plane_complement(comp)
    assert comp2.project_out(T.a).norm() < 1e-12
    assert comp2.project_out(T.b).norm() < 1e-12


def test_plane_complement_property_b():
    rng = np.random.default_rng(14)
    for _ in range(1000):
        L, Lp = line_pair(rng)
        T = psi(L, Lp)
        assert plane_distance(plane_complement(T), psi(L.perp(), Lp)) < 1e-10


def test_perp_is_orthogonal():
    rng = np.random.default_rng(15)
    for _ in range(200):
        L = random_line(rng)
        assert abs(herm(L.rep, L.perp().rep)) < 1e-13


def test_membership_definitional():
    rng = np.random.default_rng(16)
    for _ in range(300):
        L, Lp = line_pair(rng)
        T = psi(L, Lp)
        assert membership(T, L.rep) is MembershipVerdict.IN_L
        assert membership(T, L.perp().rep) is MembershipVerdict.IN_L_PERP
        psi_random = Spinor(complex(*rng.standard_normal(2)),
                            complex(*rng.standard_normal(2)))
        got = membership(T, psi_random)
        assert got is membership_direct(T, psi_random)


def test_membership_trichotomy():
    rng = np.random.default_rng(17)
    neither = 0
    for _ in range(300):
        T = random_plane(rng)
        s = Spinor(complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        v = membership(T, s)
        if v is MembershipVerdict.NEITHER:
            neither += 1
    assert neither == 300  # random spinors almost surely avoid both lines
    with pytest.raises(ValueError):
        membership(random_plane(rng), Spinor(0, 0))


def test_membership_matches_bpsi_equals_i_apsi():
    rng = np.random.default_rng(18)
    disagreements = 0
    for k in range(2000):
        L, Lp = line_pair(rng)
        T = psi(L, Lp)
        if k % 3 == 0:
            s = L.rep.scale(complex(*rng.standard_normal(2)))
        elif k % 3 == 1:
            s = L.perp().rep.scale(complex(*rng.standard_normal(2)))
        else:
            s = Spinor(complex(*rng.standard_normal(2)),
                       complex(*rng.standard_normal(2)))
        if s.norm() < 1e-6:
            continue
        if membership(T, s) is not membership_direct(T, s):
            disagreements += 1
    assert disagreements == 0


def test_grassmann_acs_square_is_minus_one():
    rng = np.random.default_rng(19)
    T = random_plane(rng)
    t = PlaneTangent(T.project_out(Quaternion(*rng.standard_normal(4))),
                     T.project_out(Quaternion(*rng.standard_normal(4))))
    tt = grassmann_acs(T, grassmann_acs(T, t))
    assert (tt + t).norm() < 1e-14
    zero = PlaneTangent(Quaternion(), Quaternion())
    assert grassmann_acs(T, zero).norm() == 0.0


def test_antilinearity_and_complex_linearity():
    rng = np.random.default_rng(20)
    for _ in range(50):
        L, Lp = line_pair(rng)
        phase = rng.uniform(0, 2 * math.pi)
        c = complex(math.cos(phase), math.sin(phase))
        assert antilinearity_residual(L, Lp, c) < 1e-6
        assert complex_linearity_residual(L, Lp, c) < 1e-6


def test_canonical_representative():
    L = ProjectiveLine(Spinor(1j * 0.8, 0.6))
    c = L.canonical().rep
    assert abs(c.a.imag) < 1e-15 and c.a.real > 0
    # zero first component: phase moves to the second
    L = ProjectiveLine(Spinor(0, 1j))
    c = L.canonical().rep
    assert abs(c.b - 1) < 1e-15


def test_from_span_orientation_and_rank():
    v1 = ONE.scale(2.0)
    v2 = ONE + I  # independent but not orthogonal
    T = OrientedPlane.from_span(v1, v2)
    assert T.orthonormality_defect() < 1e-12
    assert plane_distance(T, OrientedPlane(ONE, I)) < 1e-12
    with pytest.raises(ValueError):
        OrientedPlane.from_span(ONE, ONE.scale(3.0))
