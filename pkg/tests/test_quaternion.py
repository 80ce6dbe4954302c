import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinc4.quaternion import (ONE, I, J, K, Quaternion, left_mult_matrix,
                               orientation_det, quat_conj, quat_inv, quat_mul,
                               quat_norm)

RNG = np.random.default_rng(20240811)


def random_quat(rng=RNG, scale=1.0):
    return Quaternion(*(scale * rng.standard_normal(4)))


def test_basis_products():
    assert I * J == K
    assert J * I == -K
    assert J * K == I
    assert K * I == J
    assert I * I == -ONE
    assert J * J == -ONE
    assert K * K == -ONE


def test_identity_element():
    for _ in range(20):
        q = random_quat()
        assert (ONE * q - q).norm() == 0.0
        assert (q * ONE - q).norm() == 0.0


def test_mul_matches_mlt_matrix_oracle():
    # (a+jb)(x+jy) agrees with [[a, -conj b],[b, conj a]] @ (x, y).
    rng = np.random.default_rng(7)
    for _ in range(100):
        a, b, x, y = (complex(*rng.standard_normal(2)) for _ in range(4))
        p = Quaternion.from_right_pair(a, b)
        q = Quaternion.from_right_pair(x, y)
        u, v = (p * q).right_pair()
        uv = left_mult_matrix(p) @ np.array([x, y])
        assert abs(u - uv[0]) < 1e-14 * max(1.0, abs(u))
        assert abs(v - uv[1]) < 1e-14 * max(1.0, abs(v))


def test_left_mult_matrix_basics():
    np.testing.assert_allclose(left_mult_matrix(ONE), np.eye(2), atol=0)
    np.testing.assert_allclose(left_mult_matrix(J),
                               np.array([[0, -1], [1, 0]], dtype=complex), atol=0)
    for _ in range(50):
        p = random_quat()
        det = np.linalg.det(left_mult_matrix(p))
        assert abs(det - p.norm2()) < 1e-13 * max(1.0, p.norm2())


def test_conj_inv_norm():
    assert quat_conj(I) == -I
    assert quat_inv(J) == -J
    q = random_quat()
    qq = q * quat_conj(q)
    assert abs(qq.w - q.norm2()) < 1e-12
    assert qq.imag_part().norm() < 1e-12
    assert (q * quat_inv(q) - ONE).norm() < 1e-13
    with pytest.raises(ZeroDivisionError):
        quat_inv(Quaternion())


def test_right_left_pairs_round_trip_exactly():
    q = Quaternion(0.125, -2.5, 3.0, 0.75)
    a, b = q.right_pair()
    assert Quaternion.from_right_pair(a, b) == q
    al, be = q.left_pair()
    assert Quaternion.from_left_pair(al, be) == q
    # a j = j conj(a) under quaternion multiplication
    for c in (1 + 2j, -0.5j, 3.25):
        lhs = Quaternion.from_complex(c) * J
        rhs = J * Quaternion.from_complex(complex(c).conjugate())
        assert (lhs - rhs).norm() == 0.0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-10, 10, allow_nan=False), min_size=12, max_size=12))
def test_associativity_and_norm_multiplicativity(vals):
    p = Quaternion(*vals[0:4])
    q = Quaternion(*vals[4:8])
    r = Quaternion(*vals[8:12])
    lhs, rhs = (p * q) * r, p * (q * r)
    scale = max(1.0, p.norm() * q.norm() * r.norm())
    assert (lhs - rhs).norm() < 1e-12 * scale
    assert abs((p * q).norm() - p.norm() * q.norm()) < 1e-12 * max(1.0, p.norm() * q.norm())


def test_associativity_bulk():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(10_000):
        p, q, r = (random_quat(rng) for _ in range(3))
        d = ((p * q) * r - p * (q * r)).norm()
        worst = max(worst, d / max(1.0, (p.norm() * q.norm() * r.norm())))
    assert worst < 1e-12


def test_norm_multiplicativity_component_oracle():
    # independent oracle: expand |pq|^2 componentwise with exact floats
    rng = np.random.default_rng(2)
    for _ in range(1000):
        p, q = random_quat(rng), random_quat(rng)
        pq = p * q
        rel = abs(pq.norm() - p.norm() * q.norm()) / max(p.norm() * q.norm(), 1e-300)
        assert rel < 1e-12


def test_negative_orientation_of_1ijk():
    # (1, i, j, -k) is the positive basis; the change of basis to (1, i, j, k)
    # has negative determinant.
    m = np.diag([1.0, 1.0, 1.0, -1.0])
    assert np.linalg.det(m) < 0
    assert orientation_det(ONE, I, J, -K) > 0
    assert orientation_det(ONE, I, J, K) < 0
