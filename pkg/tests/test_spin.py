import math

import numpy as np
import pytest

from spinc4.quaternion import ONE, I, J, K, Quaternion, left_mult_matrix
from spinc4.spin import (MINUS, PLUS, DegenerateSpinorError, Spinor,
                         adapt_bases, clifford_mul, det_v, herm, v_dot, wedge)


def random_spinor(rng, chirality=PLUS):
    v = rng.standard_normal(4)
    return Spinor(complex(v[0], v[1]), complex(v[2], v[3]), chirality)


def test_wedge_standard_basis():
    assert wedge(Spinor(1, 0), Spinor(0, 1)) == 1
    phi = Spinor(0.3 + 1j, -2.0)
    assert wedge(phi, phi) == 0


def test_wedge_chirality_contract():
    with pytest.raises(ValueError):
        wedge(Spinor(1, 0, PLUS), Spinor(0, 1, MINUS))


def test_wedge_norm_identity():
    rng = np.random.default_rng(3)
    for _ in range(2000):
        phi, chi = random_spinor(rng), random_spinor(rng)
        lhs = abs(wedge(phi, chi)) ** 2
        rhs = phi.norm2() * chi.norm2() - abs(herm(phi, chi)) ** 2
        assert abs(lhs - rhs) < 1e-12 * max(1.0, phi.norm2() * chi.norm2())


def test_wedge_unit_orthogonal():
    rng = np.random.default_rng(4)
    for _ in range(500):
        phi = random_spinor(rng).normalized()
        chi = random_spinor(rng)
        chi = (chi - phi.scale(herm(chi, phi))).normalized()
        assert abs(abs(wedge(phi, chi)) - 1.0) < 1e-12


def test_clifford_is_quaternion_multiplication():
    phi = Spinor(0.5 - 1j, 2.0 + 0.25j)
    out = clifford_mul(ONE, phi)
    assert out.chirality == MINUS
    assert (out.a, out.b) == (phi.a, phi.b)
    # j * 1 = j, i.e. spinor (1,0) -> (0,1)
    out = clifford_mul(J, Spinor(1, 0))
    assert abs(out.a) < 1e-15 and abs(out.b - 1) < 1e-15


def test_clifford_homothety():
    rng = np.random.default_rng(5)
    for _ in range(2000):
        A = Quaternion(*rng.standard_normal(4))
        phi = random_spinor(rng)
        out = clifford_mul(A, phi)
        rel = abs(out.norm() - A.norm() * phi.norm()) / max(A.norm() * phi.norm(), 1e-300)
        assert rel < 1e-12


def test_det_v():
    assert det_v(Quaternion()) == 0.0
    assert det_v(I) == 1.0
    rng = np.random.default_rng(6)
    for _ in range(500):
        A = Quaternion(*rng.standard_normal(4))
        det = np.linalg.det(left_mult_matrix(A))
        assert abs(det_v(A) - det.real) < 1e-13 * max(1.0, det_v(A))
        assert abs(det.imag) < 1e-13 * max(1.0, det_v(A))
        assert det_v(A) >= 0.0


def test_v_dot_matches_quarter_real_trace():
    rng = np.random.default_rng(7)
    for _ in range(200):
        A = Quaternion(*rng.standard_normal(4))
        B = Quaternion(*rng.standard_normal(4))
        ma, mb = left_mult_matrix(A), left_mult_matrix(B)
        # real trace of A* B on C^2 viewed as R^4 is 2 Re trace_C
        tr = 2.0 * np.trace(ma.conj().T @ mb).real
        assert abs(4.0 * v_dot(A, B) - tr) < 1e-12 * max(1.0, abs(tr))


def check_bss(bases, tol=1e-12):
    for s in (bases.phi_plus, bases.chi_plus, bases.phi_minus, bases.chi_minus):
        assert abs(s.norm() - 1.0) < tol
    assert abs(herm(bases.phi_plus, bases.chi_plus)) < tol
    assert abs(herm(bases.phi_minus, bases.chi_minus)) < tol
    wplus = wedge(bases.phi_plus, bases.chi_plus)
    wminus = wedge(bases.phi_minus, bases.chi_minus)
    assert abs(wplus - wminus) < tol


def test_adapt_bases_examples():
    b = adapt_bases(Spinor(1, 0))
    assert (b.phi_plus.a, b.phi_plus.b) == (1, 0)
    assert (b.chi_plus.a, b.chi_plus.b) == (0, 1)
    assert wedge(b.phi_plus, b.chi_plus) == 1

    b = adapt_bases(Spinor(0, 2))
    assert abs(b.phi_plus.a) < 1e-15 and abs(b.phi_plus.b - 1) < 1e-15
    assert abs(b.chi_plus.a + 1) < 1e-15 and abs(b.chi_plus.b) < 1e-15
    check_bss(b)


def test_adapt_bases_random():
    rng = np.random.default_rng(8)
    for _ in range(500):
        b = adapt_bases(random_spinor(rng))
        check_bss(b)


def test_adapt_bases_rejects_zero():
    with pytest.raises(DegenerateSpinorError):
        adapt_bases(Spinor(0, 0))


def test_spinor_quaternion_identification():
    # Spinor(a, b) <-> a + j b, and Clifford multiplication transports along it.
    rng = np.random.default_rng(9)
    for _ in range(200):
        A = Quaternion(*rng.standard_normal(4))
        phi = random_spinor(rng)
        lhs = clifford_mul(A, phi).to_quaternion()
        rhs = A * phi.to_quaternion()
        assert (lhs - rhs).norm() < 1e-13 * max(1.0, rhs.norm())
