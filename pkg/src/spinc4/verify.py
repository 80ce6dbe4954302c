"""Named residual suites behind the `verify` command.

Each suite draws `samples` random configurations from a seeded generator,
evaluates one identity of the model, and reports the worst residual against
its tolerance.  Suites are independent of the code paths they check where a
second route exists (matrix oracles, finite differences, direct membership
tests), so a conventions bug in one path shows up as a residual here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grassmann import (MembershipVerdict, OrientedPlane, ProjectiveLine,
                        antilinearity_residual, complex_linearity_residual,
                        membership, membership_direct, plane_complement,
                        plane_distance, projective_distance, psi, psi_inverse)
from .higgs import (StandardHiggsField, local_representatives, split_at,
                    wedge_identity_residual, winding_number)
from .immersion import AnalysisOptions, ImmersionSpec, analyze, maslov_windings
from .projective import (RationalCurve, SphereChart, dphi_linearity_check,
                         h_transversality_check, iml_rank_check, pr,
                         quat_pair_herm, quat_pair_norm, CP2Point)
from .quaternion import ONE, I, J, K, Quaternion, left_mult_matrix, orientation_det
from .spin import MINUS, PLUS, Spinor, adapt_bases, clifford_mul, det_v, herm, wedge

__all__ = ["SuiteResult", "run_suites", "SUITES"]


@dataclass
class SuiteResult:
    name: str
    max_residual: float
    tol: float
    passed: bool
    samples: int
    detail: str = ""

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return (f"{flag}  {self.name:32s} max_residual={self.max_residual:.3e} "
                f"tol={self.tol:.1e} samples={self.samples}")


def _rand_quat(rng, scale=1.0) -> Quaternion:
    return Quaternion(*(scale * rng.standard_normal(4)))


def _rand_spinor(rng, chirality=PLUS) -> Spinor:
    v = rng.standard_normal(4)
    return Spinor(complex(v[0], v[1]), complex(v[2], v[3]), chirality)


def _rand_line(rng, chirality=PLUS) -> ProjectiveLine:
    return ProjectiveLine(_rand_spinor(rng, chirality))


def _rand_plane(rng) -> OrientedPlane:
    return psi(_rand_line(rng, PLUS), _rand_line(rng, MINUS))


def _result(name, residuals, tol, samples, detail="") -> SuiteResult:
    worst = max(residuals) if residuals else 0.0
    return SuiteResult(name, worst, tol, worst <= tol, samples, detail)


# ---------------------------------------------------------------------------
# quaternion / spin suites
# ---------------------------------------------------------------------------

def suite_quat_associativity(rng, samples, tol):
    res = []
    for _ in range(samples):
        p, q, r = (_rand_quat(rng) for _ in range(3))
        scale = max(p.norm() * q.norm() * r.norm(), 1.0)
        res.append(((p * q) * r - p * (q * r)).norm() / scale)
    return _result("quat-associativity", res, tol or 1e-12, samples)


def suite_quat_norm_multiplicativity(rng, samples, tol):
    res = []
    for _ in range(samples):
        p, q = _rand_quat(rng), _rand_quat(rng)
        res.append(abs((p * q).norm() - p.norm() * q.norm())
                   / max(p.norm() * q.norm(), 1e-300))
    return _result("quat-norm-multiplicativity", res, tol or 1e-12, samples)


def suite_quat_matrix(rng, samples, tol):
    res = []
    for _ in range(samples):
        p, q = _rand_quat(rng), _rand_quat(rng)
        u, v = (p * q).right_pair()
        a, b = q.right_pair()
        mu, mv = left_mult_matrix(p) @ np.array([a, b])
        scale = max(1.0, p.norm() * q.norm())
        res.append(max(abs(u - mu), abs(v - mv)) / scale)
    return _result("quat-matrix-consistency", res, tol or 1e-14, samples)


def suite_quat_orientation(rng, samples, tol):
    # the change of basis from (1, i, j, -k) to (1, i, j, k) is negative
    ok = orientation_det(ONE, I, J, -K) > 0 and orientation_det(ONE, I, J, K) < 0
    return SuiteResult("quat-orientation", 0.0 if ok else 1.0, tol or 0.5,
                       ok, 1, "sign check")


def suite_clifford_homothety(rng, samples, tol):
    res = []
    for _ in range(samples):
        A, phi = _rand_quat(rng), _rand_spinor(rng)
        out = clifford_mul(A, phi)
        res.append(abs(out.norm() - A.norm() * phi.norm())
                   / max(A.norm() * phi.norm(), 1e-300))
        res.append((out.to_quaternion() - A * phi.to_quaternion()).norm()
                   / max(A.norm() * phi.norm(), 1e-300))
    return _result("clifford-homothety", res, tol or 1e-12, samples)


def suite_det_v(rng, samples, tol):
    res = []
    for _ in range(samples):
        A = _rand_quat(rng)
        det = np.linalg.det(left_mult_matrix(A))
        res.append(abs(det - det_v(A)) / max(det_v(A), 1e-300))
        res.append(abs(det_v(A) - A.norm2()) / max(A.norm2(), 1e-300))
    return _result("det-v", res, tol or 1e-12, samples)


def suite_wedge(rng, samples, tol):
    res = []
    for _ in range(samples):
        phi, chi, eta = (_rand_spinor(rng) for _ in range(3))
        c = complex(*rng.standard_normal(2))
        scale = max(phi.norm() * chi.norm(), 1.0)
        res.append(abs(wedge(phi, chi) + wedge(chi, phi)) / scale)
        res.append(abs(wedge(phi + eta.scale(c), chi) - wedge(phi, chi)
                       - c * wedge(eta, chi)) / max(scale, eta.norm() * chi.norm()))
        res.append(abs(abs(wedge(phi, chi)) ** 2
                       - (phi.norm2() * chi.norm2() - abs(herm(phi, chi)) ** 2))
                   / max(scale ** 2, 1.0))
    return _result("wedge-bilinearity", res, tol or 1e-12, samples)


def suite_adapted_bases(rng, samples, tol):
    res = []
    for _ in range(samples):
        b = adapt_bases(_rand_spinor(rng))
        res.extend([
            abs(b.phi_plus.norm() - 1), abs(b.chi_plus.norm() - 1),
            abs(b.phi_minus.norm() - 1), abs(b.chi_minus.norm() - 1),
            abs(herm(b.phi_plus, b.chi_plus)),
            abs(herm(b.phi_minus, b.chi_minus)),
            abs(wedge(b.phi_plus, b.chi_plus) - wedge(b.phi_minus, b.chi_minus)),
        ])
    return _result("adapted-bases", res, tol or 1e-12, samples)


# ---------------------------------------------------------------------------
# Grassmannian suites
# ---------------------------------------------------------------------------

def suite_psi_roundtrip(rng, samples, tol):
    res = []
    for _ in range(samples):
        L, Lp = _rand_line(rng, PLUS), _rand_line(rng, MINUS)
        T = psi(L, Lp)
        L2, Lp2 = psi_inverse(T)
        res.append(projective_distance(L, L2))
        res.append(projective_distance(Lp, Lp2))
        res.append(plane_distance(T, psi(L2, Lp2)))
    return _result("psi-roundtrip", res, tol or 1e-9, samples)


def suite_psi_definition(rng, samples, tol):
    # every basis vector maps L into L' under Clifford multiplication
    res = []
    for _ in range(samples):
        L, Lp = _rand_line(rng, PLUS), _rand_line(rng, MINUS)
        T = psi(L, Lp)
        for A in (T.a, T.b):
            img = ProjectiveLine(clifford_mul(A, L.rep))
            res.append(projective_distance(img, Lp))
    return _result("psi-definition", res, tol or 1e-10, samples)


def suite_plane_complement(rng, samples, tol):
    res = []
    for _ in range(samples):
        L, Lp = _rand_line(rng, PLUS), _rand_line(rng, MINUS)
        T = psi(L, Lp)
        res.append(plane_distance(plane_complement(T), psi(L.perp(), Lp)))
    return _result("plane-complement", res, tol or 1e-10, samples)


def suite_membership(rng, samples, tol):
    bad = 0
    for k in range(samples):
        L, Lp = _rand_line(rng, PLUS), _rand_line(rng, MINUS)
        T = psi(L, Lp)
        c = complex(*rng.standard_normal(2))
        if k % 3 == 0:
            s = L.rep.scale(c)
        elif k % 3 == 1:
            s = L.perp().rep.scale(c)
        else:
            s = _rand_spinor(rng)
        if s.norm() < 1e-6:
            continue
        v1, v2 = membership(T, s), membership_direct(T, s)
        expected = (MembershipVerdict.IN_L, MembershipVerdict.IN_L_PERP,
                    MembershipVerdict.NEITHER)[k % 3]
        if v1 is not v2 or v1 is not expected:
            bad += 1
    return SuiteResult("membership-oracle", float(bad), tol or 0.5,
                       bad == 0, samples, "disagreement count")


def suite_inc_antilinearity(rng, samples, tol):
    res = []
    for _ in range(samples):
        L, Lp = _rand_line(rng, PLUS), _rand_line(rng, MINUS)
        phase = rng.uniform(0, 2 * math.pi)
        res.append(antilinearity_residual(L, Lp, complex(math.cos(phase),
                                                         math.sin(phase))))
    return _result("inc-antilinearity", res, tol or 1e-6, samples)


def suite_rebih_linearity(rng, samples, tol):
    res = []
    for _ in range(samples):
        L, Lp = _rand_line(rng, PLUS), _rand_line(rng, MINUS)
        phase = rng.uniform(0, 2 * math.pi)
        res.append(complex_linearity_residual(L, Lp, complex(math.cos(phase),
                                                             math.sin(phase))))
    return _result("rebih-complex-linearity", res, tol or 1e-6, samples)


# ---------------------------------------------------------------------------
# projective-model suites
# ---------------------------------------------------------------------------

def suite_pr_homogeneity(rng, samples, tol):
    res = []
    for _ in range(samples):
        y = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        z = complex(*rng.standard_normal(2))
        c = complex(*rng.standard_normal(2))
        if abs(z) < 1e-2 or abs(c) < 1e-2:
            continue
        a = pr(CP2Point(y[0], y[1], z))
        b = pr(CP2Point(c * y[0], c * y[1], c * z))
        scale = max(abs(a.y[0]), abs(a.y[1]), 1.0)
        res.append(max(abs(a.y[0] - b.y[0]), abs(a.y[1] - b.y[1])) / scale)
    return _result("pr-homogeneity", res, tol or 1e-12, samples)


def suite_dph_linearity(rng, samples, tol):
    res = []
    for _ in range(samples):
        y = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        rep = dphi_linearity_check(y)
        res.extend(rep.values())
    return _result("dph-linearity", res, tol or 1e-6, samples)


def suite_iml_rank(rng, samples, tol):
    res = []
    for _ in range(samples):
        y = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        rank, _, angle = iml_rank_check(y)
        res.append(0.0 if rank == 2 else 1.0)
        res.append(angle)
    return _result("iml-rank", res, tol or 1e-5, samples)


def suite_theta_roundtrip(rng, samples, tol):
    from .projective import S4Point
    chart = SphereChart((_rand_quat(rng), _rand_quat(rng)))
    res = []
    for _ in range(samples):
        y = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        back = chart.theta_inverse(chart.theta(S4Point(y)))
        scale = max(abs(y[0]), abs(y[1]), 1.0)
        res.append(max(abs(back.y[0] - y[0]), abs(back.y[1] - y[1])) / scale)
    return _result("theta-roundtrip", res, tol or 1e-11, samples)


def suite_degree1_injectivity(rng, samples, tol):
    """pr of a transverse degree-1 curve is injective on a point sample."""
    curve = RationalCurve((1, 0), (0, 1), (1, 1))
    crossings = h_transversality_check(curve)
    if not all(c.transverse for c in crossings):
        return SuiteResult("degree1-injectivity", 1.0, tol or 0.5, False,
                           samples, "curve not transverse")
    # sample the parameter sphere through both charts and embed images in R^8
    chart_pts = []
    for c in range(2):
        for _ in range(samples // 2):
            z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            if abs(z) <= 1.0:
                chart_pts.append((z, 1.0) if c == 0 else (1.0, z))
    chart = SphereChart((Quaternion(), Quaternion(1.0)))
    vecs, ss, ts = [], [], []
    for s, t in chart_pts:
        p, q, r = curve.evaluate(s, t)
        y = chart.embed(p, q)
        w = (y[0] + Quaternion.from_complex(r) * chart.u[0],
             y[1] + Quaternion.from_complex(r) * chart.u[1])
        nw = quat_pair_norm(w)
        vecs.append(np.array(w[0].components() + w[1].components()) / nw)
        norm_st = math.hypot(abs(s), abs(t))
        ss.append(s / norm_st)
        ts.append(t / norm_st)
    X = np.stack(vecs)
    s_arr, t_arr = np.array(ss), np.array(ts)
    # |<x, y>_H|^2 as sum of four bilinear gram matrices
    gram2 = np.zeros((len(X), len(X)))
    for Jmat in _quaternion_pair_structure_matrices():
        gram2 += (X @ Jmat @ X.T) ** 2
    img_dist2 = np.clip(1.0 - gram2, 0.0, None)
    # chordal distance |s t' - s' t| on CP^1 handles the chart overlap
    par_dist = np.abs(np.outer(s_arr, t_arr) - np.outer(t_arr, s_arr))
    mask = par_dist > 1e-3
    np.fill_diagonal(mask, False)
    worst = 0.0
    if mask.any():
        min_img = np.sqrt(img_dist2[mask].min())
        worst = 0.0 if min_img > 1e-8 else 1.0
    return SuiteResult("degree1-injectivity", worst, tol or 0.5, worst == 0.0,
                       len(X), "pairwise image separation")


def _quaternion_pair_structure_matrices():
    """R^8 matrices of x -> e x (left mult by 1, i, j, k on both components)."""
    mats = []
    for e in (ONE, I, J, K):
        m4 = np.zeros((4, 4))
        for col, basis in enumerate((ONE, I, J, K)):
            m4[:, col] = (e * basis).components()
        m8 = np.zeros((8, 8))
        m8[:4, :4] = m4
        m8[4:, 4:] = m4
        mats.append(m8)
    return mats


def suite_smoothness_at_infinity(rng, samples, tol):
    """Bounded second differences of the Phi-chart representation of pr o curve
    across each transverse H-crossing."""
    curve = RationalCurve((1, 0), (0, 1), (1, 1))
    crossings = h_transversality_check(curve)
    res = []
    h = 1e-3
    for crossing in crossings:
        z0 = crossing.s / crossing.t if abs(crossing.t) > 1e-12 else None
        for k in range(-4, 5):
            pts = []
            for off in (k - 1, k, k + 1):
                if z0 is not None:
                    s, t = z0 + off * h * (1 + 0.5j), 1.0
                else:
                    s, t = 1.0, off * h * (1 + 0.5j)
                p, q, r = curve.evaluate(s, t)
                # Phi(pr([y : z])) = conj(z) y / |y|^2
                n2 = abs(p) ** 2 + abs(q) ** 2
                pts.append((r.conjugate() * p / n2, r.conjugate() * q / n2))
            dd = max(abs(pts[0][i] - 2 * pts[1][i] + pts[2][i]) for i in range(2))
            res.append(dd / h ** 2)  # second difference quotient stays bounded
    worst = max(res)
    bound = tol or 100.0
    return SuiteResult("smoothness-at-infinity", worst, bound,
                       worst < bound, len(res), "2nd difference quotients")


# ---------------------------------------------------------------------------
# Higgs suites
# ---------------------------------------------------------------------------

def suite_split_reconstruction(rng, samples, tol):
    res = []
    for _ in range(samples):
        T = _rand_plane(rng)
        s = _rand_spinor(rng)
        sp = split_at(s, T)
        res.append(((sp.phi + sp.chi) - s).norm() / max(s.norm(), 1e-300))
        res.append(abs(herm(sp.phi, sp.chi)) / max(s.norm2(), 1e-300))
    return _result("split-reconstruction", res, tol or 1e-12, samples)


def suite_wedge_identity(rng, samples, tol):
    res = []
    for _ in range(samples):
        T = _rand_plane(rng)
        s = _rand_spinor(rng)
        res.append(wedge_identity_residual(T, s) / max(s.norm2(), 1e-300))
    return _result("wedge-identity", res, tol or 1e-10, samples)


def suite_local_windings(rng, samples, tol):
    field = StandardHiggsField((_rand_quat(rng), _rand_quat(rng)))
    phi_rep, chi_rep = local_representatives(field)
    n = 1024
    loops = {
        name: [f(0.1 * complex(math.cos(2 * math.pi * k / n),
                               math.sin(2 * math.pi * k / n))) for k in range(n)]
        for name, f in (("phi", phi_rep), ("chi", chi_rep))
    }
    ok = (winding_number(loops["phi"]) == -1 and winding_number(loops["chi"]) == +1)
    return SuiteResult("local-representative-windings", 0.0 if ok else 1.0,
                       tol or 0.5, ok, 2 * n, "phi -> -1, chi -> +1")


def suite_residual_acs(rng, samples, tol):
    field = StandardHiggsField((_rand_quat(rng), _rand_quat(rng)))
    res = []
    for _ in range(samples):
        y = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        t = (complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2)))
        res.append(field.residual_acs_residual(y, t))
    return _result("residual-acs-theta", res, tol or 1e-6, samples)


def suite_classification_oracle(rng, samples, tol):
    """Spinor-component classification against the direct i-invariance test on
    graph planes in C^2."""
    from .higgs import classify_plane, PlaneKind
    bad = 0
    for k in range(samples):
        hz, hzb = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        if k % 3 == 0:
            hzb = 0.0  # holomorphic graph plane: i-invariant, positive
        elif k % 3 == 1:
            hz = 0.0   # graph over zb alone
        d1 = (1.0, hz + hzb)
        d2 = (1j, 1j * (hz - hzb))
        A1 = Quaternion.from_right_pair(*d1)
        A2 = Quaternion.from_right_pair(*d2)
        T = OrientedPlane.from_span(A1, A2)
        got = classify_plane(Spinor(1, 0), T).kind
        # direct test: the plane is i-invariant iff i*A1 lies in it
        ia1 = A1 * I
        in_plane = T.project_out(ia1).norm() < 1e-8 * ia1.norm()
        if in_plane:
            sign = ia1.dot(T.b) * T.a.dot(A1) - ia1.dot(T.a) * T.b.dot(A1)
            expected = PlaneKind.Q_COMPLEX if sign > 0 else PlaneKind.QBAR_COMPLEX
        else:
            expected = PlaneKind.NEITHER
        if got is not expected:
            bad += 1
    return SuiteResult("classification-oracle", float(bad), tol or 0.5,
                       bad == 0, samples, "disagreement count")


# ---------------------------------------------------------------------------
# immersion smoke suites
# ---------------------------------------------------------------------------

_GRAPH = ('{"domain": {"type": "disk"}, "target": {"type": "C2"},'
          ' "map": {"components": ["z", "zb^2"]}}')
_TORUS = ('{"domain": {"type": "torus"}, "target": {"type": "C2"},'
          ' "map": {"components": ["0.7071067811865476*z",'
          ' "0.7071067811865476*s"]}}')
_LINE = ('{"domain": {"type": "sphere"}, "target": {"type": "S4"},'
         ' "map": {"curve": {"p": [[1,0],[0,0]], "q": [[0,0],[1,0]],'
         ' "r": [[1,0],[1,0]]}}}')


def suite_graph_index(rng, samples, tol):
    spec = ImmersionSpec.from_json(_GRAPH)
    rep = analyze(spec, AnalysisOptions(grid_n=32, refine_depth=16, seed=0))
    ok = (len(rep.records) == 1 and rep.records[0].index == -1
          and rep.records[0].kind.value == "Q")
    return SuiteResult("graph-zbar2-index", 0.0 if ok else 1.0, tol or 0.5,
                       ok, 1, "single Q point of index -1")


def suite_torus_totally_real(rng, samples, tol):
    spec = ImmersionSpec.from_json(_TORUS)
    opt = AnalysisOptions(grid_n=16, seed=0)
    rep = analyze(spec, opt)
    w, cross = maslov_windings(spec, [{"kind": "theta", "fixed": 0.0},
                                      {"kind": "phi", "fixed": 0.0}], opt)
    ok = rep.totally_real and rep.net_count == 0 and w == [1, 1] and cross < 1e-8
    return SuiteResult("torus-totally-real", 0.0 if ok else 1.0, tol or 0.5,
                       ok, rep.grid_stats["grid_points"],
                       f"maslov={w} crosscheck={cross:.1e}")


def suite_line_pseudoholomorphic(rng, samples, tol):
    spec = ImmersionSpec.from_json(_LINE)
    rep = analyze(spec, AnalysisOptions(grid_n=16, seed=0))
    ok = rep.pseudoholomorphic and rep.immersion_defects == 0
    return SuiteResult("line-pseudoholomorphic", 0.0 if ok else 1.0,
                       tol or 0.5, ok, rep.grid_stats["grid_points"],
                       f"max chi ratio {rep.grid_stats['max_ratio_chi']:.1e}")


SUITES: dict[str, Callable] = {
    "quat-associativity": suite_quat_associativity,
    "quat-norm-multiplicativity": suite_quat_norm_multiplicativity,
    "quat-matrix-consistency": suite_quat_matrix,
    "quat-orientation": suite_quat_orientation,
    "clifford-homothety": suite_clifford_homothety,
    "det-v": suite_det_v,
    "wedge-bilinearity": suite_wedge,
    "adapted-bases": suite_adapted_bases,
    "psi-roundtrip": suite_psi_roundtrip,
    "psi-definition": suite_psi_definition,
    "plane-complement": suite_plane_complement,
    "membership-oracle": suite_membership,
    "inc-antilinearity": suite_inc_antilinearity,
    "rebih-complex-linearity": suite_rebih_linearity,
    "pr-homogeneity": suite_pr_homogeneity,
    "dph-linearity": suite_dph_linearity,
    "iml-rank": suite_iml_rank,
    "theta-roundtrip": suite_theta_roundtrip,
    "degree1-injectivity": suite_degree1_injectivity,
    "smoothness-at-infinity": suite_smoothness_at_infinity,
    "split-reconstruction": suite_split_reconstruction,
    "wedge-identity": suite_wedge_identity,
    "local-representative-windings": suite_local_windings,
    "residual-acs-theta": suite_residual_acs,
    "classification-oracle": suite_classification_oracle,
    "graph-zbar2-index": suite_graph_index,
    "torus-totally-real": suite_torus_totally_real,
    "line-pseudoholomorphic": suite_line_pseudoholomorphic,
}

# finite-difference suites get fewer draws: each sample is many evaluations
_FD_SUITES = {"inc-antilinearity", "rebih-complex-linearity", "dph-linearity",
              "iml-rank", "residual-acs-theta"}


def run_suites(seed: int = 0, samples: int = 10_000,
               tol: float | None = None,
               names: list[str] | None = None) -> list[SuiteResult]:
    """Run the named suites (all by default) with a fixed seed."""
    if samples <= 0:
        raise ValueError("samples must be positive")
    results = []
    for name, fn in SUITES.items():
        if names is not None and name not in names:
            continue
        rng = np.random.default_rng(np.random.SeedSequence([seed, hash(name) % 2**31]))
        n = samples
        if name in _FD_SUITES:
            n = max(min(samples, 1000), 1)
        results.append(fn(rng, n, tol))
    return results
