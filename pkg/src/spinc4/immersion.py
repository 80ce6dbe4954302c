"""Immersed-surface analysis: Gauss maps, complex points, indices, verdicts.

An immersion specification maps a disk, torus, or parameter sphere into C^2,
the 4-sphere with a standard Higgs field, or CP^2.  At every parameter point
the Gauss map produces the oriented tangent plane in the quaternion
coordinates of the ambient model; the Higgs spinor splits there into its
phi (lambda+) and chi (mu+) components, whose zero sets are the Qbar- and
Q-complex points.  Since phi + chi = psi with <phi, chi> = 0, the relative
residuals |phi|/|psi| and |chi|/|psi| live in [0, 1] and are invariant under
rescaling the Higgs field by positive functions.

Isolated zeros are located by a coarse grid scan plus quadtree bisection and
indexed by the winding number of the vanishing component in a trivialization
obtained by projecting a fixed reference spinor onto the moving line.  The
sum of these windings realizes the net count of complex points; graph
immersions (z, h(z, zb)) reproduce the winding of the obstruction h_zb.

Spec documents are JSON::

    {"domain": {"type": "disk" | "torus" | "sphere", "radius": 1.0},
     "target": {"type": "C2" | "S4" | "CP2", "u": [[w,x,y,z], [w,x,y,z]]},
     "map": {"components": [expr, expr]}      # disk / torus
            or {"curve": {"p": [[re,im],...], "q": ..., "r": ..., "degree": d}}}

Curve coefficients are ordered by descending s-degree: entry k is the
coefficient of s^(d-k) t^k.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .exprparse import Expr, ExpressionError, parse_expression
from .grassmann import OrientedPlane, ProjectiveLine, psi_inverse
from .higgs import (FLAT_HIGGS_SPINOR, PlaneKind, SpinorSplit,
                    StandardHiggsField, split_at, winding_number)
from .projective import QuatPair, RationalCurve, h_transversality_check
from .quaternion import Quaternion
from .spin import PLUS, Spinor, clifford_mul, herm, wedge

__all__ = [
    "ImmersionSpec",
    "AnalysisOptions",
    "AnalysisReport",
    "ComplexPointRecord",
    "SpecError",
    "RankDeficientError",
    "gauss_map",
    "scan_complex_points",
    "index_of_zero",
    "analyze",
    "maslov_windings",
    "totally_real_bundle_check",
]

CONVENTION_TAG = "phi-winding=-1,chi-winding=+1"
DEFAULT_U = ((0.0, 0.0, 0.0, 0.0), (1.0, 0.0, 0.0, 0.0))


class SpecError(ValueError):
    """Malformed immersion specification document."""


class RankDeficientError(RuntimeError):
    """The map is not an immersion at the requested point."""


# ---------------------------------------------------------------------------
# Specification documents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImmersionSpec:
    domain: str                      # disk | torus | sphere
    target: str                      # C2 | S4 | CP2
    radius: float = 1.0
    components: tuple[Expr, Expr] | None = None
    component_sources: tuple[str, str] | None = None
    curve: RationalCurve | None = None
    u: QuatPair | None = None

    @staticmethod
    def from_dict(doc: dict) -> "ImmersionSpec":
        try:
            domain = doc["domain"]["type"]
            target = doc["target"]["type"]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"missing required field: {exc}") from exc
        if domain not in ("disk", "torus", "sphere"):
            raise SpecError(f"unknown domain type {domain!r}")
        if target not in ("C2", "S4", "CP2"):
            raise SpecError(f"unknown target type {target!r}")
        radius = float(doc["domain"].get("radius", 1.0))
        if radius <= 0:
            raise SpecError("disk radius must be positive")
        u = None
        if target == "S4":
            raw_u = doc["target"].get("u", DEFAULT_U)
            try:
                u = (Quaternion(*map(float, raw_u[0])),
                     Quaternion(*map(float, raw_u[1])))
            except (TypeError, ValueError, IndexError) as exc:
                raise SpecError("target.u must be two quaternions of 4 reals") from exc
        mp = doc.get("map", {})
        components = sources = curve = None
        if domain in ("disk", "torus"):
            if "components" not in mp:
                raise SpecError(f"{domain} domains need map.components")
            raw = mp["components"]
            if len(raw) != 2:
                raise SpecError("map.components must hold exactly two expressions")
            allowed = ("z", "zb") if domain == "disk" else ("z", "zb", "s", "t")
            try:
                components = tuple(parse_expression(src, allowed) for src in raw)
            except ExpressionError as exc:
                raise SpecError(f"bad map expression: {exc}") from exc
            sources = (str(raw[0]), str(raw[1]))
            if target == "CP2":
                raise SpecError("CP2 targets take a rational curve on the sphere")
        else:
            if "curve" not in mp:
                raise SpecError("sphere domains need map.curve")
            if target == "C2":
                raise SpecError("sphere domains map to S4 or CP2, not C2")
            cdoc = mp["curve"]
            try:
                coeffs = {k: tuple(complex(c[0], c[1]) for c in cdoc[k])
                          for k in ("p", "q", "r")}
            except (KeyError, TypeError, IndexError) as exc:
                raise SpecError("curve needs p, q, r as [re, im] coefficient lists") from exc
            curve = RationalCurve(coeffs["p"], coeffs["q"], coeffs["r"])
            if "degree" in cdoc and int(cdoc["degree"]) != curve.degree:
                raise SpecError(f"declared degree {cdoc['degree']} does not match "
                                f"coefficient count (degree {curve.degree})")
            curve.validate()
        return ImmersionSpec(domain, target, radius, components, sources, curve, u)

    @staticmethod
    def from_json(text: str) -> "ImmersionSpec":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(
                f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        return ImmersionSpec.from_dict(doc)

    @staticmethod
    def load(path: str) -> "ImmersionSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return ImmersionSpec.from_json(fh.read())

    def describe(self) -> dict:
        out = {"domain": self.domain, "target": self.target}
        if self.domain == "disk":
            out["radius"] = self.radius
        if self.component_sources:
            out["components"] = list(self.component_sources)
        if self.curve is not None:
            out["degree"] = self.curve.degree
        return out


@dataclass
class AnalysisOptions:
    grid_n: int = 64
    refine_depth: int = 20
    tol: float = 1e-8
    loop_points: int = 1024
    loop_radius: float | None = None
    seed: int = 0
    higgs_scale: Callable[[float, float], float] | None = None
    psi_zero_abs: float = 1e-10


# ---------------------------------------------------------------------------
# Point samples and target models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointSample:
    """Everything the pipeline knows at one parameter point."""

    x: tuple[float, float]
    chart: int
    plane: OrientedPlane | None
    psi: Spinor
    split: SpinorSplit | None
    line: ProjectiveLine | None
    rank_ok: bool
    jac_scale: float

    @property
    def psi_norm(self) -> float:
        return self.psi.norm()

    @property
    def ratio_phi(self) -> float:
        return self.split.phi_norm() / max(self.psi_norm, 1e-300)

    @property
    def ratio_chi(self) -> float:
        return self.split.chi_norm() / max(self.psi_norm, 1e-300)


class _Model:
    """Shared Gauss-map plumbing; subclasses supply tangents and the Higgs
    spinor through _raw()."""

    charts = 1

    def __init__(self, spec: ImmersionSpec, options: AnalysisOptions):
        self.spec = spec
        self.options = options
        self.scale_fn = options.higgs_scale

    def _raw(self, x, chart, seed_m):
        """-> (a1, a2, jac_scale, psi_spinor): tangent quaternions of the two
        parameter directions, a Jacobian scale, and the Higgs spinor in the
        local adapted frame."""
        raise NotImplementedError

    def sample(self, x: tuple[float, float], chart: int = 0,
               seed_m=None) -> PointSample:
        a1, a2, jac_scale, psi_spinor = self._raw(x, chart, seed_m)
        if self.scale_fn is not None:
            psi_spinor = psi_spinor.scale(self.scale_fn(*x))
        rank_ok = True
        plane = split = line = None
        try:
            plane = OrientedPlane.from_span(a1, a2, tol=1e-10)
        except ValueError:
            rank_ok = False
        if plane is not None:
            split = split_at(psi_spinor, plane)
            line, _ = psi_inverse(plane)
        return PointSample(x, chart, plane, psi_spinor, split, line,
                           rank_ok, jac_scale)


class FlatModel(_Model):
    """C^2 target: V = C^2 via (w1, w2) -> w1 + j w2, constant psi = (1, 0)."""

    def __init__(self, spec, options):
        super().__init__(spec, options)
        e1, e2 = spec.components
        self.values = (e1, e2)
        self.d = {v: (e1.derivative(v), e2.derivative(v)) for v in ("z", "zb", "s", "t")}

    def _env(self, x):
        if self.spec.domain == "disk":
            z = complex(x[0], x[1])
            return {"z": z, "zb": z.conjugate(), "s": 0.0, "t": 0.0}
        z = complex(math.cos(x[0]), math.sin(x[0]))
        s = complex(math.cos(x[1]), math.sin(x[1]))
        return {"z": z, "zb": z.conjugate(), "s": s, "t": s.conjugate()}

    def point(self, x):
        env = self._env(x)
        return (self.values[0].evaluate(env), self.values[1].evaluate(env))

    def partials(self, x):
        env = self._env(x)
        dz = tuple(e.evaluate(env) for e in self.d["z"])
        dzb = tuple(e.evaluate(env) for e in self.d["zb"])
        if self.spec.domain == "disk":
            d1 = (dz[0] + dzb[0], dz[1] + dzb[1])
            d2 = (1j * (dz[0] - dzb[0]), 1j * (dz[1] - dzb[1]))
            return d1, d2
        ds = tuple(e.evaluate(env) for e in self.d["s"])
        dt = tuple(e.evaluate(env) for e in self.d["t"])
        z, s = env["z"], env["s"]
        d1 = tuple(1j * z * a - 1j * z.conjugate() * b for a, b in zip(dz, dzb))
        d2 = tuple(1j * s * a - 1j * s.conjugate() * b for a, b in zip(ds, dt))
        return d1, d2

    def _raw(self, x, chart, seed_m):
        d1, d2 = self.partials(x)
        a1 = Quaternion.from_right_pair(*d1)
        a2 = Quaternion.from_right_pair(*d2)
        return a1, a2, max(a1.norm(), a2.norm()), FLAT_HIGGS_SPINOR


class SphereModelBase(_Model):
    """Common frame handling for S^4 targets with a standard Higgs field.

    The Higgs spinor is computed from the exact u-coefficient of the
    representative (psi values stay relatively accurate near H-crossings) and
    is normalized by |u| so that its norm is dimensionless in [0, 1].
    """

    def __init__(self, spec, options):
        super().__init__(spec, options)
        u = spec.u if spec.u is not None else (
            Quaternion(*DEFAULT_U[0]), Quaternion(*DEFAULT_U[1]))
        self.field = StandardHiggsField(u)
        self.chart_map = self.field.chart
        self.u_norm = math.sqrt(self.field.u_norm2)

    def w_raw(self, x, chart):
        """-> (w, dw1, dw2, u_coeff) with w = (orthogonal part) + u_coeff * u."""
        raise NotImplementedError

    def _raw(self, x, chart, seed_m):
        w_raw, dw1, dw2, u_coeff = self.w_raw(x, chart)
        frame = self.chart_map.frame_at(w_raw, seed_m=seed_m)
        a1 = frame.tangent_quat(dw1)
        a2 = frame.tangent_quat(dw2)
        norm_w = math.sqrt(w_raw[0].norm2() + w_raw[1].norm2())
        scale = max(math.sqrt(dw1[0].norm2() + dw1[1].norm2()),
                    math.sqrt(dw2[0].norm2() + dw2[1].norm2())) / norm_w
        spinor = self.field.spinor_from_u_coefficient(u_coeff, norm_w)
        return a1, a2, scale, spinor.scale(1.0 / self.u_norm)


class SphereExprModel(SphereModelBase):
    """Disk/torus map into the V-chart of S^4: w = embed(f1, f2) + u."""

    def __init__(self, spec, options):
        super().__init__(spec, options)
        self.flat = FlatModel(spec, options)

    def w_raw(self, x, chart):
        f1, f2 = self.flat.point(x)
        d1, d2 = self.flat.partials(x)
        y = self.chart_map.embed(f1, f2)
        w = (y[0] + self.chart_map.u[0], y[1] + self.chart_map.u[1])
        return w, self.chart_map.embed(*d1), self.chart_map.embed(*d2), 1.0 + 0j


class SphereCurveModel(SphereModelBase):
    """pr of a rational curve: w = p v + q (j v) + r u, smooth across H."""

    charts = 2

    def __init__(self, spec, options):
        super().__init__(spec, options)
        self.curve = spec.curve

    def _st(self, x, chart):
        z = complex(x[0], x[1])
        return (z, 1.0) if chart == 0 else (1.0, z)

    def w_raw(self, x, chart):
        s, t = self._st(x, chart)
        p, q, r = self.curve.evaluate(s, t)
        ds, dt = self.curve.derivatives(s, t)
        dp, dq, dr = (ds if chart == 0 else dt)
        u = self.chart_map.u

        def assemble(a, b, c):
            vec = self.chart_map.embed(a, b)
            return (vec[0] + Quaternion.from_complex(c) * u[0],
                    vec[1] + Quaternion.from_complex(c) * u[1])

        w = assemble(p, q, r)
        dw1 = assemble(dp, dq, dr)
        # the curve is holomorphic in the chart coordinate: d/dx2 = i d/dx1
        dw2 = (Quaternion.from_complex(1j) * dw1[0],
               Quaternion.from_complex(1j) * dw1[1])
        return w, dw1, dw2, r


class CP2CurveModel(_Model):
    """Holomorphic curve analyzed in adaptive affine charts of CP^2.

    The Q/Qbar verdicts depend only on the complex structure, so the flat
    model in the chart of the largest homogeneous coordinate is faithful.
    """

    charts = 2

    def __init__(self, spec, options):
        super().__init__(spec, options)
        self.curve = spec.curve

    def _st(self, x, chart):
        z = complex(x[0], x[1])
        return (z, 1.0) if chart == 0 else (1.0, z)

    def _raw(self, x, chart, seed_m):
        s, t = self._st(x, chart)
        vals = self.curve.evaluate(s, t)
        ds, dt = self.curve.derivatives(s, t)
        dv = ds if chart == 0 else dt
        pivot = max(range(3), key=lambda k: abs(vals[k]))
        others = [k for k in range(3) if k != pivot]
        # affine coordinates g_k = vals_k / vals_pivot, quotient-rule derivative
        d_aff = tuple((dv[k] * vals[pivot] - vals[k] * dv[pivot]) / vals[pivot] ** 2
                      for k in others)
        a1 = Quaternion.from_right_pair(*d_aff)
        a2 = Quaternion.from_right_pair(1j * d_aff[0], 1j * d_aff[1])
        return a1, a2, max(a1.norm(), a2.norm()), FLAT_HIGGS_SPINOR


def build_model(spec: ImmersionSpec, options: AnalysisOptions) -> _Model:
    if spec.target == "C2":
        return FlatModel(spec, options)
    if spec.target == "S4":
        if spec.curve is not None:
            return SphereCurveModel(spec, options)
        return SphereExprModel(spec, options)
    return CP2CurveModel(spec, options)


def gauss_map(spec: ImmersionSpec, x: tuple[float, float], chart: int = 0,
              options: AnalysisOptions | None = None) -> PointSample:
    """Tangent-plane sample of the immersion at one parameter point."""
    model = build_model(spec, options or AnalysisOptions())
    out = model.sample(x, chart)
    if not out.rank_ok:
        raise RankDeficientError(f"map is rank deficient at {x} (chart {chart})")
    return out


# ---------------------------------------------------------------------------
# Grid scanning and refinement
# ---------------------------------------------------------------------------

@dataclass
class ComplexPointRecord:
    location: tuple[float, float]
    chart: int
    kind: PlaneKind
    index: int | None
    loop_radius: float
    residuals: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "location": [self.location[0], self.location[1]],
            "chart": self.chart,
            "kind": self.kind.value,
            "index": self.index,
            "loop_radius": self.loop_radius,
            "residuals": dict(self.residuals),
        }


def _grid_points(spec: ImmersionSpec, grid_n: int):
    """(x, chart, cell_half, periodic) quadruples covering the domain."""
    pts = []
    if spec.domain == "disk":
        r = spec.radius
        h = r / grid_n  # full width 2r over grid_n cells
        for i in range(grid_n):
            for k in range(grid_n):
                x = (-r + (2 * i + 1) * h, -r + (2 * k + 1) * h)
                if math.hypot(*x) <= r:
                    pts.append((x, 0, h))
    elif spec.domain == "torus":
        h = math.pi / grid_n
        for i in range(grid_n):
            for k in range(grid_n):
                pts.append(((2 * math.pi * i / grid_n, 2 * math.pi * k / grid_n), 0, h))
    else:
        h = 1.0 / grid_n
        for chart in range(2):
            for i in range(grid_n):
                for k in range(grid_n):
                    x = (-1 + (2 * i + 1) * h, -1 + (2 * k + 1) * h)
                    inside = math.hypot(*x) <= 1.0 + 1e-12
                    if inside and (chart == 0 or math.hypot(*x) > 1e-9):
                        pts.append((x, chart, h))
    return pts


def _refine_zero(model: _Model, x0, chart, half, ratio_of, depth: int):
    """Quadtree descent on a residual surface; returns (location, final_half)."""
    cx, cy = x0
    for _ in range(depth):
        best = None
        for dx in (-0.5, 0.0, 0.5):
            for dy in (-0.5, 0.0, 0.5):
                x = (cx + dx * half, cy + dy * half)
                s = model.sample(x, chart)
                if not s.rank_ok:
                    continue
                val = ratio_of(s)
                if best is None or val < best[0]:
                    best = (val, x)
        if best is None:
            break
        cx, cy = best[1]
        half *= 0.5
    return (cx, cy), half


def scan_complex_points(spec: ImmersionSpec,
                        options: AnalysisOptions | None = None,
                        model: _Model | None = None,
                        grid: list | None = None
                        ) -> tuple[list[ComplexPointRecord], dict]:
    """Locate isolated Q-/Qbar-complex points (no indices yet).

    Returns the records plus grid statistics used for the global verdicts.
    """
    options = options or AnalysisOptions()
    if options.grid_n < 8:
        raise ValueError("grid_n must be at least 8")
    model = model or build_model(spec, options)
    cells = _grid_points(spec, options.grid_n)
    samples = grid if grid is not None else [
        model.sample(x, chart) for (x, chart, _) in cells]

    stats = _grid_stats(samples, options)
    records: list[ComplexPointRecord] = []

    for kind, ratio_of in ((PlaneKind.Q_COMPLEX, lambda s: s.ratio_chi),
                           (PlaneKind.QBAR_COMPLEX, lambda s: s.ratio_phi)):
        if stats["fraction_low_" + ("chi" if kind is PlaneKind.Q_COMPLEX else "phi")] > 0.3:
            continue  # non-isolated zero locus: handled as a verdict
        flagged = _flag_local_minima(cells, samples, ratio_of, options)
        for (x0, chart, half, slope) in flagged:
            loc, final_half = _refine_zero(model, x0, chart, half, ratio_of,
                                           options.refine_depth)
            s = model.sample(loc, chart)
            if not s.rank_ok or s.psi_norm < options.psi_zero_abs:
                continue
            final_ratio = ratio_of(s)
            accept = final_ratio <= max(options.tol, 20.0 * slope * final_half)
            if not accept:
                continue
            if any(c.chart == chart and math.hypot(loc[0] - c.location[0],
                                                   loc[1] - c.location[1]) < 4 * half
                   for c in records):
                continue
            records.append(ComplexPointRecord(
                loc, chart, kind, None, 0.0,
                {"phi": s.split.phi_norm(), "chi": s.split.chi_norm(),
                 "psi": s.psi_norm, "ratio": final_ratio}))

    if spec.curve is not None and spec.target == "S4":
        records.extend(_higgs_zero_records(spec, model, options))
    records.sort(key=lambda r: (r.chart, r.location[0], r.location[1]))
    return records, stats


def _grid_stats(samples: Sequence[PointSample], options: AnalysisOptions) -> dict:
    ok = [s for s in samples if s.rank_ok]
    live = [s for s in ok if s.psi_norm >= options.psi_zero_abs]
    n = max(len(live), 1)
    return {
        "grid_points": len(samples),
        "rank_defects": len(samples) - len(ok),
        "higgs_zero_points": len(ok) - len(live),
        "max_ratio_chi": max((s.ratio_chi for s in live), default=0.0),
        "max_ratio_phi": max((s.ratio_phi for s in live), default=0.0),
        "min_ratio_chi": min((s.ratio_chi for s in live), default=1.0),
        "min_ratio_phi": min((s.ratio_phi for s in live), default=1.0),
        "min_ratio_min": min((min(s.ratio_phi, s.ratio_chi) for s in live), default=1.0),
        "fraction_low_chi": sum(s.ratio_chi < 10 * options.tol for s in live) / n,
        "fraction_low_phi": sum(s.ratio_phi < 10 * options.tol for s in live) / n,
    }


def _flag_local_minima(cells, samples, ratio_of, options):
    """Cells whose ratio is below threshold and minimal among near neighbors."""
    by_chart: dict[int, list[int]] = {}
    for idx, (_, chart, _) in enumerate(cells):
        by_chart.setdefault(chart, []).append(idx)
    flagged = []
    for chart, idxs in by_chart.items():
        vals = []
        for idx in idxs:
            s = samples[idx]
            if not s.rank_ok or s.psi_norm < options.psi_zero_abs:
                vals.append(math.inf)
            else:
                vals.append(ratio_of(s))
        order = sorted(range(len(idxs)), key=lambda k: vals[k])
        taken: list[tuple[float, float]] = []
        for k in order[:12]:
            if not math.isfinite(vals[k]) or vals[k] > 0.5:
                break
            x, _, half = cells[idxs[k]]
            if any(math.hypot(x[0] - t[0], x[1] - t[1]) < 6 * half for t in taken):
                continue
            taken.append(x)
            slope = max(vals[k] / (half * math.sqrt(2.0)), 1e-6)
            flagged.append((x, chart, half, slope))
    return flagged


def _higgs_zero_records(spec, model, options):
    """Both-kind records where the curve meets the Higgs zero (H-crossings)."""
    out = []
    for crossing in h_transversality_check(spec.curve):
        if abs(crossing.t) > 1e-12:
            chart, z = 0, crossing.s / crossing.t
            if abs(z) > 1.0:
                chart, z = 1, crossing.t / crossing.s
        else:
            chart, z = 1, 0.0
        s = model.sample((z.real, z.imag), chart)
        out.append(ComplexPointRecord(
            (z.real, z.imag), chart, PlaneKind.BOTH, None, 0.0,
            {"phi": s.split.phi_norm() if s.split else 0.0,
             "chi": s.split.chi_norm() if s.split else 0.0,
             "psi": s.psi_norm, "ratio": 0.0}))
    return out


# ---------------------------------------------------------------------------
# Winding-number indices
# ---------------------------------------------------------------------------

def _loop_trivialization_values(model, record, loop_radius, loop_points):
    center = model.sample(record.location, record.chart)
    if center.line is None:
        raise RankDeficientError("cannot index a rank-deficient point")
    seed_m = None
    if isinstance(model, SphereModelBase):
        frame = model.chart_map.frame_at(
            model.w_raw(record.location, record.chart)[0])
        seed_m = frame.m
    if record.kind is PlaneKind.Q_COMPLEX:
        seeds = [center.line.perp().rep, center.line.rep,
                 Spinor(1, 0), Spinor(0, 1)]

        def component(split):
            return split.chi
        def project(line, eta):
            return eta - line.rep.scale(herm(eta, line.rep))
    else:
        seeds = [center.line.rep, center.line.perp().rep,
                 Spinor(1, 0), Spinor(0, 1)]

        def component(split):
            return split.phi
        def project(line, eta):
            return line.rep.scale(herm(eta, line.rep))

    loop_samples = []
    for k in range(loop_points):
        theta = 2.0 * math.pi * k / loop_points
        x = (record.location[0] + loop_radius * math.cos(theta),
             record.location[1] + loop_radius * math.sin(theta))
        s = model.sample(x, record.chart, seed_m=seed_m)
        if not s.rank_ok:
            raise RankDeficientError(f"loop hits a rank-deficient point at {x}")
        loop_samples.append(s)

    last_error: Exception | None = None
    for eta in seeds:
        eta = Spinor(eta.a, eta.b, PLUS)
        values = []
        ok = True
        for s in loop_samples:
            m_raw = project(s.line, eta)
            if m_raw.norm() < 0.05:
                ok = False
                break
            values.append(herm(component(s.split), m_raw.normalized()))
        if ok:
            return values
        last_error = ValueError("reference spinor degenerates along the loop")
    raise last_error


def index_of_zero(spec_or_model, record: ComplexPointRecord,
                  loop_radius: float,
                  options: AnalysisOptions | None = None) -> int:
    """Winding number of the vanishing component around an isolated zero.

    Computed in a trivialization of the pulled-back line bundle obtained by
    normalized projection of a fixed reference spinor; the loop is refined
    automatically when phase steps exceed pi/2.
    """
    options = options or AnalysisOptions()
    model = spec_or_model if isinstance(spec_or_model, _Model) else \
        build_model(spec_or_model, options)
    if record.kind is PlaneKind.BOTH:
        raise ValueError("Both-kind records (Higgs zeros) carry no index")
    points = options.loop_points
    last = None
    for _ in range(4):
        try:
            values = _loop_trivialization_values(model, record, loop_radius, points)
            return winding_number(values)
        except ValueError as exc:
            last = exc
            points *= 2
    raise ValueError(f"winding did not stabilize: {last}")


# ---------------------------------------------------------------------------
# Full analysis
# ---------------------------------------------------------------------------

@dataclass
class AnalysisReport:
    spec: dict
    records: list[ComplexPointRecord]
    q_count: int | None
    qbar_count: int | None
    net_count: int | None
    totally_real: bool
    pseudoholomorphic: bool
    boundary_incomplete: bool
    immersion_defects: int
    grid_stats: dict
    metadata: dict

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "spec": self.spec,
            "verdicts": {
                "totally_real": self.totally_real,
                "pseudoholomorphic": self.pseudoholomorphic,
                "immersion_ok": self.immersion_defects == 0,
            },
            "records": [r.to_dict() for r in self.records],
            "counts": {
                "q": self.q_count,
                "qbar": self.qbar_count,
                "net": self.net_count,
            },
            "boundary_incomplete": self.boundary_incomplete,
            "grid_stats": self.grid_stats,
            "metadata": self.metadata,
        }


def _auto_loop_radius(spec, records, record, options):
    if options.loop_radius is not None:
        return options.loop_radius
    base = 0.15 * (spec.radius if spec.domain == "disk" else 1.0)
    for other in records:
        if other is record or other.chart != record.chart:
            continue
        d = math.hypot(other.location[0] - record.location[0],
                       other.location[1] - record.location[1])
        base = min(base, d / 3.0)
    if spec.domain == "disk":
        to_boundary = spec.radius - math.hypot(*record.location)
        base = min(base, to_boundary / 2.0)
    return max(base, 1e-4)


def analyze(spec: ImmersionSpec,
            options: AnalysisOptions | None = None) -> AnalysisReport:
    """Scan, classify, index, and aggregate: the full complex-point pipeline."""
    options = options or AnalysisOptions()
    model = build_model(spec, options)
    cells = _grid_points(spec, options.grid_n)
    grid = [model.sample(x, chart) for (x, chart, _) in cells]
    records, stats = scan_complex_points(spec, options, model, grid)

    live_records = [r for r in records if r.kind is not PlaneKind.BOTH]
    pseudoholomorphic = (stats["max_ratio_chi"] <= options.tol
                         and stats["rank_defects"] == 0
                         and not any(r.kind is PlaneKind.QBAR_COMPLEX
                                     for r in records))
    totally_real = (not records
                    and stats["rank_defects"] == 0
                    and stats["min_ratio_min"] > options.tol)

    for record in live_records:
        radius = _auto_loop_radius(spec, records, record, options)
        record.loop_radius = radius
        record.index = index_of_zero(model, record, radius, options)

    closed = spec.domain in ("torus", "sphere")
    q = sum(r.index for r in live_records if r.kind is PlaneKind.Q_COMPLEX)
    qbar = sum(r.index for r in live_records if r.kind is PlaneKind.QBAR_COMPLEX)
    report = AnalysisReport(
        spec=spec.describe(),
        records=records,
        q_count=q,
        qbar_count=qbar,
        net_count=q + qbar,
        totally_real=totally_real,
        pseudoholomorphic=pseudoholomorphic,
        boundary_incomplete=not closed,
        immersion_defects=stats["rank_defects"],
        grid_stats=stats,
        metadata={
            "grid_n": options.grid_n,
            "refine_depth": options.refine_depth,
            "tol": options.tol,
            "loop_points": options.loop_points,
            "seed": options.seed,
            "convention": CONVENTION_TAG,
            "higgs_rescaled": options.higgs_scale is not None,
        },
    )
    return report


# ---------------------------------------------------------------------------
# Maslov windings and the totally-real bundle check
# ---------------------------------------------------------------------------

def _loop_parameter_points(spec, loop: dict, n: int):
    kind = loop.get("kind")
    if spec.domain == "torus" and kind in ("theta", "phi"):
        fixed = float(loop.get("fixed", 0.0))
        for k in range(n):
            angle = 2 * math.pi * k / n
            yield (angle, fixed) if kind == "theta" else (fixed, angle)
    elif kind == "circle":
        cx, cy = loop.get("center", (0.0, 0.0))
        r = float(loop["radius"])
        for k in range(n):
            t = 2 * math.pi * k / n
            yield (cx + r * math.cos(t), cy + r * math.sin(t))
    else:
        raise ValueError(f"unknown loop kind {kind!r} for domain {spec.domain!r}")


def maslov_windings(spec: ImmersionSpec, loops: Sequence[dict],
                    options: AnalysisOptions | None = None
                    ) -> tuple[list[int], float]:
    """Winding of rho/|rho|, rho = phi (x) chi, along each loop, with the
    cross-check residual against the tangent-frame wedge A psi ^ B psi.

    Requires a totally real immersion into C^2 (trivial determinant bundle, so
    the windings are honest integers in the global trivialization).
    """
    options = options or AnalysisOptions()
    if spec.target != "C2":
        raise ValueError("Maslov windings are computed for C2 targets")
    model = build_model(spec, options)
    windings = []
    worst = 0.0
    for loop in loops:
        values = []
        for x in _loop_parameter_points(spec, loop, options.loop_points):
            s = model.sample(x)
            if not s.rank_ok:
                raise RankDeficientError(f"loop hits a rank-deficient point at {x}")
            if min(s.ratio_phi, s.ratio_chi) < 10 * options.tol:
                raise ValueError(f"loop passes within tolerance of a complex point at {x}")
            rho = wedge(s.split.phi, s.split.chi)
            lhs = wedge(clifford_mul(s.plane.a, s.psi),
                        clifford_mul(s.plane.b, s.psi))
            worst = max(worst, abs(lhs - (-2j) * rho))
            values.append(rho)
        windings.append(winding_number(values))
    return windings, worst


def totally_real_bundle_check(spec: ImmersionSpec,
                              options: AnalysisOptions | None = None) -> dict:
    """Pointwise identification of the tangent plane with the normal plane.

    At each grid point the evaluation maps X -> X phi_hat (on T) and
    X -> X chi_hat (on the natural-oriented complement) are isometries onto
    the line L'; their composite T -> T_perp must be an orientation-reversing
    isometry.  Returns the worst isometry defect and orientation margin.
    """
    from .grassmann import plane_complement

    options = options or AnalysisOptions()
    model = build_model(spec, options)
    worst_iso, worst_det, checked = 0.0, -1.0, 0
    for (x, chart, _) in _grid_points(spec, options.grid_n):
        s = model.sample(x, chart)
        if not s.rank_ok:
            raise RankDeficientError(f"not an immersion at {x}")
        if min(s.ratio_phi, s.ratio_chi) < 10 * options.tol:
            raise ValueError(f"complex point encountered at {x}: not totally real")
        phi_hat = s.split.phi.normalized()
        chi_hat = s.split.chi.normalized()
        _, line_p = psi_inverse(s.plane)
        comp = plane_complement(s.plane)
        c_nat, d_nat = comp.b, comp.a  # undo the reversal: natural orientation
        z_a = herm(clifford_mul(s.plane.a, phi_hat), line_p.rep)
        z_b = herm(clifford_mul(s.plane.b, phi_hat), line_p.rep)
        z_c = herm(clifford_mul(c_nat, chi_hat), line_p.rep)
        z_d = herm(clifford_mul(d_nat, chi_hat), line_p.rep)
        det_cd = z_c.real * z_d.imag - z_c.imag * z_d.real
        # solve (x, y) with x z_c + y z_d = z for each of z_a, z_b
        def solve(z):
            return ((z.real * z_d.imag - z.imag * z_d.real) / det_cd,
                    (z.imag * z_c.real - z.real * z_c.imag) / det_cd)
        col1, col2 = solve(z_a), solve(z_b)
        m = ((col1[0], col2[0]), (col1[1], col2[1]))
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        gram_defect = max(
            abs(m[0][0] ** 2 + m[1][0] ** 2 - 1.0),
            abs(m[0][1] ** 2 + m[1][1] ** 2 - 1.0),
            abs(m[0][0] * m[0][1] + m[1][0] * m[1][1]))
        worst_iso = max(worst_iso, gram_defect)
        worst_det = max(worst_det, det)
        checked += 1
    return {"points": checked, "max_isometry_defect": worst_iso,
            "max_det": worst_det, "orientation_reversing": worst_det < 0.0}
