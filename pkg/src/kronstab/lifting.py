"""Numerical path lifting through the projection to CP^1 and through the
central charge, with monodromy reporting.

Lifting is stepwise continuation.  At the quotient level the state is a raw
chart coordinate (k, w): each path point is pulled back through the current
chart's affine solve (linear in u = e^w), the logarithm branch nearest the
previous state is taken, and the move is accepted only if it is short in the
hyperbolic metric of the upper half plane — otherwise the segment is
bisected.  When a lift sinks toward the real boundary of its chart (the
chart formula degenerates there) the point necessarily lies in the overlap
strip, so it is re-expressed in whichever neighboring chart gives it the
most headroom and continuation proceeds there.

At the total-space level the same machinery runs in (z, w) coordinates: z is
branch-tracked against the central charge of the current chart's first
stable object, so lifts of loops report the accumulated C-action shift.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

from .atlas import QuotientPoint, in_strip, psi_k, psi_k_inv
from .ksequence import a_pair
from .projective import ProjPoint, chart_solve, chi, chordal, removed_distance

_TWO_PI = 2.0 * math.pi


class LiftError(Exception):
    """Base class for continuation failures."""


class StepTooLarge(LiftError):
    pass


class RemovedPointOnPath(LiftError):
    pass


class StartMismatch(LiftError):
    pass


class LineProximity(LiftError):
    pass


@dataclass(frozen=True)
class LiftOptions:
    max_step: float = 0.05        # hyperbolic step budget per accepted move
    tol: float = 1e-9             # re-substitution tolerance
    close_tol: float = 1e-6       # end displacement below which a loop closed
    margin: float = 1e-3          # required chordal clearance from the removed set
    refine_depth: int = 20
    chart_scan: int = 40          # |k| bound when hunting a better chart
    switch_margin: float = 0.1    # Im w below which we leave a degenerating chart


@dataclass(frozen=True)
class PathSample:
    """Polyline in CP^1 (quotient lifts) or C^2 - 0 (total-space lifts)."""

    points: tuple
    closed: bool = False

    def __post_init__(self):
        if len(self.points) < 1:
            raise ValueError("path needs at least one point")


@dataclass(frozen=True)
class LiftReport:
    trace: tuple
    chart_switches: tuple[tuple[int, int, int], ...]
    closed_up: bool
    end_displacement: float
    max_residual: float

    def to_json(self) -> dict:
        def enc(pt):
            if isinstance(pt, QuotientPoint):
                return {"k": pt.k, "w": [pt.w.real, pt.w.imag]}
            k, z, w = pt
            return {"k": k, "z": [z.real, z.imag], "w": [w.real, w.imag]}

        return {
            "trace": [enc(p) for p in self.trace],
            "chart_switches": [list(s) for s in self.chart_switches],
            "closed_up": self.closed_up,
            "end_displacement": self.end_displacement,
            "max_residual": self.max_residual,
        }


def hyperbolic_dist(w1: complex, w2: complex) -> float:
    """Distance in the hyperbolic metric of the upper half plane."""
    num = abs(w1 - w2) ** 2
    return math.acosh(1.0 + num / (2.0 * w1.imag * w2.imag))


def interp(p: ProjPoint, q: ProjPoint, t: float) -> ProjPoint:
    """Interpolate between CP^1 points using phase-aligned representatives."""
    inner = p.z0.conjugate() * q.z0 + p.z1.conjugate() * q.z1
    if inner != 0:
        phase = inner / abs(inner)
    else:
        phase = 1.0
    q0, q1 = q.z0 / phase, q.z1 / phase
    return ProjPoint(p.z0 + t * (q0 - p.z0), p.z1 + t * (q1 - p.z1))


def circle_path(center: ProjPoint, radius: float, samples: int = 256) -> PathSample:
    """Closed loop of the given chordal radius around a CP^1 point.

    Built by rotating the sphere so the center sits at [1 : 0]; the circle
    there is [1 : s e^{i theta}] with s = radius / sqrt(1 - radius^2).
    """
    if not 0.0 < radius < 1.0:
        raise ValueError(f"chordal radius must be in (0, 1), got {radius}")
    norm = center.norm()
    c0, c1 = center.z0 / norm, center.z1 / norm
    s = radius / math.sqrt(1.0 - radius * radius)
    pts = []
    for i in range(samples + 1):
        theta = _TWO_PI * i / samples
        lam = s * cmath.exp(1j * theta)
        # inverse of the unitary sending center to [1 : 0]
        pts.append(ProjPoint(c0 - c1.conjugate() * lam, c1 + c0.conjugate() * lam))
    return PathSample(tuple(pts), closed=True)


def _nearest_log(u: complex, w_ref: complex) -> complex:
    """Branch of log u whose imaginary part is nearest Im w_ref."""
    base = cmath.log(u)
    m = round((w_ref.imag - base.imag) / _TWO_PI)
    return base + 2j * math.pi * m


def _best_chart(n: int, w0: complex, scan: int) -> tuple[int, complex]:
    """Chart giving the overlap point (expressed in chart 0) the most height."""
    charts = range(3) if n == 1 else range(-scan, scan + 1)
    best_k, best_w = 0, w0
    for h in charts:
        if h == 0:
            continue
        try:
            wh = psi_k(n, h, w0)
        except (ValueError, ZeroDivisionError, OverflowError):
            continue
        if wh.imag > best_w.imag:
            best_k, best_w = h, wh
    return best_k, best_w


def _check_clearance(n: int, pts, margin: float) -> None:
    for idx, p in enumerate(pts):
        if removed_distance(n, p, scan_tol=min(margin, 1e-4)) < margin:
            raise RemovedPointOnPath(
                f"path point {idx} is within {margin} of the removed set"
            )


@dataclass
class _QuotientState:
    n: int
    k: int
    w: complex
    opts: LiftOptions
    switches: list = field(default_factory=list)
    step_index: int = 0

    def advance(self, p: ProjPoint, depth: int = 0, prev: ProjPoint | None = None):
        u = chart_solve(self.n, self.k, p)
        cand = _nearest_log(u, self.w)
        if cand.imag <= 0.0 or hyperbolic_dist(self.w, cand) > self.opts.max_step:
            if depth >= self.opts.refine_depth:
                raise StepTooLarge(
                    f"refinement exhausted near path point {self.step_index}"
                )
            if prev is None:
                raise StepTooLarge(
                    f"cannot refine the initial point (step {self.step_index})"
                )
            mid = interp(prev, p, 0.5)
            self.advance(mid, depth + 1, prev)
            self.advance(p, depth + 1, mid)
            return
        self.w = cand
        self._maybe_switch()

    def _maybe_switch(self):
        if not (0.0 < self.w.imag < self.opts.switch_margin):
            return
        w0 = psi_k_inv(self.n, self.k, self.w) if self.k != 0 else self.w
        h, wh = _best_chart(self.n, w0, self.opts.chart_scan)
        if h != self.k and wh.imag > self.w.imag:
            self.switches.append((self.step_index, self.k, h))
            self.k, self.w = h, wh


def lift_quotient(
    n: int,
    path: PathSample,
    start: QuotientPoint,
    opts: LiftOptions = LiftOptions(),
) -> LiftReport:
    """Lift a CP^1 polyline through the chart projection, starting at start."""
    pts = path.points
    _check_clearance(n, pts, opts.margin)
    if chordal(chi(n, start.k, start.w), pts[0]) > max(opts.tol * 10, 1e-8):
        raise StartMismatch("start does not project to the first path point")
    state = _QuotientState(n, start.k, start.w, opts)
    trace = [QuotientPoint(n, state.k, state.w)]
    max_res = chordal(chi(n, state.k, state.w), pts[0])
    prev = pts[0]
    for i, p in enumerate(pts[1:], start=1):
        state.step_index = i
        state.advance(p, prev=prev)
        res = chordal(chi(n, state.k, state.w), p)
        if res > max(opts.tol, 1e-12) * 100:
            raise StepTooLarge(f"re-substitution residual {res} at step {i}")
        max_res = max(max_res, res)
        trace.append(QuotientPoint(n, state.k, state.w))
        prev = p
    end = trace[-1]
    displacement = quotient_displacement(trace[0], end)
    return LiftReport(
        trace=tuple(trace),
        chart_switches=tuple(state.switches),
        closed_up=displacement < opts.close_tol,
        end_displacement=displacement,
        max_residual=max_res,
    )


def quotient_displacement(a: QuotientPoint, b: QuotientPoint) -> float:
    """|w_a - w_b| through canonical coordinates; inf for distinct charts."""
    if a.k != b.k:
        return math.inf
    return abs(a.w - b.w)


@dataclass
class _TotalState:
    n: int
    k: int
    z: complex
    w: complex
    opts: LiftOptions
    switches: list = field(default_factory=list)
    step_index: int = 0

    def advance(self, zz: tuple[complex, complex], depth: int = 0,
                prev: tuple[complex, complex] | None = None):
        z0, z1 = zz
        akm1, ak = a_pair(self.n, self.k)
        ak1 = a_pair(self.n, self.k + 1)[1]
        zk = ak * z1 - akm1 * z0        # Z(S_k)
        zk1 = ak1 * z1 - ak * z0        # Z(S_{k+1})
        z_cand = _nearest_log(zk, 1j * self.z.imag)
        w_cand = _nearest_log(zk1 / zk, self.w)
        jump = max(abs(z_cand - self.z), abs(w_cand - self.w))
        if w_cand.imag <= 0.0 or jump > self.opts.max_step or \
                hyperbolic_dist_safe(self.w, w_cand) > self.opts.max_step:
            if depth >= self.opts.refine_depth:
                raise StepTooLarge(
                    f"refinement exhausted near path point {self.step_index}"
                )
            if prev is None:
                raise StepTooLarge(
                    f"cannot refine the initial point (step {self.step_index})"
                )
            mid = ((prev[0] + z0) / 2.0, (prev[1] + z1) / 2.0)
            self.advance(mid, depth + 1, prev)
            self.advance(zz, depth + 1, mid)
            return
        self.z, self.w = z_cand, w_cand
        self._maybe_switch()

    def _maybe_switch(self):
        if not (0.0 < self.w.imag < self.opts.switch_margin):
            return
        if self.k != 0:
            w0 = psi_k_inv(self.n, self.k, self.w)
            akm1, ak = a_pair(self.n, self.k)
            z0c = self.z - cmath.log(ak * cmath.exp(w0) - akm1)
        else:
            w0, z0c = self.w, self.z
        h, wh = _best_chart(self.n, w0, self.opts.chart_scan)
        if h != self.k and wh.imag > self.w.imag:
            akm1, ak = a_pair(self.n, h)
            self.switches.append((self.step_index, self.k, h))
            self.k = h
            self.z = z0c + cmath.log(ak * cmath.exp(w0) - akm1)
            self.w = wh


def hyperbolic_dist_safe(w1: complex, w2: complex) -> float:
    if w1.imag <= 0.0 or w2.imag <= 0.0:
        return math.inf
    return hyperbolic_dist(w1, w2)


def lift_total(
    n: int,
    path: PathSample,
    start: tuple[int, complex, complex],
    opts: LiftOptions = LiftOptions(),
) -> LiftReport:
    """Lift a polyline in C^2 - 0 through the central charge.

    start is (k, z, w) chart coordinates; path points are (Z(S_0), Z(S_1))
    pairs.  The path must keep chordal clearance from the line arrangement
    over the removed set.
    """
    pts = path.points
    for idx, (z0, z1) in enumerate(pts):
        if z0 == 0 and z1 == 0:
            raise LiftError(f"path point {idx} is the excluded origin")
        if removed_distance(n, ProjPoint(z0, z1),
                            scan_tol=min(opts.margin, 1e-4)) < opts.margin:
            raise LineProximity(
                f"path point {idx} is within {opts.margin} of the line arrangement"
            )
    k, z, w = start
    akm1, ak = a_pair(n, k)
    ak1 = a_pair(n, k + 1)[1]
    z0, z1 = pts[0]
    if abs(cmath.exp(z) - (ak * z1 - akm1 * z0)) > 1e-8 * max(1.0, abs(z1) + abs(z0)):
        raise StartMismatch("start chart coordinates do not match the first path point")
    state = _TotalState(n, k, z, w, opts)
    trace = [(state.k, state.z, state.w)]
    max_res = 0.0
    prev = pts[0]
    for i, p in enumerate(pts[1:], start=1):
        state.step_index = i
        state.advance(p, prev=prev)
        akm1, ak = a_pair(n, state.k)
        res = abs(cmath.exp(state.z) - (ak * p[1] - akm1 * p[0]))
        scale = max(1.0, abs(p[0]) + abs(p[1]))
        if res > max(opts.tol, 1e-12) * 1e4 * scale:
            raise StepTooLarge(f"re-substitution residual {res} at step {i}")
        max_res = max(max_res, res / scale)
        trace.append((state.k, state.z, state.w))
        prev = p
    first, last = trace[0], trace[-1]
    if first[0] == last[0]:
        displacement = max(abs(first[1] - last[1]), abs(first[2] - last[2]))
    else:
        displacement = math.inf
    return LiftReport(
        trace=tuple(trace),
        chart_switches=tuple(state.switches),
        closed_up=displacement < opts.close_tol,
        end_displacement=displacement,
        max_residual=max_res,
    )


@dataclass(frozen=True)
class MonodromyResult:
    displacement: float
    start_chart: int
    end_chart: int
    end: QuotientPoint
    closed_up: bool
    report: LiftReport

    def to_json(self) -> dict:
        return {
            "displacement": self.displacement,
            "start_chart": self.start_chart,
            "end_chart": self.end_chart,
            "end": {"k": self.end.k, "w": [self.end.w.real, self.end.w.imag]},
            "closed_up": self.closed_up,
        }


def monodromy(
    n: int,
    center: ProjPoint,
    radius: float,
    start: QuotientPoint,
    samples: int = 512,
    opts: LiftOptions = LiftOptions(),
) -> MonodromyResult:
    """Lift one loop of the given chordal radius around center, from start.

    The circle itself must clear the removed set; the center may be removed
    (that is the interesting case).
    """
    loop = circle_path(center, radius, samples)
    # re-anchor the loop at the sample nearest the start's projection
    proj = chi(n, start.k, start.w)
    dists = [chordal(proj, p) for p in loop.points[:-1]]
    i0 = dists.index(min(dists))
    pts = loop.points[i0:-1] + loop.points[: i0 + 1]
    report = lift_quotient(n, PathSample(pts, closed=True), start, opts)
    end = report.trace[-1]
    return MonodromyResult(
        displacement=report.end_displacement,
        start_chart=report.trace[0].k,
        end_chart=end.k,
        end=end,
        closed_up=report.closed_up,
        report=report,
    )


def puncture_start(
    n: int, ray_index: int, p0: ProjPoint, branch: int = 1
) -> QuotientPoint:
    """A wrapping-sheet start for loops around the removed ray [a_k : a_{k+1}].

    The chart h = -(ray_index + 1) wraps around that ray (its puncture at
    u = 0); branch m lifts the start to Im w = Arg u + 2 pi m.
    """
    h = -(ray_index + 1)
    if n == 1:
        h %= 3
    u = chart_solve(n, h, p0)
    w = cmath.log(u) + 2j * math.pi * branch
    if w.imag <= 0.0:
        raise ValueError("branch gives a start outside the chart; raise it")
    return QuotientPoint(n, h, w)
