"""Numerical ground truth for the piecewise flow.

Independent of the algebra: an embedded Dormand-Prince 4(5) integrator with
PI step control drives event-driven arcs inside each strip, boundary hits
are localized by bisection on the step, and only transversal Filippov
crossings are followed (sliding or tangential boundary contact aborts with a
typed error -- sliding segments are detected, never simulated).

On top of the arc integrator sit the boundary return map, a grid-scan
shooting oracle for fixed points of the displacement map, and the candidate
verifier that accepts an algebraic cycle only when the integrated loop
reproduces its crossing ordinates and closes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .systems import (
    CubicCenter,
    DoubleCenter,
    GlobalCenter,
    LinearSaddle,
    PiecewiseSystem,
    Zone,
)


class DynamicsError(Exception):
    """Base for integration / return-map failures."""


class NotEntryPoint(DynamicsError):
    pass


class SlidingPoint(DynamicsError):
    """Boundary point where the adjacent fields disagree in sign: sliding or
    tangential contact, not a crossing."""


class NonReturning(DynamicsError):
    pass


@dataclass
class IntegratorConfig:
    rtol: float = 1e-11
    atol: float = 1e-13
    event_tol: float = 1e-10
    max_time: float = 400.0
    window: float = 1e3
    max_step: float = 0.2
    max_steps: int = 400_000
    match_tol: float = 1e-5
    closure_tol: float = 1e-6
    tangent_tol: float = 1e-9

    def __post_init__(self):
        for name in ("rtol", "atol", "event_tol", "max_time", "window",
                     "max_step", "match_tol", "closure_tol", "tangent_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class Trajectory:
    samples: list  # (t, x, y)
    events: list   # (t, edge, direction) with edge in {"lo", "hi"}
    status: str    # reached-boundary | reached-time-limit | hit-equilibrium | left-window
    end: tuple
    drift: float   # max relative first-integral drift along the arc


# ---------------------------------------------------------------------------
# compiled field / integral closures
# ---------------------------------------------------------------------------


def zone_field_fn(zone: Zone):
    p = zone.payload
    s = -1.0 if zone.reverse else 1.0
    if isinstance(p, DoubleCenter):
        l, n, pp, off = float(p.l), float(p.n), float(p.p), float(p.offset)

        def f(x, y, _l=l, _n=n, _p=pp, _o=off, _s=s):
            xs = x + _o
            return _s * (-y + _l * xs * xs + _n * y * y), \
                   _s * (xs + _p * xs * xs - 2.0 * _l * xs * y)

        return f
    if isinstance(p, GlobalCenter):
        xi, off = float(p.xi), float(p.offset)

        def f(x, y, _xi=xi, _o=off, _s=s):
            xs = x + _o
            return _s * (y - 2.0 * xs * xs - _xi), _s * (-2.0 * xs * y)

        return f
    if isinstance(p, CubicCenter):
        a, b, pp, q, r, ss, off = (float(p.a), float(p.b), float(p.p),
                                   float(p.q), float(p.r), float(p.s),
                                   float(p.offset))

        def f(x, y, _a=a, _b=b, _p=pp, _q=q, _r=r, _sx=ss, _o=off, _s=s):
            xs = x + _o
            fx = 3.0 * _q * y * y + _r * xs * xs + 2.0 * _sx * xs * y - _a * xs - _b * y
            fy = xs + _a * y - 3.0 * _p * xs * xs - 2.0 * _r * xs * y - _sx * y * y
            return _s * fx, _s * fy

        return f
    if isinstance(p, LinearSaddle):
        al, be, de, mu, ga = (float(p.alpha), float(p.beta), float(p.delta),
                              float(p.mu), float(p.gamma))

        def f(x, y, _a=al, _b=be, _d=de, _m=mu, _g=ga, _s=s):
            return _s * (-_b * x - _d * y + _m), _s * (_a * x + _b * y + _g)

        return f
    raise DynamicsError(f"unknown payload {p!r}")  # pragma: no cover


def zone_integral_fn(zone: Zone):
    """Float first integral (value of the conserved quantity)."""
    p = zone.payload
    if isinstance(p, DoubleCenter):
        l, n, pp, off = float(p.l), float(p.n), float(p.p), float(p.offset)

        def h(x, y):
            xs = x + off
            return (0.5 * (xs * xs + y * y) - l * xs * xs * y
                    - n / 3.0 * y**3 + pp / 3.0 * xs**3)

        return h
    if isinstance(p, GlobalCenter):
        xi, off = float(p.xi), float(p.offset)

        def h(x, y):
            xs = x + off
            return (xs * xs - y + 0.5 * xi) / (y * y)

        return h
    if isinstance(p, CubicCenter):
        a, b, pp, q, r, ss, off = (float(p.a), float(p.b), float(p.p),
                                   float(p.q), float(p.r), float(p.s),
                                   float(p.offset))

        def h(x, y):
            xs = x + off
            return (pp * xs**3 + q * y**3 + r * xs * xs * y + ss * xs * y * y
                    - 0.5 * xs * xs - a * xs * y - 0.5 * b * y * y)

        return h
    if isinstance(p, LinearSaddle):
        al, be, de, mu, ga = (float(p.alpha), float(p.beta), float(p.delta),
                              float(p.mu), float(p.gamma))

        def h(x, y):
            return -ga * x + mu * y - be * x * y - 0.5 * (al * x * x + de * y * y)

        return h
    raise DynamicsError(f"unknown payload {p!r}")  # pragma: no cover


# Dormand-Prince 4(5) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


def _rk45_step(f, x, y, h):
    """One Dormand-Prince step: returns (x5, y5, err_x, err_y, k1..k7)."""
    k1x, k1y = f(x, y)
    k2x, k2y = f(x + h * _A[1][0] * k1x, y + h * _A[1][0] * k1y)
    a = _A[2]
    k3x, k3y = f(x + h * (a[0] * k1x + a[1] * k2x), y + h * (a[0] * k1y + a[1] * k2y))
    a = _A[3]
    k4x, k4y = f(x + h * (a[0] * k1x + a[1] * k2x + a[2] * k3x),
                 y + h * (a[0] * k1y + a[1] * k2y + a[2] * k3y))
    a = _A[4]
    k5x, k5y = f(x + h * (a[0] * k1x + a[1] * k2x + a[2] * k3x + a[3] * k4x),
                 y + h * (a[0] * k1y + a[1] * k2y + a[2] * k3y + a[3] * k4y))
    a = _A[5]
    k6x, k6y = f(x + h * (a[0] * k1x + a[1] * k2x + a[2] * k3x + a[3] * k4x + a[4] * k5x),
                 y + h * (a[0] * k1y + a[1] * k2y + a[2] * k3y + a[3] * k4y + a[4] * k5y))
    b = _B5
    x5 = x + h * (b[0] * k1x + b[2] * k3x + b[3] * k4x + b[4] * k5x + b[5] * k6x)
    y5 = y + h * (b[0] * k1y + b[2] * k3y + b[3] * k4y + b[4] * k5y + b[5] * k6y)
    k7x, k7y = f(x5, y5)
    b = _B4
    x4 = x + h * (b[0] * k1x + b[2] * k3x + b[3] * k4x + b[4] * k5x + b[5] * k6x + b[6] * k7x)
    y4 = y + h * (b[0] * k1y + b[2] * k3y + b[3] * k4y + b[4] * k5y + b[5] * k6y + b[6] * k7y)
    return x5, y5, x5 - x4, y5 - y4


def integrate_arc(zone: Zone, start: tuple, cfg: IntegratorConfig | None = None,
                  record: bool = True, forward: bool = True) -> Trajectory:
    """Integrate the zone's field from ``start`` until the trajectory reaches
    a strip edge (localized to cfg.event_tol), the time limit, the spatial
    window, or an equilibrium (speed below 1e-12 for ten accepted steps).

    A start on the boundary must have inward velocity.  The conserved
    quantity's maximal relative drift along the arc is reported.
    """
    cfg = cfg or IntegratorConfig()
    f0 = zone_field_fn(zone)
    f = f0 if forward else (lambda x, y: tuple(-v for v in f0(x, y)))
    hfun = zone_integral_fn(zone)
    lo = float(zone.x_lo) if zone.x_lo is not None else -math.inf
    hi = float(zone.x_hi) if zone.x_hi is not None else math.inf
    x, y = float(start[0]), float(start[1])

    fx, fy = f(x, y)
    if abs(x - lo) <= cfg.event_tol and fx <= 0:
        raise NotEntryPoint("start on the lower edge with outward velocity")
    if abs(x - hi) <= cfg.event_tol and fx >= 0:
        raise NotEntryPoint("start on the upper edge with outward velocity")

    def safe_h(xx, yy):
        try:
            v = hfun(xx, yy)
        except ZeroDivisionError:
            return math.inf
        return v

    h0 = safe_h(x, y)
    monitor = math.isfinite(h0)
    scale_h = max(1.0, abs(h0)) if monitor else 1.0
    drift = 0.0
    t = 0.0
    h = min(cfg.max_step, 1e-3)
    samples = [(t, x, y)] if record else []
    events: list = []
    slow = 0
    armed_lo = abs(x - lo) > 10 * cfg.event_tol
    armed_hi = abs(x - hi) > 10 * cfg.event_tol
    status = "reached-time-limit"

    for _ in range(cfg.max_steps):
        if t >= cfg.max_time:
            status = "reached-time-limit"
            break
        h = min(h, cfg.max_step, cfg.max_time - t + 1e-9)
        x5, y5, ex, ey = _rk45_step(f, x, y, h)
        sc_x = cfg.atol + cfg.rtol * max(abs(x), abs(x5))
        sc_y = cfg.atol + cfg.rtol * max(abs(y), abs(y5))
        err = math.sqrt(0.5 * ((ex / sc_x) ** 2 + (ey / sc_y) ** 2))
        if err > 1.0:
            h *= max(0.2, 0.9 * err ** -0.2)
            continue
        # accepted
        hit_edge = None
        if armed_lo and x5 <= lo:
            hit_edge = "lo"
        elif armed_hi and x5 >= hi:
            hit_edge = "hi"
        if hit_edge is not None:
            # localize the crossing by bisection on the step size
            c = lo if hit_edge == "lo" else hi
            ha, hb = 0.0, h
            xm, ym, h_loc = x5, y5, h
            for _ in range(80):
                if abs(xm - c) <= cfg.event_tol:
                    break
                h_loc = 0.5 * (ha + hb)
                xm, ym, _, _ = _rk45_step(f, x, y, h_loc)
                if (xm - c) * (x - c) > 0:
                    ha = h_loc
                else:
                    hb = h_loc
            t += h_loc
            x, y = c, ym
            direction = 1 if hit_edge == "hi" else -1
            events.append((t, hit_edge, direction))
            if record:
                samples.append((t, x, y))
            status = "reached-boundary"
            break
        t += h
        x, y = x5, y5
        if record:
            samples.append((t, x, y))
        if monitor:
            hv = safe_h(x, y)
            if math.isfinite(hv):
                drift = max(drift, abs(hv - h0) / scale_h)
        if not armed_lo and abs(x - lo) > 10 * cfg.event_tol:
            armed_lo = True
        if not armed_hi and abs(x - hi) > 10 * cfg.event_tol:
            armed_hi = True
        if abs(x) > cfg.window or abs(y) > cfg.window:
            status = "left-window"
            break
        fx, fy = f(x, y)
        speed = math.hypot(fx, fy)
        if speed < 1e-12:
            slow += 1
            if slow >= 10:
                status = "hit-equilibrium"
                break
        else:
            slow = 0
        h *= min(5.0, max(0.2, 0.9 * err ** -0.2 if err > 0 else 5.0))
    else:
        status = "reached-time-limit"

    return Trajectory(samples, events, status, (x, y), drift)


# ---------------------------------------------------------------------------
# piecewise flow machinery
# ---------------------------------------------------------------------------


class FlowMachine:
    """Caches compiled fields for one system and runs the boundary maps."""

    def __init__(self, ps: PiecewiseSystem, cfg: IntegratorConfig | None = None):
        self.ps = ps
        self.cfg = cfg or IntegratorConfig()
        self.fields = [zone_field_fn(z) for z in ps.zones]
        self.bxs = [float(b) for b in ps.boundaries]

    def crossing_direction(self, bindex: int, y: float) -> int:
        """+1 / -1 for a transversal crossing at (x_b, y); raises
        SlidingPoint when the two adjacent normal velocities disagree in
        sign or one of them vanishes (Filippov sliding / tangency)."""
        c = self.bxs[bindex]
        fxl = self.fields[bindex](c, y)[0]
        fxr = self.fields[bindex + 1](c, y)[0]
        scale = 1.0 + abs(y)
        if abs(fxl) < self.cfg.tangent_tol * scale or abs(fxr) < self.cfg.tangent_tol * scale:
            raise SlidingPoint(f"tangential contact at boundary {bindex}, y={y}")
        if (fxl > 0) != (fxr > 0):
            raise SlidingPoint(f"sliding point at boundary {bindex}, y={y}")
        return 1 if fxl > 0 else -1

    def _hop(self, zone_index: int, state: tuple, record: bool = False):
        traj = integrate_arc(self.ps.zones[zone_index], state, self.cfg, record=record)
        if traj.status != "reached-boundary":
            raise NonReturning(f"arc in zone {zone_index} ended with {traj.status}")
        _, edge, direction = traj.events[-1]
        z = self.ps.zones[zone_index]
        bx = z.x_hi if edge == "hi" else z.x_lo
        bindex = self.ps.boundaries.index(bx)
        return bindex, traj.end[1], direction, traj

    def return_map(self, bindex: int, y: float, direction: int,
                   max_hops: int = 12, record: bool = False):
        """First return to boundary ``bindex`` with the same crossing
        direction.  Returns (ordinate, crossing log); the log holds
        (boundary index, ordinate, direction, trajectory?) per crossing."""
        d0 = self.crossing_direction(bindex, y)
        if d0 != direction:
            raise SlidingPoint(
                f"crossing at boundary {bindex}, y={y} runs opposite to requested")
        zone = bindex + 1 if direction > 0 else bindex
        state = (self.bxs[bindex], y)
        log = []
        for _ in range(max_hops):
            bhit, yhit, dhit, traj = self._hop(zone, state, record)
            dchk = self.crossing_direction(bhit, yhit)
            if dchk != dhit:  # pragma: no cover
                raise SlidingPoint(f"inconsistent crossing at boundary {bhit}")
            log.append((bhit, yhit, dhit, traj))
            if bhit == bindex and dhit == direction:
                return yhit, log
            zone = bhit + 1 if dhit > 0 else bhit
            state = (self.bxs[bhit], yhit)
        raise NonReturning("no return within the hop limit")

    def displacement(self, bindex: int, y: float, direction: int):
        try:
            y2, _ = self.return_map(bindex, y, direction)
        except DynamicsError:
            return None
        return y2 - y

    def oracle(self, bindex: int, y_range: tuple, grid: int,
               directions: tuple = (1, -1)):
        """Scan the displacement map for sign changes and refine each by
        bisection; returns (sorted fixed ordinates, count of near-zero grid
        nodes).  Undefined ordinates (sliding starts, escapes) are skipped.
        """
        if grid < 16:
            raise ValueError("oracle grid must be at least 16")
        lo, hi = float(y_range[0]), float(y_range[1])
        fixed: list[float] = []
        flat = 0
        for direction in directions:
            ys = [lo + (hi - lo) * i / (grid - 1) for i in range(grid)]
            ds = [self.displacement(bindex, y, direction) for y in ys]
            for d in ds:
                if d is not None and abs(d) < 1e-9:
                    flat += 1
            for i in range(grid - 1):
                d1, d2 = ds[i], ds[i + 1]
                if d1 is None or d2 is None:
                    continue
                if d1 == 0.0:
                    fixed.append(ys[i])
                    continue
                if d1 * d2 < 0:
                    a, b, da = ys[i], ys[i + 1], d1
                    for _ in range(60):
                        m = 0.5 * (a + b)
                        dm = self.displacement(bindex, m, direction)
                        if dm is None:
                            break
                        if abs(dm) < 1e-12 or (b - a) < 1e-10:
                            a = b = m
                            break
                        if (dm > 0) == (da > 0):
                            a, da = m, dm
                        else:
                            b = m
                    y_star = 0.5 * (a + b)
                    d_star = self.displacement(bindex, y_star, direction)
                    if d_star is not None and abs(d_star) < 1e-6:
                        fixed.append(y_star)
        fixed.sort()
        out = []
        for y in fixed:
            if not out or abs(y - out[-1]) > 1e-7:
                out.append(y)
        return out, flat

    # -- candidate verification ---------------------------------------------

    def verify_candidate(self, cand) -> tuple[str, str]:
        """Integrate the full declared loop; 'verified' only when every arc
        stays in its strip, every boundary hit matches a declared ordinate,
        and the loop closes.  Everything else is a typed rejection."""
        cfg = self.cfg
        expected: dict[int, list[float]] = {}
        for b, v in cand.ordinates:
            expected.setdefault(b, []).append(float(v))
        # singular-locus screen for global-center zones touching a boundary
        for b, v in cand.ordinates:
            for zi in (b, b + 1):
                if isinstance(self.ps.zones[zi].payload, GlobalCenter) and abs(float(v)) < 1e-9:
                    return "rejected", "integral singular locus"
        b0, y0v = min(cand.ordinates, key=lambda bv: bv[1])
        y0 = float(y0v)
        try:
            direction = self.crossing_direction(b0, y0)
        except SlidingPoint as e:
            return "rejected", f"start not a crossing point: {e}"
        zone = b0 + 1 if direction > 0 else b0
        state = (self.bxs[b0], y0)
        n_cross = len(cand.ordinates)
        hits = 0
        try:
            while hits < n_cross:
                bhit, yhit, dhit, traj = self._hop(zone, state)
                if traj.drift > 1e-8:
                    return "rejected", f"first-integral drift {traj.drift:.2e}"
                self.crossing_direction(bhit, yhit)
                match = min((abs(yhit - e) for e in expected.get(bhit, [])),
                            default=math.inf)
                if match > cfg.match_tol:
                    return "rejected", (
                        f"arc reached boundary {bhit} at y={yhit:.9f}, "
                        "not a declared crossing ordinate")
                hits += 1
                if hits == n_cross:
                    if bhit != b0 or dhit != direction:
                        return "rejected", "loop ended on the wrong boundary or direction"
                    if abs(yhit - y0) > cfg.closure_tol:
                        return "rejected", f"loop failed to close: gap {abs(yhit - y0):.2e}"
                    return "verified", ""
                zone = bhit + 1 if dhit > 0 else bhit
                state = (self.bxs[bhit], yhit)
        except SlidingPoint as e:
            return "rejected", f"sliding obstruction: {e}"
        except NotEntryPoint as e:
            return "rejected", f"arc leaves zone: {e}"
        except NonReturning as e:
            return "rejected", f"arc did not return: {e}"
        return "rejected", "loop did not close"  # pragma: no cover


# ---------------------------------------------------------------------------
# module-level convenience wrappers
# ---------------------------------------------------------------------------


def return_map(ps: PiecewiseSystem, bindex: int, y: float, direction: int = 1,
               cfg: IntegratorConfig | None = None):
    return FlowMachine(ps, cfg).return_map(bindex, y, direction)


def shooting_oracle(ps: PiecewiseSystem, bindex: int, y_range: tuple,
                    grid: int = 128, cfg: IntegratorConfig | None = None):
    return FlowMachine(ps, cfg).oracle(bindex, y_range, grid)[0]


def verify_candidate(ps: PiecewiseSystem, cand, cfg: IntegratorConfig | None = None):
    return FlowMachine(ps, cfg).verify_candidate(cand)


def oracle_window(report, default: tuple = (-10.0, 10.0)) -> tuple:
    """Scan window: candidate bounding box inflated by two, else default."""
    ys = [float(v) for c in report.candidates for _, v in c.ordinates]
    if not ys:
        return default
    lo, hi = min(ys), max(ys)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    half = max(half, 0.5)
    return (mid - 2 * half, mid + 2 * half)
