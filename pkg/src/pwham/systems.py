"""Planar vector-field families and the piecewise-system container.

Four zone families are supported, each carrying an exact first integral:

* ``DoubleCenter``  -- quadratic Hamiltonian field with centers at (0,0) and
  (0,1/n) in shifted coordinates,
* ``GlobalCenter``  -- integrable quadratic field whose rational first
  integral fills the upper half plane with closed orbits,
* ``CubicCenter``   -- general cubic Hamiltonian whose origin is a center
  exactly when b - a^2 > 0,
* ``LinearSaddle``  -- affine linear Hamiltonian piece; a saddle when
  beta^2 - alpha*delta > 0 and a linear center when it is negative.

A ``Zone`` places a family on a vertical strip (optionally time-reversed;
reversal flips the flow direction but not the level sets, and it matters for
the crossing-versus-sliding classification on the switching lines).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra import MultiPoly, RatLike, UniPoly, rat, real_roots

X = "x"
Y = "y"


def _x() -> MultiPoly:
    return MultiPoly.var(X)


def _y() -> MultiPoly:
    return MultiPoly.var(Y)


class SystemError(ValueError):
    """Raised for invalid system definitions or degenerate requests."""


# ---------------------------------------------------------------------------
# zone payloads
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DoubleCenter:
    """dx/dt = -y + l*X^2 + n*y^2,  dy/dt = X + p*X^2 - 2*l*X*y,  X = x+offset.

    For n != 0 the field has centers at X=0, y=0 and y=1/n.  n = 0 is the
    degenerate single-center member (it is what a continuous match with a
    linear piece forces, so it is accepted)."""

    l: Fraction
    n: Fraction
    p: Fraction
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        for f in ("l", "n", "p", "offset"):
            object.__setattr__(self, f, rat(getattr(self, f)))


@dataclass(frozen=True)
class GlobalCenter:
    """dx/dt = y - 2*X^2 - xi,  dy/dt = -2*X*y, with X = x+offset, xi > 0.

    The first integral (X^2 - y + xi/2) / y^2 is rational; y = 0 is its
    singular locus and bounds the period annulus around (X,y) = (0, xi)."""

    xi: Fraction
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "xi", rat(self.xi))
        object.__setattr__(self, "offset", rat(self.offset))
        if self.xi <= 0:
            raise SystemError("global center requires xi > 0")


@dataclass(frozen=True)
class CubicCenter:
    """Hamiltonian field of G = p*X^3 + q*y^3 + r*X^2*y + s*X*y^2
    - X^2/2 - a*X*y - b*y^2/2 (with X = x+offset):

        dx/dt = G_y = 3q*y^2 + r*X^2 + 2s*X*y - a*X - b*y
        dy/dt = -G_x = X + a*y - 3p*X^2 - 2r*X*y - s*y^2

    The origin (X=0, y=0) is a center iff b - a^2 > 0."""

    a: Fraction
    b: Fraction
    p: Fraction = Fraction(0)
    q: Fraction = Fraction(0)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        for f in ("a", "b", "p", "q", "r", "s", "offset"):
            object.__setattr__(self, f, rat(getattr(self, f)))

    @property
    def has_center_at_origin(self) -> bool:
        return self.b - self.a * self.a > 0


@dataclass(frozen=True)
class LinearSaddle:
    """dx/dt = -beta*x - delta*y + mu,  dy/dt = alpha*x + beta*y + gamma.

    Hamiltonian for every parameter choice; a saddle exactly when
    beta^2 - alpha*delta > 0 (eigenvalues +/- sqrt of that), a linear center
    when negative.  Fixture systems use both, so neither is rejected."""

    alpha: Fraction
    beta: Fraction
    delta: Fraction
    mu: Fraction
    gamma: Fraction

    def __post_init__(self):
        for f in ("alpha", "beta", "delta", "mu", "gamma"):
            object.__setattr__(self, f, rat(getattr(self, f)))

    @property
    def eigen_square(self) -> Fraction:
        return self.beta * self.beta - self.alpha * self.delta

    @property
    def is_saddle(self) -> bool:
        return self.eigen_square > 0

    @property
    def is_linear_center(self) -> bool:
        return self.eigen_square < 0


Payload = Union[DoubleCenter, GlobalCenter, CubicCenter, LinearSaddle]

KIND_NAMES = {
    DoubleCenter: "double_center",
    GlobalCenter: "global_center",
    CubicCenter: "cubic_center",
    LinearSaddle: "linear",
}


@dataclass(frozen=True)
class Zone:
    """A payload on the open vertical strip (x_lo, x_hi); None is +/-infinity.
    ``reverse`` runs the field backwards in time."""

    payload: Payload
    x_lo: Optional[Fraction] = None
    x_hi: Optional[Fraction] = None
    reverse: bool = False

    @property
    def kind(self) -> str:
        return KIND_NAMES[type(self.payload)]

    def contains(self, x: Fraction | float) -> bool:
        lo_ok = self.x_lo is None or x > self.x_lo
        hi_ok = self.x_hi is None or x < self.x_hi
        return lo_ok and hi_ok


@dataclass(frozen=True)
class PiecewiseSystem:
    """Ordered zones (left to right) split by vertical lines x = c_i."""

    zones: tuple[Zone, ...]
    boundaries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.zones) != len(self.boundaries) + 1:
            raise SystemError("zone count must be boundary count + 1")
        if any(b1 >= b2 for b1, b2 in zip(self.boundaries, self.boundaries[1:])):
            raise SystemError("boundaries must be strictly increasing")

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(z.kind for z in self.zones)


def piecewise_system(payloads: list[Payload], boundaries: list[RatLike],
                     reverse: list[bool] | None = None) -> PiecewiseSystem:
    """Assemble a PiecewiseSystem, deriving each zone's strip."""
    bs = tuple(rat(b) for b in boundaries)
    if reverse is None:
        reverse = [False] * len(payloads)
    zones = []
    for i, p in enumerate(payloads):
        lo = bs[i - 1] if i > 0 else None
        hi = bs[i] if i < len(bs) else None
        zones.append(Zone(p, lo, hi, reverse[i]))
    return PiecewiseSystem(tuple(zones), bs)


# ---------------------------------------------------------------------------
# fields and first integrals (exact)
# ---------------------------------------------------------------------------


def _shifted_x(offset: Fraction) -> MultiPoly:
    return _x() + MultiPoly.const(offset)


def field_polys(zone: Zone) -> tuple[MultiPoly, MultiPoly]:
    """The zone's vector field as exact polynomials in (x, y), absolute
    coordinates, with the reversal flag applied."""
    p = zone.payload
    y = _y()
    if isinstance(p, DoubleCenter):
        xs = _shifted_x(p.offset)
        fx = -y + p.l * xs * xs + p.n * y * y
        fy = xs + p.p * xs * xs - 2 * p.l * xs * y
    elif isinstance(p, GlobalCenter):
        xs = _shifted_x(p.offset)
        fx = y - 2 * xs * xs - MultiPoly.const(p.xi)
        fy = -2 * xs * y
    elif isinstance(p, CubicCenter):
        xs = _shifted_x(p.offset)
        fx = (3 * p.q * y * y + p.r * xs * xs + 2 * p.s * xs * y
              - p.a * xs - p.b * y)
        fy = (xs + p.a * y - 3 * p.p * xs * xs - 2 * p.r * xs * y
              - p.s * y * y)
    elif isinstance(p, LinearSaddle):
        x = _x()
        fx = -p.beta * x - p.delta * y + MultiPoly.const(p.mu)
        fy = p.alpha * x + p.beta * y + MultiPoly.const(p.gamma)
    else:  # pragma: no cover
        raise SystemError(f"unknown payload {p!r}")
    if zone.reverse:
        fx, fy = -fx, -fy
    return fx, fy


def hamiltonian(zone: Zone) -> tuple[MultiPoly, MultiPoly]:
    """First integral of the zone as a (numerator, denominator) pair in
    absolute coordinates.  Denominator is 1 except for the global center,
    whose integral is (X^2 - y + xi/2) / y^2."""
    p = zone.payload
    y = _y()
    one = MultiPoly.const(1)
    if isinstance(p, DoubleCenter):
        xs = _shifted_x(p.offset)
        num = (Fraction(1, 2) * (xs * xs + y * y) - p.l * xs * xs * y
               - Fraction(p.n, 3) * y ** 3 + Fraction(p.p, 3) * xs ** 3)
        return num, one
    if isinstance(p, GlobalCenter):
        xs = _shifted_x(p.offset)
        num = xs * xs - y + MultiPoly.const(Fraction(p.xi, 2))
        return num, y * y
    if isinstance(p, CubicCenter):
        xs = _shifted_x(p.offset)
        num = (p.p * xs ** 3 + p.q * y ** 3 + p.r * xs * xs * y
               + p.s * xs * y * y - Fraction(1, 2) * xs * xs
               - p.a * xs * y - Fraction(p.b, 2) * y * y)
        return num, one
    if isinstance(p, LinearSaddle):
        x = _x()
        num = (-p.gamma * x + p.mu * y - p.beta * x * y
               - Fraction(1, 2) * (p.alpha * x * x + p.delta * y * y))
        return num, one
    raise SystemError(f"unknown payload {p!r}")  # pragma: no cover


def vector_field(zone: Zone, pt: tuple) -> tuple:
    """Evaluate the field at a point; exact for rational input, float for
    float input."""
    fx, fy = field_polys(zone)
    x, y = pt
    if isinstance(x, float) or isinstance(y, float):
        at = {X: float(x), Y: float(y)}
        return fx.eval_float(at), fy.eval_float(at)
    at = {X: rat(x), Y: rat(y)}
    return fx.eval(at), fy.eval(at)


def boundary_restriction(zone: Zone, c: RatLike) -> UniPoly:
    """Polynomial first integral restricted to the line x = c, as a UniPoly
    in y.  Errors for the global center (rational integral); use
    global_restriction_constant for that family."""
    num, den = hamiltonian(zone)
    if not (den - MultiPoly.const(1)).is_zero:
        raise SystemError("rational integral: no polynomial restriction")
    return num.subs({X: rat(c)}).as_unipoly(Y)


def global_restriction_constant(zone: Zone, c: RatLike) -> Fraction:
    """K such that the global-center integral on x = c is (K - y) / y^2."""
    if not isinstance(zone.payload, GlobalCenter):
        raise SystemError("zone is not a global center")
    xs = rat(c) + zone.payload.offset
    return xs * xs + Fraction(zone.payload.xi, 2)


# ---------------------------------------------------------------------------
# linear saddle geometry
# ---------------------------------------------------------------------------


def saddle_data(s: LinearSaddle) -> tuple[tuple[Fraction, Fraction], tuple[float, float]]:
    """Equilibrium point (exact) and eigenvalue pair (floats) of the linear
    Hamiltonian piece.  Errors when the linear part is degenerate."""
    det = s.alpha * s.delta - s.beta * s.beta
    if det == 0:
        raise SystemError("degenerate linear part")
    ex = -(s.beta * s.mu + s.delta * s.gamma) / det
    ey = (s.alpha * s.mu + s.beta * s.gamma) / det
    lam2 = float(s.eigen_square)
    if lam2 >= 0:
        lam = math.sqrt(lam2)
        return (ex, ey), (lam, -lam)
    lam = math.sqrt(-lam2)
    return (ex, ey), (complex(0, lam), complex(0, -lam))


def separatrices(s: LinearSaddle) -> tuple[tuple[tuple[Fraction, Fraction], float], ...]:
    """The two invariant lines through the saddle as (point, slope) pairs,
    slopes -(beta +/- sqrt(beta^2 - alpha*delta)) / delta.

    Errors when delta = 0 (formula degenerates; use separatrix_lines, which
    falls back to eigenvector directions) or when the piece is not a saddle.
    """
    if s.delta == 0:
        raise SystemError("separatrix formula degenerate; use eigenvectors")
    if not s.is_saddle:
        raise SystemError("not a saddle: no separatrices")
    eq, _ = saddle_data(s)
    root = math.sqrt(float(s.eigen_square))
    d = float(s.delta)
    b = float(s.beta)
    return ((eq, -(b + root) / d), (eq, -(b - root) / d))


def separatrix_lines(s: LinearSaddle) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Separatrices as (point, direction) pairs; handles delta = 0 via the
    eigenvectors of the linear part."""
    if not s.is_saddle:
        raise SystemError("not a saddle: no separatrices")
    eq, _ = saddle_data(s)
    pt = (float(eq[0]), float(eq[1]))
    root = math.sqrt(float(s.eigen_square))
    a, b, d = float(s.alpha), float(s.beta), float(s.delta)
    out = []
    for lam in (root, -root):
        # eigenvector of [[-b, -d], [a, b]]: (-b - lam) vx - d vy = 0
        if d != 0:
            v = (1.0, -(b + lam) / d)
        elif abs(b + lam) > 1e-12:
            v = (0.0, 1.0)
        else:
            # lam = -b row is vacuous; use a vx + (b - lam) vy = 0
            v = (2.0 * b, -a) if (a or b) else (1.0, 0.0)
        n = math.hypot(*v)
        out.append((pt, (v[0] / n, v[1] / n)))
    return out


def equilibria(zone: Zone) -> list[tuple[Fraction, Fraction]]:
    """Exact equilibria with closed forms (used for plots and screens)."""
    p = zone.payload
    if isinstance(p, DoubleCenter):
        pts = [(-p.offset, Fraction(0))]
        if p.n != 0:
            pts.append((-p.offset, 1 / p.n))
        return pts
    if isinstance(p, GlobalCenter):
        return [(-p.offset, p.xi)]
    if isinstance(p, LinearSaddle):
        try:
            eq, _ = saddle_data(p)
            return [eq]
        except SystemError:
            return []
    if isinstance(p, CubicCenter):
        # origin of the shifted frame is always an equilibrium; others exist
        # but have no rational closed form in general
        return [(-p.offset, Fraction(0))]
    return []  # pragma: no cover


# ---------------------------------------------------------------------------
# continuity, mirroring
# ---------------------------------------------------------------------------


def is_continuous(ps: PiecewiseSystem) -> tuple[bool, list]:
    """Exact continuity test: at every boundary x = c the adjacent fields
    must agree identically in y.  Returns (flag, mismatches); each mismatch
    is (boundary abscissa, witness y, (gap_x, gap_y))."""
    mismatches = []
    for i, c in enumerate(ps.boundaries):
        lfx, lfy = field_polys(ps.zones[i])
        rfx, rfy = field_polys(ps.zones[i + 1])
        dx = (lfx - rfx).subs({X: c}).as_unipoly(Y)
        dy = (lfy - rfy).subs({X: c}).as_unipoly(Y)
        if dx.is_zero and dy.is_zero:
            continue
        w = Fraction(0)
        while dx(w) == 0 and dy(w) == 0:
            w += 1
        mismatches.append((c, w, (dx(w), dy(w))))
    return (not mismatches), mismatches


def mirror_payload(p: Payload) -> Payload:
    """Payload of the x -> -x reflection.  For the center families the
    reflected field is the time reversal of a family member, which the
    caller accounts for by toggling the zone's reverse flag."""
    if isinstance(p, LinearSaddle):
        return LinearSaddle(-p.alpha, p.beta, -p.delta, -p.mu, p.gamma)
    if isinstance(p, DoubleCenter):
        return DoubleCenter(p.l, p.n, -p.p, -p.offset)
    if isinstance(p, GlobalCenter):
        return GlobalCenter(p.xi, -p.offset)
    if isinstance(p, CubicCenter):
        return CubicCenter(-p.a, p.b, -p.p, p.q, p.r, -p.s, -p.offset)
    raise SystemError(f"unknown payload {p!r}")  # pragma: no cover


def mirror(ps: PiecewiseSystem) -> PiecewiseSystem:
    """The system seen through x -> -x: zone order reverses, boundaries
    negate.  Orbits map to orbits, so cycle counts are preserved."""
    payloads = []
    flags = []
    for z in reversed(ps.zones):
        payloads.append(mirror_payload(z.payload))
        flip = not isinstance(z.payload, LinearSaddle)
        flags.append(z.reverse ^ flip)
    bounds = [-b for b in reversed(ps.boundaries)]
    return piecewise_system(payloads, bounds, flags)


# ---------------------------------------------------------------------------
# quadratic-center normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralQuadCenter:
    """dx/dt = -y + a1 x^2 + b1 xy + c1 y^2, dy/dt = x + a2 x^2 + b2 xy + c2 y^2."""

    a1: Fraction
    b1: Fraction
    c1: Fraction
    a2: Fraction
    b2: Fraction
    c2: Fraction

    def __post_init__(self):
        for f in ("a1", "b1", "c1", "a2", "b2", "c2"):
            object.__setattr__(self, f, rat(getattr(self, f)))


@dataclass(frozen=True)
class NormalQuadCenter:
    """Rotated form dx/dt = -y + l x^2 + m xy + n y^2, dy/dt = x + p x^2 + q xy.

    Coefficients are floats (the rotation angle is transcendental); the
    Hamiltonian sub-case is m = 0, q = -2l, n != 0."""

    l: float
    m: float
    n: float
    p: float
    q: float

    def is_hamiltonian_case(self, tol: float = 1e-9) -> bool:
        return abs(self.m) < tol and abs(self.q + 2 * self.l) < tol and abs(self.n) > tol


def cubic_residual(g: GeneralQuadCenter, theta: float) -> float:
    """The y^2-in-v coefficient of the rotated second equation; the rotation
    angle is chosen to kill it."""
    s, c = math.sin(theta), math.cos(theta)
    return (float(g.a1) * s**3 + float(g.b1 + g.a2) * s * s * c
            + float(g.c1 + g.b2) * c * c * s + float(g.c2) * c**3)


def rotate_to_normal(g: GeneralQuadCenter) -> tuple[float, NormalQuadCenter]:
    """Rotate coordinates so the second equation loses its y^2 term.

    The angle solves a cubic homogeneous trigonometric equation; in the
    tangent substitution it is a real cubic root (one always exists), and
    the degenerate leading case a1 = 0 is handled by theta = pi/2."""
    cub = UniPoly([g.c2, g.c1 + g.b2, g.b1 + g.a2, g.a1], "t")
    if cub.is_zero:
        theta = 0.0
    elif g.a1 == 0:
        theta = math.pi / 2
    else:
        roots = real_roots(cub, Fraction(1, 10**15))
        theta = math.atan(float(roots[0]))
    s, c = math.sin(theta), math.cos(theta)

    def rotate_quad(A: float, B: float, C: float) -> tuple[float, float, float]:
        # x = c u + s v, y = -s u + c v applied to A x^2 + B xy + C y^2
        return (A * c * c - B * c * s + C * s * s,
                2 * A * c * s + B * (c * c - s * s) - 2 * C * c * s,
                A * s * s + B * c * s + C * c * c)

    P = (float(g.a1), float(g.b1), float(g.c1))
    Q = (float(g.a2), float(g.b2), float(g.c2))
    pu = rotate_quad(*P)
    qu = rotate_quad(*Q)
    # new components: cos*P - sin*Q and sin*P + cos*Q
    l, m, n = (c * pu[i] - s * qu[i] for i in range(3))
    p, q, r = (s * pu[i] + c * qu[i] for i in range(3))
    if abs(r) > 1e-9 * (1 + max(map(abs, (l, m, n, p, q)))):  # pragma: no cover
        raise SystemError(f"rotation failed to cancel the y^2 term: r = {r}")
    return theta, NormalQuadCenter(l, m, n, p, q)
