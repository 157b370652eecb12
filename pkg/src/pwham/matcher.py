"""Matching systems: polynomial equations for crossing ordinates.

A periodic orbit that crosses the switching lines transversally pins its
boundary ordinates to common level curves of the per-zone first integrals.
This module turns a two- or three-zone system into the corresponding
polynomial system, with

* outer-zone level equalities divided exactly by the coincident-point factor
  (the difference of the two ordinates),
* rational integrals cleared of denominators (introducing the spurious
  ordinate y = 0 for the global center, recorded for screening),
* all signs derived from the Hamiltonians themselves rather than from any
  per-case shorthand, and
* the sum/difference change of variables used by the three-zone analysis.

Ordinates on each boundary are stored canonically as (lower, upper).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from .algebra import MultiPoly, RatLike, rat
from .systems import (
    CubicCenter,
    DoubleCenter,
    GlobalCenter,
    LinearSaddle,
    PiecewiseSystem,
    Zone,
    boundary_restriction,
    global_restriction_constant,
)


class MatchError(ValueError):
    """Raised when a matching system cannot be built as requested."""


@dataclass
class MatchingSystem:
    """Square polynomial system in the crossing ordinates.

    ``orderings`` lists (lower, upper) variable pairs that must satisfy a
    strict inequality; ``nonzero`` lists variables excluded from 0 (cleared
    rational denominators); ``provenance`` names the (boundary, zone) pair
    behind each equation.
    """

    unknowns: tuple[str, ...]
    equations: list[MultiPoly]
    topology: str
    orderings: list[tuple[str, str]]
    provenance: list[str]
    boundaries: tuple[Fraction, ...]
    nonzero: tuple[str, ...] = ()
    symbols: dict = field(default_factory=dict)
    degenerate_family: bool = False


@dataclass
class SumDiffSystem:
    """The same three-zone system in u = y1+y2, v = y2-y1, w = y3+y4,
    z = y4-y3; crossing solutions require v > 0 and z > 0 (v = z = 0 is the
    coincident-point locus that the division already removed)."""

    unknowns: tuple[str, str, str, str]
    equations: list[MultiPoly]
    source: MatchingSystem

    def back_map(self) -> dict[str, MultiPoly]:
        y1, y2, y3, y4 = (MultiPoly.var(v) for v in self.source.unknowns)
        return {
            "u": y1 + y2,
            "v": y2 - y1,
            "w": y3 + y4,
            "z": y4 - y3,
        }


# ---------------------------------------------------------------------------
# equation builders
# ---------------------------------------------------------------------------


def _power_sum(va: MultiPoly, vb: MultiPoly, k: int) -> MultiPoly:
    """(a^k - b^k) / (a - b) = sum_{i<k} a^i b^(k-1-i)."""
    acc = MultiPoly.zero()
    for i in range(k):
        acc = acc + va**i * vb ** (k - 1 - i)
    return acc


def pair_equation(zone: Zone, c: RatLike, va: str, vb: str) -> MultiPoly:
    """Level equality H(c, a) = H(c, b) with the exact factor (a - b)
    removed; for the global center the y^2 denominators are cleared first,
    which adds the spurious root y = 0 (caller records the exclusion)."""
    a, b = MultiPoly.var(va), MultiPoly.var(vb)
    if isinstance(zone.payload, GlobalCenter):
        k = global_restriction_constant(zone, c)
        return k * (a + b) - a * b
    f = boundary_restriction(zone, c)
    acc = MultiPoly.zero()
    for k, coef in enumerate(f.coeffs):
        if k == 0 or coef == 0:
            continue
        acc = acc + coef * _power_sum(a, b, k)
    return acc


def transport_equation(zone: Zone, c_from: RatLike, c_to: RatLike,
                       v_from: str, v_to: str) -> MultiPoly:
    """H(c_from, y_from) - H(c_to, y_to) for a polynomial-integral zone."""
    f = boundary_restriction(zone, c_from)
    g = boundary_restriction(zone, c_to)
    a, b = MultiPoly.var(v_from), MultiPoly.var(v_to)
    acc = MultiPoly.zero()
    for k, coef in enumerate(f.coeffs):
        if coef != 0:
            acc = acc + coef * a**k
    for k, coef in enumerate(g.coeffs):
        if coef != 0:
            acc = acc - coef * b**k
    return acc


def raw_pair_difference(zone: Zone, c: RatLike, va: str, vb: str) -> MultiPoly:
    """Undivided level difference (numerator form).  Antisymmetric under
    swapping the two ordinates; pair_equation is this divided by (a - b)
    exactly (times the cleared denominator for rational integrals)."""
    a, b = MultiPoly.var(va), MultiPoly.var(vb)
    if isinstance(zone.payload, GlobalCenter):
        k = global_restriction_constant(zone, c)
        ka = MultiPoly.const(k)
        return (ka - a) * b * b - (ka - b) * a * a
    f = boundary_restriction(zone, c)
    acc = MultiPoly.zero()
    for k, coef in enumerate(f.coeffs):
        if coef != 0:
            acc = acc + coef * (a**k - b**k)
    return acc


def _zone_nonzero(zone: Zone, names: tuple[str, ...]) -> tuple[str, ...]:
    return names if isinstance(zone.payload, GlobalCenter) else ()


# ---------------------------------------------------------------------------
# topology builders
# ---------------------------------------------------------------------------


def build_two_zone(left: Zone, right: Zone, c: RatLike) -> MatchingSystem:
    """Matching system for a cycle crossing the single line x = c twice.

    Unknowns (y1, y2) are the lower and upper crossing ordinates.  When the
    two level-pair equations are proportional the system is a one-parameter
    family (continuous same-integral case) and is flagged as degenerate.
    """
    c = rat(c)
    e1 = pair_equation(left, c, "y1", "y2")
    e2 = pair_equation(right, c, "y1", "y2")
    degenerate = e1.is_proportional_to(e2) or e1.is_zero or e2.is_zero
    return MatchingSystem(
        unknowns=("y1", "y2"),
        equations=[e1, e2],
        topology="two_zone",
        orderings=[("y1", "y2")],
        provenance=[f"left zone level pair at x={c}", f"right zone level pair at x={c}"],
        boundaries=(c,),
        nonzero=_zone_nonzero(left, ("y1", "y2")) + _zone_nonzero(right, ("y1", "y2")),
        symbols=_two_zone_symbols(left, right),
        degenerate_family=degenerate,
    )


def build_three_zone(left: Zone, mid: Zone, right: Zone,
                     c1: RatLike, c2: RatLike) -> MatchingSystem:
    """Matching system for a cycle crossing x = c1 and x = c2 once each way.

    Unknowns (y1, y2) on x = c1 and (y3, y4) on x = c2, each pair stored as
    (lower, upper).  Middle-zone arcs cannot cross each other, so the lower
    pair and the upper pair each share a level curve of the middle integral.
    """
    c1, c2 = rat(c1), rat(c2)
    if c1 >= c2:
        raise MatchError("boundaries must satisfy c1 < c2")
    e1 = pair_equation(left, c1, "y1", "y2")
    e2 = transport_equation(mid, c1, c2, "y1", "y3")
    e3 = transport_equation(mid, c1, c2, "y2", "y4")
    e4 = pair_equation(right, c2, "y3", "y4")
    return MatchingSystem(
        unknowns=("y1", "y2", "y3", "y4"),
        equations=[e1, e2, e3, e4],
        topology="three_zone",
        orderings=[("y1", "y2"), ("y3", "y4")],
        provenance=[
            f"left zone level pair at x={c1}",
            f"middle zone transport x={c1} (lower) -> x={c2} (lower)",
            f"middle zone transport x={c1} (upper) -> x={c2} (upper)",
            f"right zone level pair at x={c2}",
        ],
        boundaries=(c1, c2),
        nonzero=_zone_nonzero(left, ("y1", "y2")) + _zone_nonzero(right, ("y3", "y4")),
        symbols=_three_zone_symbols(left, mid, right),
        degenerate_family=e1.is_zero or e4.is_zero,
    )


def _two_zone_symbols(left: Zone, right: Zone) -> dict:
    sym: dict = {}
    lp, rp = left.payload, right.payload
    if isinstance(rp, LinearSaddle):
        if isinstance(lp, DoubleCenter) and lp.n != 0 and rp.delta != 0:
            sym["discriminant"] = (Fraction(12) * rp.mu / (lp.n * rp.delta**2)
                                   * (rp.delta - lp.n * rp.mu))
        if isinstance(lp, CubicCenter):
            sym["two_cycle_condition"] = (2 * lp.b * rp.delta * rp.mu * lp.q
                                          - 3 * rp.mu**2 * lp.q**2)
    return sym


def _three_zone_symbols(left: Zone, mid: Zone, right: Zone) -> dict:
    """Shorthand parameter combinations, one convention per left-zone family
    (they differ between the case analyses and are kept only for reports)."""
    if not (isinstance(mid.payload, LinearSaddle) and isinstance(right.payload, LinearSaddle)):
        return {}
    m, r = mid.payload, right.payload
    lp = left.payload
    if isinstance(lp, DoubleCenter):
        return {
            "l1": -(m.mu + m.beta),
            "m1": m.mu - m.beta,
            "l2": -(r.mu - r.beta),
        }
    if isinstance(lp, GlobalCenter):
        return {
            "l1": -(m.beta + m.mu),
            "m1": m.beta - m.mu,
            "l2": r.beta - r.mu,
        }
    if isinstance(lp, CubicCenter):
        return {
            "l1": -2 * (m.beta + m.mu),
            "m1": 2 * (m.beta - m.mu),
            "l2": 2 * (r.beta - r.mu),
            "k1": 4 * m.gamma,
        }
    return {}


# ---------------------------------------------------------------------------
# sum/difference substitution
# ---------------------------------------------------------------------------


def to_sum_diff(ms: MatchingSystem) -> SumDiffSystem:
    """Rewrite a three-zone system in u = y1+y2, v = y2-y1, w = y3+y4,
    z = y4-y3.  The transported pair is replaced by its difference and sum,
    and every equation is doubled to clear halves.  The outer equations are
    even in (v, z), which is what collapses the elimination to a quartic in
    the swap-invariant u."""
    if ms.topology != "three_zone":
        raise MatchError("sum/difference form applies to three-zone systems")
    u, v, w, z = (MultiPoly.var(t) for t in ("u", "v", "w", "z"))
    half = Fraction(1, 2)
    subs = {
        "y1": half * (u - v),
        "y2": half * (u + v),
        "y3": half * (w - z),
        "y4": half * (w + z),
    }
    e1, e2, e3, e4 = ms.equations
    s1 = 2 * e1.subs(subs)
    s_diff = 2 * (e3 - e2).subs(subs)
    s_sum = 2 * (e2 + e3).subs(subs)
    s4 = 2 * e4.subs(subs)
    return SumDiffSystem(("u", "v", "w", "z"), [s1, s_diff, s_sum, s4], ms)


def sum_diff_round_trip(sd: SumDiffSystem) -> list[MultiPoly]:
    """Substitute the ordinate expressions back and undo the linear
    recombination, recovering the original equations exactly."""
    bm = sd.back_map()
    s1, sdiff, ssum, s4 = (e.subs(bm) for e in sd.equations)
    quarter = Fraction(1, 4)
    return [
        Fraction(1, 2) * s1,
        quarter * (ssum - sdiff),
        quarter * (ssum + sdiff),
        Fraction(1, 2) * s4,
    ]


def matching_systems_for(ps: PiecewiseSystem) -> list[MatchingSystem]:
    """All crossing-cycle topologies of a system: the full multi-zone one
    plus, for three-zone systems, the two adjacent-pair topologies (cycles
    that cross only one of the lines; their middle arc must stay inside the
    strip, which the verifier enforces)."""
    if len(ps.zones) == 2:
        return [build_two_zone(ps.zones[0], ps.zones[1], ps.boundaries[0])]
    if len(ps.zones) == 3:
        return [
            build_three_zone(ps.zones[0], ps.zones[1], ps.zones[2],
                             ps.boundaries[0], ps.boundaries[1]),
            build_two_zone(ps.zones[0], ps.zones[1], ps.boundaries[0]),
            build_two_zone(ps.zones[1], ps.zones[2], ps.boundaries[1]),
        ]
    raise MatchError(f"unsupported zone count {len(ps.zones)}")
