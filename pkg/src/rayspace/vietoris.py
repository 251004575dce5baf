"""Open regions of a ray-graph and Vietoris-topology membership tests.

An open region is a finite union of open metric balls, or the whole space.
Its derived form (exact open intervals per element, computed from the PL
distance envelope) makes upper membership an interval-containment check and
lower membership a point-to-set distance comparison, both exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import ParseError, PreconditionError
from .graph import GraphPoint, RayGraph, point_distance
from .metric import dist_point_to_set, distance_profile
from .paths import HyperPath
from .sets import ClosedSubset

# A derived interval: (lo, lo_open, hi, hi_open); hi None means unbounded.
DerivedInterval = tuple[Fraction, bool, Fraction | None, bool]


@dataclass(frozen=True)
class OpenRegion:
    """Finite union of open balls, or the distinguished whole space."""

    graph: RayGraph
    balls: tuple[tuple[GraphPoint, Fraction], ...]
    all_space: bool = False

    @cached_property
    def derived(self) -> dict[str, tuple[DerivedInterval, ...]]:
        """Exact per-element open-interval form of the region."""
        if self.all_space:
            out: dict[str, tuple[DerivedInterval, ...]] = {}
            for e in self.graph.edges:
                out[e.id] = ((Fraction(0), False, e.length, False),)
            for r in self.graph.rays:
                out[r.id] = ((Fraction(0), False, None, False),)
            return out
        raw: dict[str, list[DerivedInterval]] = {}
        for center, radius in self.balls:
            for eid, ivs in _ball_intervals(self.graph, center, radius).items():
                raw.setdefault(eid, []).extend(ivs)
        return {eid: tuple(_merge_open(ivs)) for eid, ivs in raw.items() if ivs}

    def contains_point(self, p: GraphPoint) -> bool:
        if self.all_space:
            return True
        return any(point_distance(self.graph, p, c) < r for c, r in self.balls)


def ball(g: RayGraph, p: GraphPoint, r: Fraction) -> OpenRegion:
    """The open metric ball around p with radius r, as an OpenRegion."""
    r = Fraction(r)
    if r <= 0:
        raise PreconditionError("ball radius must be positive")
    g.validate_point(p)
    return OpenRegion(g, ((g.normalize_point(p), r),))


def union_regions(regions: Sequence[OpenRegion]) -> OpenRegion:
    if not regions:
        raise PreconditionError("union of zero regions")
    g = regions[0].graph
    if any(u.graph != g for u in regions):
        raise PreconditionError("regions live on different graphs")
    if any(u.all_space for u in regions):
        return OpenRegion(g, (), all_space=True)
    balls = tuple(b for u in regions for b in u.balls)
    return OpenRegion(g, balls)


def _ball_intervals(
    g: RayGraph, center: GraphPoint, radius: Fraction
) -> dict[str, list[DerivedInterval]]:
    target = ClosedSubset.from_pieces(g, {center.element: [(center.coord, center.coord)]})
    out: dict[str, list[DerivedInterval]] = {}
    vcache: dict[str, Fraction] = {}
    for eid in [e.id for e in g.edges] + [r.id for r in g.rays]:
        prof = distance_profile(g, eid, target, vcache)
        if prof.min_value() >= radius:
            continue
        ivs: list[DerivedInterval] = []
        xs, vals = prof.xs, prof.vals
        for k in range(len(xs) - 1):
            _sublevel_segment(xs[k], vals[k], xs[k + 1], vals[k + 1], radius, ivs)
        if g.element_length(eid) is None and vals[-1] < radius:
            # distance to a point target grows with slope 1 far out on a ray
            assert prof.final_slope == 1
            ivs.append((xs[-1], False, xs[-1] + (radius - vals[-1]), True))
        merged = _merge_open(ivs)
        if merged:
            out[eid] = list(merged)
    return out


def _sublevel_segment(x1, v1, x2, v2, r, acc: list[DerivedInterval]) -> None:
    """Append the open sublevel {v < r} of one linear segment to acc."""
    if v1 < r and v2 < r:
        acc.append((x1, False, x2, False))
    elif v1 < r <= v2:
        cut = x1 + (r - v1) * (x2 - x1) / (v2 - v1)
        acc.append((x1, False, cut, True))
    elif v2 < r <= v1:
        cut = x2 - (r - v2) * (x2 - x1) / (v1 - v2)
        acc.append((cut, True, x2, False))


def _merge_open(ivs: list[DerivedInterval]) -> list[DerivedInterval]:
    """Merge coordinate intervals, honoring open/closed endpoint flags."""
    ivs = sorted(ivs, key=lambda iv: (iv[0], iv[1]))
    out: list[DerivedInterval] = []
    for lo, lo_open, hi, hi_open in ivs:
        if out:
            plo, plo_open, prev_hi, prev_hi_open = out[-1]
            touches = prev_hi is None or lo < prev_hi or (lo == prev_hi and not (lo_open and prev_hi_open))
            if touches:
                if prev_hi is None or (hi is None):
                    nhi, nhi_open = None, False
                elif hi > prev_hi:
                    nhi, nhi_open = hi, hi_open
                elif hi < prev_hi:
                    nhi, nhi_open = prev_hi, prev_hi_open
                else:
                    nhi, nhi_open = hi, hi_open and prev_hi_open
                out[-1] = (plo, plo_open, nhi, nhi_open)
                continue
        out.append((lo, lo_open, hi, hi_open))
    return [iv for iv in out if iv[2] is None or iv[0] < iv[2] or (not iv[1] and not iv[3])]


def _interval_inside(a: Fraction, b: Fraction, ivs: tuple[DerivedInterval, ...]) -> bool:
    """Is the closed interval [a, b] inside the union of derived intervals?"""
    for lo, lo_open, hi, hi_open in ivs:
        lo_ok = lo < a or (lo == a and not lo_open)
        hi_ok = hi is None or hi > b or (hi == b and not hi_open)
        if lo_ok and hi_ok:
            return True
    return False


def member_upper(A: ClosedSubset, U: OpenRegion) -> bool:
    """A lies entirely inside the open region (the upper Vietoris condition)."""
    if U.all_space:
        return True
    derived = U.derived
    for eid, ep in A.pieces:
        if ep.tail is not None:
            return False  # finite ball unions are bounded
        ivs = derived.get(eid, ())
        for a, b in ep.intervals:
            if not _interval_inside(a, b, ivs):
                return False
    return True


def member_lower(A: ClosedSubset, V: OpenRegion) -> bool:
    """A meets the open region (the lower Vietoris condition)."""
    if V.all_space:
        return True
    g = V.graph
    return any(dist_point_to_set(g, center, A) < radius for center, radius in V.balls)


def member_basic(A: ClosedSubset, Us: Sequence[OpenRegion]) -> bool:
    """Membership in the basic Vietoris open <U1,...,Un>."""
    if not Us:
        raise PreconditionError("a basic open needs at least one region")
    return member_upper(A, union_regions(Us)) and all(member_lower(A, u) for u in Us)


# ---- continuity witnesses ---------------------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    ok: bool
    delta: Fraction | None = None
    failed_at: Fraction | None = None

    def __str__(self) -> str:
        if self.ok:
            return f"delta={self.delta}"
        return f"failure (no delta above resolution; first bad t={self.failed_at})"


def continuity_witness(
    P: HyperPath,
    t0: Fraction,
    Us: Sequence[OpenRegion],
    resolution: Fraction,
) -> WitnessResult:
    """Sampled Vietoris-continuity certificate around t0.

    Starting from the largest delta that reaches an end of [0, 1], halve
    until every sampled t with |t - t0| <= delta (step = resolution) keeps
    the path value inside the basic open; report failure when delta would
    drop below the resolution.
    """
    t0 = Fraction(t0)
    resolution = Fraction(resolution)
    if resolution <= 0:
        raise PreconditionError("resolution must be positive")
    if not 0 <= t0 <= 1:
        raise PreconditionError("t0 outside [0,1]")
    memo: dict[Fraction, bool] = {}

    def ok_at(t: Fraction) -> bool:
        if t not in memo:
            memo[t] = member_basic(P.at(t), Us)
        return memo[t]

    if not ok_at(t0):
        raise PreconditionError("path value at t0 is not in the basic open")

    delta = max(t0, 1 - t0)
    last_bad: Fraction | None = None
    while delta >= resolution:
        steps = int(delta / resolution)
        offsets = [delta] + [k * resolution for k in range(steps, 0, -1)]
        bad = None
        for off in offsets:  # outermost first: failures live near the ends
            for t in (t0 - off, t0 + off):
                if 0 <= t <= 1 and not ok_at(t):
                    bad = t
                    break
            if bad is not None:
                break
        if bad is None:
            return WitnessResult(True, delta=delta)
        last_bad = bad
        delta = delta / 2
    return WitnessResult(False, failed_at=last_bad)


# ---- parsing ----------------------------------------------------------------


def parse_region(text: str, g: RayGraph) -> OpenRegion:
    """Parse an open-region literal: ``all`` or ``ball ELEM:coord radius`` atoms."""
    toks = text.split()
    if not toks:
        raise ParseError("empty open-region literal")
    if toks == ["all"]:
        return OpenRegion(g, (), all_space=True)
    balls: list[tuple[GraphPoint, Fraction]] = []
    i = 0
    while i < len(toks):
        if toks[i] != "ball" or i + 2 >= len(toks):
            raise ParseError(
                "region literal is 'all' or repeated 'ball ELEM:coord radius'",
                f"token {i + 1}",
            )
        spot, rad = toks[i + 1], toks[i + 2]
        if ":" not in spot:
            raise ParseError(f"ball center must be ELEM:coord, got {spot!r}", f"token {i + 2}")
        eid, coord = spot.split(":", 1)
        try:
            p = GraphPoint(eid, Fraction(coord))
            r = Fraction(rad)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational in ball atom {spot!r} {rad!r}") from None
        if r <= 0:
            raise ParseError("ball radius must be positive")
        g.validate_point(p)
        balls.append((g.normalize_point(p), r))
        i += 3
    return OpenRegion(g, tuple(balls))
