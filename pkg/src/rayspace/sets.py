"""Closed subsets of a ray-graph: canonical interval unions, components, direction sets.

An element of CL(X) is stored per graph element as a sorted tuple of disjoint,
non-adjacent closed intervals, plus (on rays) an optional unbounded tail
[s, inf).  Degenerate intervals [a, a] represent single points.  Canonical
form is unique per point set: touching intervals are merged and a point
sitting on a vertex is stored on the lexicographically least incident
(element, coord) representation, and dropped entirely when some other piece
already covers that vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import ParseError, PreconditionError
from .graph import GraphPoint, RayGraph

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class ElementPieces:
    """Canonical pieces of a closed subset on one graph element."""

    intervals: tuple[Interval, ...]
    tail: Fraction | None = None  # tail start; rays only

    def is_empty(self) -> bool:
        return not self.intervals and self.tail is None


@dataclass(frozen=True)
class ClosedSubset:
    """A nonempty closed subset of a ray-graph, in canonical form.

    Construct through :meth:`from_pieces`, :func:`parse_set` or the set
    operations; the raw constructor assumes already-canonical data.
    """

    graph: RayGraph
    pieces: tuple[tuple[str, ElementPieces], ...]  # sorted by element id

    # ---- construction --------------------------------------------------

    @staticmethod
    def from_pieces(
        g: RayGraph,
        intervals: dict[str, list[tuple[Fraction, Fraction]]] | None = None,
        tails: dict[str, Fraction] | None = None,
    ) -> "ClosedSubset":
        """Build and canonicalize a subset from raw per-element data."""
        raw: dict[str, tuple[list[Interval], Fraction | None]] = {}
        for eid, ivs in (intervals or {}).items():
            entry = raw.setdefault(eid, ([], None))
            for a, b in ivs:
                entry[0].append((Fraction(a), Fraction(b)))
        for eid, s in (tails or {}).items():
            lst, old = raw.get(eid, ([], None))
            s = Fraction(s)
            if old is not None:
                s = min(s, old)
            raw[eid] = (lst, s)
        return _canonicalize(g, raw)

    # ---- accessors -----------------------------------------------------

    @cached_property
    def by_element(self) -> dict[str, ElementPieces]:
        return dict(self.pieces)

    def elements(self) -> tuple[str, ...]:
        return tuple(eid for eid, _ in self.pieces)

    def intervals_on(self, eid: str) -> tuple[Interval, ...]:
        ep = self.by_element.get(eid)
        return ep.intervals if ep else ()

    def tail_on(self, eid: str) -> Fraction | None:
        ep = self.by_element.get(eid)
        return ep.tail if ep else None

    def is_bounded(self) -> bool:
        return all(ep.tail is None for _, ep in self.pieces)

    def sort_key(self):
        return tuple(
            (eid, ep.intervals, ep.tail if ep.tail is not None else Fraction(-1), ep.tail is None)
            for eid, ep in self.pieces
        )

    def render(self) -> str:
        """Set-literal form, e.g. ``E1:[0,1/2] R1:[2,inf)``; round-trips via parse_set."""
        atoms: list[str] = []
        for eid, ep in self.pieces:
            for a, b in ep.intervals:
                if a == b:
                    atoms.append(f"{eid}:{{{a}}}")
                else:
                    atoms.append(f"{eid}:[{a},{b}]")
            if ep.tail is not None:
                atoms.append(f"{eid}:[{ep.tail},inf)")
        return " ".join(atoms)

    def __str__(self) -> str:
        return self.render()


# ---- canonicalization ---------------------------------------------------


def _merge_intervals(ivs: list[Interval]) -> list[Interval]:
    ivs = sorted(ivs)
    out: list[Interval] = []
    for a, b in ivs:
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def _canonicalize(
    g: RayGraph, raw: dict[str, tuple[list[Interval], Fraction | None]]
) -> ClosedSubset:
    per: dict[str, tuple[list[Interval], Fraction | None]] = {}
    for eid, (ivs, tail) in raw.items():
        el = g.element(eid)  # raises for unknown ids
        length = g.element_length(eid)
        if tail is not None and length is not None:
            raise PreconditionError(f"tail on edge {eid}; tails only exist on rays")
        for a, b in ivs:
            if a > b:
                raise PreconditionError(f"malformed interval [{a},{b}] on {eid}")
            if a < 0 or (length is not None and b > length):
                raise PreconditionError(f"interval [{a},{b}] out of range on {eid}")
        if tail is not None and tail < 0:
            raise PreconditionError(f"tail start {tail} out of range on {eid}")
        merged = _merge_intervals(list(ivs))
        if tail is not None:
            while merged and merged[-1][1] >= tail:
                tail = min(tail, merged[-1][0])
                merged.pop()
        if merged or tail is not None:
            per[eid] = (merged, tail)

    # resolve vertex aliasing of degenerate single-point pieces
    degen_at: dict[str, list[tuple[str, Fraction]]] = {}  # vertex -> reps holding [c,c]
    covered: set[str] = set()  # vertices covered by some piece of positive extent
    for eid, (ivs, tail) in per.items():
        for a, b in ivs:
            for c in {a, b}:
                v = g.vertex_at(eid, c)
                if v is None:
                    continue
                if a == b:
                    degen_at.setdefault(v, []).append((eid, a))
                else:
                    covered.add(v)
        if tail is not None and tail == 0:
            covered.add(g.element(eid).attach)

    for v, reps in degen_at.items():
        for eid, c in reps:
            ivs, tail = per[eid]
            ivs = [iv for iv in ivs if iv != (c, c)]
            per[eid] = (ivs, tail)
        if v not in covered:
            eid, c = g.vertex_representations(v)[0]
            ivs, tail = per.setdefault(eid, ([], None))
            if tail is not None and tail <= c:
                continue
            per[eid] = (_merge_intervals(ivs + [(c, c)]), tail)

    pieces = tuple(
        (eid, ElementPieces(tuple(ivs), tail))
        for eid, (ivs, tail) in sorted(per.items())
        if ivs or tail is not None
    )
    if not pieces:
        raise PreconditionError("empty set: elements of CL(X) are nonempty")
    return ClosedSubset(g, pieces)


# ---- parsing ------------------------------------------------------------


def parse_set(text: str, g: RayGraph) -> ClosedSubset:
    """Parse a set literal: whitespace-separated ``ELEM:[a,b]``, ``ELEM:[a,inf)``, ``ELEM:{a}``."""
    intervals: dict[str, list[tuple[Fraction, Fraction]]] = {}
    tails: dict[str, Fraction] = {}
    atoms = text.split()
    if not atoms:
        raise ParseError("empty set literal; elements of CL(X) are nonempty")
    for i, atom in enumerate(atoms, start=1):
        where = f"atom {i} ({atom!r})"
        if ":" not in atom:
            raise ParseError("atom must look like ELEM:[a,b], ELEM:[a,inf) or ELEM:{a}", where)
        eid, body = atom.split(":", 1)
        if body.startswith("{") and body.endswith("}"):
            c = _parse_coord(body[1:-1], where)
            intervals.setdefault(eid, []).append((c, c))
        elif body.startswith("[") and body.endswith(")"):
            inner = body[1:-1]
            parts = inner.split(",")
            if len(parts) != 2 or parts[1].strip() != "inf":
                raise ParseError("half-open atom must be ELEM:[a,inf)", where)
            s = _parse_coord(parts[0], where)
            tails[eid] = min(s, tails[eid]) if eid in tails else s
        elif body.startswith("[") and body.endswith("]"):
            parts = body[1:-1].split(",")
            if len(parts) != 2:
                raise ParseError("interval atom must be ELEM:[a,b]", where)
            a = _parse_coord(parts[0], where)
            b = _parse_coord(parts[1], where)
            if a > b:
                raise ParseError(f"malformed interval (a > b) in {atom!r}", where)
            intervals.setdefault(eid, []).append((a, b))
        else:
            raise ParseError(f"unrecognized atom {atom!r}", where)
    try:
        return ClosedSubset.from_pieces(g, intervals, tails)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def _parse_coord(tok: str, where: str) -> Fraction:
    tok = tok.strip()
    try:
        c = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coordinate {tok!r}", where) from None
    if c < 0:
        raise ParseError(f"negative coordinate {tok!r}", where)
    return c


# ---- set operations -----------------------------------------------------


def union(A: ClosedSubset, B: ClosedSubset) -> ClosedSubset:
    """Canonical union of two subsets of the same graph."""
    if A.graph != B.graph:
        raise PreconditionError("union of subsets of different graphs")
    raw: dict[str, tuple[list[Interval], Fraction | None]] = {}
    for S in (A, B):
        for eid, ep in S.pieces:
            ivs, tail = raw.setdefault(eid, ([], None))
            ivs.extend(ep.intervals)
            if ep.tail is not None:
                tail = ep.tail if tail is None else min(tail, ep.tail)
                raw[eid] = (ivs, tail)
    return _canonicalize(A.graph, raw)


def touched_vertices(g: RayGraph, A: ClosedSubset) -> set[str]:
    """Vertices of g that belong to A as points."""
    out = set()
    for eid, ep in A.pieces:
        for a, b in ep.intervals:
            for c in (a, b):
                v = g.vertex_at(eid, c)
                if v is not None:
                    out.add(v)
        if ep.tail == 0:
            out.add(g.element(eid).attach)
    return out


def component_count(g: RayGraph, A: ClosedSubset) -> int:
    """Number of connected components of A as a subspace of the graph.

    Union-find over pieces: a piece whose closed interval reaches a vertex
    joins that vertex's cluster, so pieces on different elements connect
    exactly when they share a vertex point.
    """
    parent: dict[object, object] = {}

    def find(x):
        parent.setdefault(x, x)
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def join(x, y):
        parent[find(x)] = find(y)

    piece_nodes = []
    for eid, ep in A.pieces:
        spans: list[tuple[Fraction, Fraction | None]] = [(a, b) for a, b in ep.intervals]
        if ep.tail is not None:
            spans.append((ep.tail, None))
        for a, b in spans:
            node = (eid, a)
            piece_nodes.append(node)
            ends = [a] if b is None else [a, b]
            for c in ends:
                v = g.vertex_at(eid, c)
                if v is not None:
                    join(node, ("vertex", v))
    return len({find(n) for n in piece_nodes})


def in_cn(g: RayGraph, A: ClosedSubset, n: int) -> bool:
    """Membership in C_n(X): at most n connected components."""
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    return component_count(g, A) <= n


def direction_set(g: RayGraph, A: ClosedSubset) -> frozenset[int]:
    """Indices (1-based) of the rays carrying an unbounded tail of A."""
    return frozenset(
        g.ray_index[eid] for eid, ep in A.pieces if ep.tail is not None
    )


def validate_direction_set(g: RayGraph, delta: frozenset[int]) -> None:
    bad = [i for i in delta if i not in g.ray_by_index]
    if bad:
        raise PreconditionError(f"direction set references unknown ray indices {sorted(bad)}")


def canonical_element(g: RayGraph, delta: frozenset[int] | set[int]) -> ClosedSubset:
    """The connected default element of a direction class: every edge and
    vertex of the rayless subgraph, plus the full rays indexed by delta."""
    delta = frozenset(delta)
    validate_direction_set(g, delta)
    intervals: dict[str, list[tuple[Fraction, Fraction]]] = {
        e.id: [(Fraction(0), e.length)] for e in g.edges
    }
    tails = {g.ray_by_index[i].id: Fraction(0) for i in delta}
    # vertices not covered by an edge or chosen ray still belong to the set
    for v in g.vertices:
        eid, c = g.vertex_representations(v)[0]
        intervals.setdefault(eid, []).append((c, c))
    return ClosedSubset.from_pieces(g, intervals, tails)


def whole_space(g: RayGraph) -> ClosedSubset:
    return canonical_element(g, frozenset(g.ray_index.values()))


def contains_point(g: RayGraph, A: ClosedSubset, p: GraphPoint) -> bool:
    """Exact membership of a point in A (vertex aliases resolved)."""
    g.validate_point(p)
    v = g.vertex_at(p.element, p.coord)
    reps = g.vertex_representations(v) if v is not None else [(p.element, p.coord)]
    for eid, c in reps:
        ep = A.by_element.get(eid)
        if ep is None:
            continue
        if any(a <= c <= b for a, b in ep.intervals):
            return True
        if ep.tail is not None and c >= ep.tail:
            return True
    return False


def is_subset(g: RayGraph, A: ClosedSubset, B: ClosedSubset) -> bool:
    """Structural test that A is contained in B (both canonical)."""
    for eid, ep in A.pieces:
        bt = B.tail_on(eid)
        bivs = B.intervals_on(eid)
        if ep.tail is not None and (bt is None or bt > ep.tail):
            return False
        for a, b in ep.intervals:
            if a == b and contains_point(g, B, GraphPoint(eid, a)):
                continue
            if bt is not None and a >= bt:
                continue
            if not any(a2 <= a and b <= b2 for a2, b2 in bivs):
                return False
    return True
