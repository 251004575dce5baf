"""Finite connected ray-graphs with the exact arc-length metric.

A ray-graph has finitely many vertices, edges of positive rational length
(loops allowed), and rays: copies of [0, inf) attached to a vertex at
coordinate 0.  All distances are exact ``fractions.Fraction`` values; the
graph is immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .errors import InvalidGraphError, ParseError, PreconditionError

_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str
    length: Fraction = Fraction(1)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class Ray:
    id: str
    attach: str


@dataclass(frozen=True)
class GraphPoint:
    """A location on an edge or ray: element id plus a rational coordinate.

    Edge coordinates run from 0 (first endpoint) to the edge length; ray
    coordinates run from 0 (attachment vertex) upward without bound.
    """

    element: str
    coord: Fraction

    def key(self) -> tuple[str, Fraction]:
        return (self.element, self.coord)


@dataclass(frozen=True)
class RayGraph:
    """Immutable finite connected ray-graph.

    ``vertices``/``edges``/``rays`` keep declaration order; rays are indexed
    1..k in that order (``ray_index``).  Derived lookup tables are cached on
    first use and never mutated afterwards.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    rays: tuple[Ray, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidGraphError("a ray-graph needs at least one vertex")
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise InvalidGraphError("duplicate vertex id")
        ids = [e.id for e in self.edges] + [r.id for r in self.rays]
        if len(set(ids)) != len(ids):
            raise InvalidGraphError("duplicate element id across edges/rays")
        if vset & set(ids):
            raise InvalidGraphError("an element id collides with a vertex id")
        for e in self.edges:
            if e.u not in vset or e.v not in vset:
                raise InvalidGraphError(f"edge {e.id} references unknown vertex")
            if e.length <= 0:
                raise InvalidGraphError(f"edge {e.id} has nonpositive length")
        for r in self.rays:
            if r.attach not in vset:
                raise InvalidGraphError(f"ray {r.id} attached to unknown vertex")
        self._check_connected()

    def _check_connected(self):
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            parent[find(e.u)] = find(e.v)
        roots = {find(v) for v in self.vertices}
        if len(roots) > 1:
            raise InvalidGraphError("graph is not connected")

    # ---- lookups -------------------------------------------------------

    @cached_property
    def _elements(self) -> dict[str, Edge | Ray]:
        table: dict[str, Edge | Ray] = {e.id: e for e in self.edges}
        table.update({r.id: r for r in self.rays})
        return table

    def element(self, eid: str) -> Edge | Ray:
        try:
            return self._elements[eid]
        except KeyError:
            raise PreconditionError(f"unknown element id {eid!r}") from None

    def is_ray(self, eid: str) -> bool:
        return isinstance(self.element(eid), Ray)

    def element_length(self, eid: str) -> Fraction | None:
        """Edge length, or None for a ray (unbounded)."""
        el = self.element(eid)
        return el.length if isinstance(el, Edge) else None

    @cached_property
    def ray_index(self) -> dict[str, int]:
        """Ray id -> 1-based index, in declaration order."""
        return {r.id: i + 1 for i, r in enumerate(self.rays)}

    @cached_property
    def ray_by_index(self) -> dict[int, Ray]:
        return {i + 1: r for i, r in enumerate(self.rays)}

    @property
    def ray_count(self) -> int:
        return len(self.rays)

    @cached_property
    def _vertex_reps(self) -> dict[str, tuple[tuple[str, Fraction], ...]]:
        """All (element, coord) representations of each vertex, sorted."""
        reps: dict[str, list[tuple[str, Fraction]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            reps[e.u].append((e.id, Fraction(0)))
            reps[e.v].append((e.id, e.length))
        for r in self.rays:
            reps[r.attach].append((r.id, Fraction(0)))
        return {v: tuple(sorted(lst)) for v, lst in reps.items()}

    def vertex_representations(self, v: str) -> tuple[tuple[str, Fraction], ...]:
        if v not in self._vertex_reps:
            raise PreconditionError(f"unknown vertex {v!r}")
        return self._vertex_reps[v]

    def vertex_at(self, eid: str, coord: Fraction) -> str | None:
        """The vertex sitting at (eid, coord), or None for an interior point."""
        el = self.element(eid)
        if isinstance(el, Ray):
            return el.attach if coord == 0 else None
        if coord == 0:
            return el.u
        if coord == el.length:
            return el.v
        return None

    def element_end_vertices(self, eid: str) -> tuple[str, str | None]:
        """(vertex at coord 0, vertex at far end or None for a ray)."""
        el = self.element(eid)
        if isinstance(el, Ray):
            return (el.attach, None)
        return (el.u, el.v)

    # ---- metric --------------------------------------------------------

    @cached_property
    def vertex_distances(self) -> dict[tuple[str, str], Fraction]:
        """All-pairs shortest path distances between vertices (exact)."""
        verts = self.vertices
        big = None  # None stands for "not yet reachable" during relaxation
        dist: dict[tuple[str, str], Fraction | None] = {
            (a, b): (Fraction(0) if a == b else big) for a in verts for b in verts
        }
        for e in self.edges:
            if e.is_loop:
                continue
            for a, b in ((e.u, e.v), (e.v, e.u)):
                cur = dist[(a, b)]
                if cur is None or e.length < cur:
                    dist[(a, b)] = e.length
        for k in verts:
            for i in verts:
                dik = dist[(i, k)]
                if dik is None:
                    continue
                for j in verts:
                    dkj = dist[(k, j)]
                    if dkj is None:
                        continue
                    cand = dik + dkj
                    cur = dist[(i, j)]
                    if cur is None or cand < cur:
                        dist[(i, j)] = cand
        # connectivity was validated up front, so nothing is unreachable
        return {k: v for k, v in dist.items() if v is not None}

    def vertex_distance(self, a: str, b: str) -> Fraction:
        try:
            return self.vertex_distances[(a, b)]
        except KeyError:
            raise PreconditionError(f"unknown vertex in pair ({a!r}, {b!r})") from None

    # ---- points --------------------------------------------------------

    def validate_point(self, p: GraphPoint) -> None:
        el = self.element(p.element)
        if p.coord < 0:
            raise PreconditionError(f"negative coordinate on {p.element}")
        if isinstance(el, Edge) and p.coord > el.length:
            raise PreconditionError(
                f"coordinate {p.coord} exceeds length {el.length} of edge {p.element}"
            )

    def normalize_point(self, p: GraphPoint) -> GraphPoint:
        """Canonical representation: lexicographically least (element, coord).

        Only vertex points admit more than one representation.
        """
        self.validate_point(p)
        v = self.vertex_at(p.element, p.coord)
        if v is None:
            return p
        return GraphPoint(*self.vertex_representations(v)[0])

    def exit_costs(self, p: GraphPoint) -> list[tuple[str, Fraction]]:
        """(vertex, cost) pairs for leaving p's element through its endpoints."""
        el = self.element(p.element)
        if isinstance(el, Ray):
            return [(el.attach, p.coord)]
        return [(el.u, p.coord), (el.v, el.length - p.coord)]


def point_distance(g: RayGraph, p: GraphPoint, q: GraphPoint) -> Fraction:
    """Exact length of the shortest path in the graph between two points."""
    g.validate_point(p)
    g.validate_point(q)
    best: Fraction | None = None
    if p.element == q.element:
        best = abs(p.coord - q.coord)
    for w_p, c_p in g.exit_costs(p):
        for w_q, c_q in g.exit_costs(q):
            cand = c_p + g.vertex_distance(w_p, w_q) + c_q
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best


def vertex_distance_table(g: RayGraph) -> dict[tuple[str, str], Fraction]:
    """Exact shortest-path distance for every ordered vertex pair."""
    return dict(g.vertex_distances)


# ---- parsing -----------------------------------------------------------


def parse_fraction(tok: str, where: str) -> Fraction:
    try:
        f = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {tok!r}", where) from None
    return f


def _check_id(tok: str, where: str) -> str:
    if not _ID_RE.match(tok):
        raise ParseError(f"bad identifier {tok!r}", where)
    return tok


def parse_graph(text: str) -> RayGraph:
    """Parse the line-oriented graph grammar.

    Statements (one per line, or ';'-separated): ``vertex <id>...``,
    ``edge <id> <v1> <v2> [length <p>/<q>]``, ``ray <id> <v>``.
    ``#`` starts a comment.
    """
    vertices: list[str] = []
    edges: list[Edge] = []
    rays: list[Ray] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            toks = stmt.split()
            if not toks:
                continue
            where = f"line {lineno}"
            kw = toks[0]
            if kw == "vertex":
                if len(toks) < 2:
                    raise ParseError("vertex statement needs at least one id", where)
                for t in toks[1:]:
                    vertices.append(_check_id(t, where))
            elif kw == "edge":
                if len(toks) == 4:
                    length = Fraction(1)
                elif len(toks) == 6 and toks[4] == "length":
                    length = parse_fraction(toks[5], where)
                else:
                    raise ParseError(
                        "edge statement is 'edge <id> <v1> <v2> [length <p>/<q>]'", where
                    )
                if length <= 0:
                    raise ParseError(f"edge {toks[1]!r} has nonpositive length", where)
                edges.append(Edge(_check_id(toks[1], where), toks[2], toks[3], length))
            elif kw == "ray":
                if len(toks) != 3:
                    raise ParseError("ray statement is 'ray <id> <v>'", where)
                rays.append(Ray(_check_id(toks[1], where), toks[2]))
            else:
                raise ParseError(f"unknown statement {kw!r}", where)
    return RayGraph(tuple(vertices), tuple(edges), tuple(rays))


def graph_from_parts(
    vertices: Iterable[str],
    edges: Iterable[tuple] = (),
    rays: Iterable[tuple[str, str]] = (),
) -> RayGraph:
    """Programmatic constructor: edges as (id, u, v[, length]), rays as (id, v)."""
    es = []
    for spec in edges:
        if len(spec) == 3:
            es.append(Edge(spec[0], spec[1], spec[2]))
        else:
            es.append(Edge(spec[0], spec[1], spec[2], Fraction(spec[3])))
    return RayGraph(tuple(vertices), tuple(es), tuple(Ray(i, v) for i, v in rays))
