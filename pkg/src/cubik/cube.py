"""Cube diagrams: validation, lattice knots, projections and lifting.

Axis conventions: grid columns are the x-axis and grid rows the y-axis.  In
every projection the strand with the larger omitted coordinate passes over:
y-parallel over x-parallel when viewed along z, z-parallel over y-parallel
along x, and x-parallel over z-parallel along y.

A lift of a grid G assigns a z-level to each X-bend.  The bend of row r at
level L becomes a z-flat holding Z at (x_r, r, L), Y at (o_r, r, L) and X at
(x_r, s, L), where s is the row where the bend's vertical segment ends.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .grid import GridDiagram, component_count, new_grid

__all__ = [
    "CubeError",
    "FlatCountViolation",
    "RightAngleViolation",
    "VertexTypeViolation",
    "CrossingViolation",
    "NotLiftable",
    "MultiComponentUnsupported",
    "Marking",
    "CubeDiagram",
    "LatticeKnot",
    "validate_cube",
    "knot_from_cube",
    "project",
    "cube_from_levels",
    "lift_levels",
    "lift",
    "lift_exists",
    "lift_exists_bruteforce",
    "cube_to_json",
    "cube_from_json",
]

AXES = "xyz"
# marking type at the vertex of each flat kind, and the type an edge leaves toward
VERTEX_TYPE = {0: "X", 1: "Y", 2: "Z"}
NEXT_TYPE = {"X": "Y", "Y": "Z", "Z": "X"}
# over-strand axis required in the projection that omits the given axis
OVER_AXIS = {2: 1, 0: 2, 1: 0}
# (column axis, row axis, grid-X type, grid-O type) per omitted axis
PROJECTION = {2: (0, 1, "Z", "X"), 0: (1, 2, "X", "Y"), 1: (2, 0, "Y", "Z")}


class CubeError(ValueError):
    pass


class FlatCountViolation(CubeError):
    def __init__(self, flat):
        super().__init__(f"flat {AXES[flat[0]]}={flat[1]} does not hold exactly one X, Y and Z")
        self.flat = flat


class RightAngleViolation(CubeError):
    def __init__(self, flat):
        super().__init__(f"markings in flat {AXES[flat[0]]}={flat[1]} do not form an axis-parallel right angle")
        self.flat = flat


class VertexTypeViolation(CubeError):
    def __init__(self, flat, found):
        super().__init__(f"flat {AXES[flat[0]]}={flat[1]} has its right angle at {found}, expected {VERTEX_TYPE[flat[0]]}")
        self.flat = flat


class CrossingViolation(CubeError):
    def __init__(self, projection, position, detail=""):
        super().__init__(f"crossing rule broken in the projection along {AXES[projection]} at {position} {detail}".rstrip())
        self.projection = projection
        self.position = position


class NotLiftable(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason  # "NoPartialOrder" or "NoValidExtension"


class MultiComponentUnsupported(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Marking:
    t: str
    p: tuple[int, int, int]


@dataclass(frozen=True)
class CubeDiagram:
    n: int
    markings: tuple[Marking, ...]  # sorted by (t, k, j, i)


@dataclass(frozen=True)
class Edge:
    start: tuple[int, int, int]
    end: tuple[int, int, int]
    axis: int

    def lo(self, axis):
        return min(self.start[axis], self.end[axis])

    def hi(self, axis):
        return max(self.start[axis], self.end[axis])


@dataclass(frozen=True)
class LatticeKnot:
    components: tuple[tuple[Edge, ...], ...]

    @property
    def edges(self) -> list[Edge]:
        return [e for comp in self.components for e in comp]


def _sort_key(m: Marking):
    i, j, k = m.p
    return (m.t, k, j, i)


def _differs(a, b) -> list[int]:
    return [ax for ax in range(3) if a[ax] != b[ax]]


def _flat_edges(n, markings):
    """Check the marking conditions; return the oriented lattice edges."""
    edges = set()
    for axis in range(3):
        for v in range(n):
            flat = [m for m in markings if m.p[axis] == v]
            if sorted(m.t for m in flat) != ["X", "Y", "Z"]:
                raise FlatCountViolation((axis, v))
            vertex = None
            for m in flat:
                others = [q for q in flat if q is not m]
                d1, d2 = _differs(m.p, others[0].p), _differs(m.p, others[1].p)
                if len(d1) == 1 and len(d2) == 1 and d1 != d2:
                    vertex = m
                    break
            if vertex is None:
                raise RightAngleViolation((axis, v))
            if vertex.t != VERTEX_TYPE[axis]:
                raise VertexTypeViolation((axis, v), vertex.t)
            for q in flat:
                if q is vertex:
                    continue
                a, b = (vertex, q) if NEXT_TYPE[vertex.t] == q.t else (q, vertex)
                edges.add(Edge(a.p, b.p, _differs(a.p, b.p)[0]))
    return edges


def _check_projection(edges, axis, n):
    u, w = [a for a in range(3) if a != axis]
    flat_edges = [e for e in edges if e.axis != axis]
    points = [e for e in edges if e.axis == axis]
    for i, s in enumerate(flat_edges):
        for t in flat_edges[i + 1 :]:
            if s.axis == t.axis:
                along = s.axis
                across = w if along == u else u
                if s.start[across] == t.start[across] and s.lo(along) < t.hi(along) and t.lo(along) < s.hi(along):
                    raise CrossingViolation(axis, (s.start[u], s.start[w]), "(overlapping strands)")
                continue
            su, tw = (s, t) if s.axis == u else (t, s)
            pu, pw = tw.start[u], su.start[w]  # candidate meeting point
            inside_s = su.lo(u) <= pu <= su.hi(u)
            inside_t = tw.lo(w) <= pw <= tw.hi(w)
            if not (inside_s and inside_t):
                continue
            strict_s = su.lo(u) < pu < su.hi(u)
            strict_t = tw.lo(w) < pw < tw.hi(w)
            if strict_s and strict_t:
                hs, ht = su.start[axis], tw.start[axis]
                if hs == ht:
                    raise CrossingViolation(axis, (pu, pw), "(strands intersect)")
                over = su if hs > ht else tw
                if over.axis != OVER_AXIS[axis]:
                    raise CrossingViolation(axis, (pu, pw))
            elif strict_s or strict_t:
                raise CrossingViolation(axis, (pu, pw), "(strand ends on another strand)")
    for e in points:
        pu, pw = e.start[u], e.start[w]
        for s in flat_edges:
            along = s.axis
            across = w if along == u else u
            coord = {u: pu, w: pw}
            if s.start[across] == coord[across] and s.lo(along) < coord[along] < s.hi(along):
                raise CrossingViolation(axis, (pu, pw), "(strand ends on another strand)")


def validate_cube(n: int, markings: Iterable) -> CubeDiagram:
    """Check the marking and crossing conditions; return the cube diagram."""
    ms = []
    for m in markings:
        if not isinstance(m, Marking):
            t, p = m
            m = Marking(t, tuple(int(v) for v in p))
        if m.t not in NEXT_TYPE or len(m.p) != 3 or not all(0 <= v < n for v in m.p):
            raise CubeError(f"bad marking {m}")
        ms.append(m)
    if len(ms) != 3 * n:
        raise CubeError(f"expected {3 * n} markings, got {len(ms)}")
    edges = _flat_edges(n, ms)
    for axis in (2, 0, 1):
        _check_projection(edges, axis, n)
    return CubeDiagram(n, tuple(sorted(ms, key=_sort_key)))


def knot_from_cube(C: CubeDiagram) -> LatticeKnot:
    edges = _flat_edges(C.n, C.markings)
    out_of = {e.start: e for e in edges}
    comps = []
    seen = set()
    for start in sorted(out_of):
        if start in seen:
            continue
        comp = []
        p = start
        while p not in seen:
            seen.add(p)
            e = out_of[p]
            comp.append(e)
            p = e.end
        comps.append(tuple(comp))
    return LatticeKnot(tuple(comps))


@dataclass(frozen=True)
class ProjectedCrossing:
    position: tuple[int, int]  # (row, col) in the projected grid
    over_axis: int
    ok: bool


def project(C: CubeDiagram, axis: str | int) -> tuple[GridDiagram, list[ProjectedCrossing]]:
    """Projected grid diagram plus the over-strand found at each crossing."""
    a = AXES.index(axis) if isinstance(axis, str) else axis
    col_axis, row_axis, x_type, o_type = PROJECTION[a]
    x_cols = [0] * C.n
    o_cols = [0] * C.n
    for m in C.markings:
        if m.t == x_type:
            x_cols[m.p[row_axis]] = m.p[col_axis]
        elif m.t == o_type:
            o_cols[m.p[row_axis]] = m.p[col_axis]
    G = new_grid(C.n, x_cols, o_cols)
    report = []
    edges = _flat_edges(C.n, C.markings)
    for s in edges:
        if s.axis != col_axis:
            continue
        for t in edges:
            if t.axis != row_axis:
                continue
            col, row = t.start[col_axis], s.start[row_axis]
            if s.lo(col_axis) < col < s.hi(col_axis) and t.lo(row_axis) < row < t.hi(row_axis):
                over = s if s.start[a] > t.start[a] else t
                report.append(ProjectedCrossing((row, col), over.axis, over.axis == OVER_AXIS[a]))
    report.sort(key=lambda pc: pc.position)
    return G, report


def _arrays(G: GridDiagram):
    return np.asarray(G.x_cols, dtype=np.int64), np.asarray(G.o_cols, dtype=np.int64)


def cube_from_levels(G: GridDiagram, levels: Sequence[int]) -> CubeDiagram:
    """Markings of the lift that puts bend r at z-level levels[r] (unvalidated)."""
    ms = []
    for r in range(G.n):
        lv = int(levels[r])
        ms.append(Marking("Z", (G.x_cols[r], r, lv)))
        ms.append(Marking("Y", (G.o_cols[r], r, lv)))
        ms.append(Marking("X", (G.x_cols[r], G.successor[r], lv)))
    return CubeDiagram(G.n, tuple(sorted(ms, key=_sort_key)))


def _require_knot(G: GridDiagram) -> None:
    if component_count(G) != 1:
        raise MultiComponentUnsupported("lifting is only implemented for knots")


def lift_levels(G: GridDiagram) -> tuple[int, ...]:
    """Lexicographically least level assignment (bend r -> level), or raise NotLiftable."""
    _require_knot(G)
    status, levels = K.lex_least_levels(*_arrays(G))
    if status == K.LIFT_NO_ORDER:
        raise NotLiftable("NoPartialOrder")
    if status == K.LIFT_NO_EXTENSION:
        raise NotLiftable("NoValidExtension")
    return tuple(int(v) for v in levels)


def lift(G: GridDiagram) -> CubeDiagram:
    C = cube_from_levels(G, lift_levels(G))
    # cheap at these sizes and guards the derived constraint set
    return validate_cube(C.n, C.markings)


def lift_exists(G: GridDiagram) -> bool:
    _require_knot(G)
    return K.lift_status(*_arrays(G)) == K.LIFT_OK


def lift_exists_bruteforce(G: GridDiagram) -> bool:
    """Try every level bijection and run the full validator on each."""
    _require_knot(G)
    for perm in itertools.permutations(range(G.n)):
        C = cube_from_levels(G, perm)
        try:
            validate_cube(C.n, C.markings)
        except CubeError:
            continue
        return True
    return False


def cube_to_json(C: CubeDiagram) -> str:
    marks = sorted(C.markings, key=_sort_key)
    return json.dumps({"size": C.n, "markings": [{"t": m.t, "p": list(m.p)} for m in marks]})


def cube_from_json(text: str) -> CubeDiagram:
    data = json.loads(text)
    return validate_cube(int(data["size"]), [(m["t"], m["p"]) for m in data["markings"]])
