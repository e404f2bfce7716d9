"""Type 1 and Type 2 configurations: grid patterns that block every lift.

Both detectors work on the transitive closure of the bend order.  For an
anchor X-bend B the shaded region is the union of two boundary-reaching
rectangles:

* the vertical side: rows strictly inside B's vertical span, columns left of
  B's vertical segment;
* the horizontal side: columns strictly inside B's horizontal span, rows above
  B's horizontal segment.

A Type 1 match at B is a stretch of the knot, passing only through O markings
inside the region, that visits a bend below B and a bend above B.  Its
z-parallel edges would have to cross B's flat, and in a lift they would pass
on the wrong side of one of B's segments.  The three drawn variants are told
apart by which side of the region the stretch uses (figure-derived labels):
``a`` uses only the vertical side, ``c`` only the horizontal side and ``b``
(the centre case worked out in prose) uses both.

A Type 2 match is a pair of incomparable bends for which both relative orders
lead to a cycle or to a new Type 1 match.  Variant ``a`` is refuted by Type 1
in both directions, variant ``b`` by a cycle in at least one (figure-derived
labels).

Both rules are generalisations of the drawn patterns, so the drawn
configurations are detected as special cases.  Soundness is enforced by
tests against the exhaustive lift oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .grid import GridDiagram, component_count

__all__ = [
    "ObstructionMatch",
    "FilterVerdict",
    "NO_PARTIAL_ORDER",
    "TYPE1_FOUND",
    "TYPE2_FOUND",
    "CANDIDATE",
    "region_rectangles",
    "detect_type1",
    "detect_type2",
    "filter_grid",
    "format_verdict",
]

NO_PARTIAL_ORDER = "NoPartialOrder"
TYPE1_FOUND = "Type1Found"
TYPE2_FOUND = "Type2Found"
CANDIDATE = "Candidate"

KERNEL_CODES = {
    K.NO_PARTIAL_ORDER: NO_PARTIAL_ORDER,
    K.TYPE1: TYPE1_FOUND,
    K.TYPE2: TYPE2_FOUND,
    K.CANDIDATE: CANDIDATE,
}


@dataclass(frozen=True)
class ObstructionMatch:
    kind: str  # "Type1" or "Type2"
    variant: str
    anchor: int  # bend index (row of its X); first bend of the pair for Type 2
    region: tuple[tuple[int, int, int, int], ...]  # (row_lo, row_hi, col_lo, col_hi), inclusive
    witness: tuple[int, ...]  # bends of the confined path, or the Type 2 pair

    def position(self, G: GridDiagram) -> tuple[int, int]:
        return (self.anchor, G.x_cols[self.anchor])


@dataclass(frozen=True)
class FilterVerdict:
    verdict: str
    matches: tuple[ObstructionMatch, ...] = field(default=())


class _Geometry:
    def __init__(self, G: GridDiagram):
        self.G = G
        self.n = n = G.n
        self.x = G.x_cols
        self.succ = G.successor
        self.v = [G.vertical_span(b) for b in range(n)]
        self.h = [G.horizontal_span(b) for b in range(n)]
        reach = np.zeros((n, n), dtype=bool)
        for a in range(n):
            lo, hi = self.v[a]
            c = self.x[a]
            for b in range(lo + 1, hi):
                if self.h[b][0] < c < self.h[b][1]:
                    reach[a, b] = True
        for k in range(n):
            reach |= np.outer(reach[:, k], reach[k, :])
        self.reach = reach

    def side(self, B: int, row: int, col: int) -> int:
        """0 outside B's region, 1 vertical side, 2 horizontal side, 3 both."""
        code = 0
        if self.v[B][0] < row < self.v[B][1] and col < self.x[B]:
            code |= 1
        if self.h[B][0] < col < self.h[B][1] and row > B:
            code |= 2
        return code

    def cyclic(self, reach) -> bool:
        return bool(np.any(np.diag(reach)))


def region_rectangles(G: GridDiagram, anchor: int) -> tuple[tuple[int, int, int, int], ...]:
    """Cells of the anchor's shaded region as inclusive (row_lo, row_hi, col_lo, col_hi) boxes."""
    vlo, vhi = G.vertical_span(anchor)
    hlo, hhi = G.horizontal_span(anchor)
    boxes = []
    if vhi - vlo > 1 and G.x_cols[anchor] > 0:
        boxes.append((vlo + 1, vhi - 1, 0, G.x_cols[anchor] - 1))
    if hhi - hlo > 1 and anchor < G.n - 1:
        boxes.append((anchor + 1, G.n - 1, hlo + 1, hhi - 1))
    return tuple(boxes)


def _type1_at(geo: _Geometry, B: int, reach) -> ObstructionMatch | None:
    succ, x = geo.succ, geo.x
    run: list[int] = []
    sides = 0
    below = above = False
    b = succ[B]
    while b != B:
        run.append(b)
        below |= bool(reach[B, b])
        above |= bool(reach[b, B])
        if below and above:
            variant = {1: "a", 2: "c"}.get(sides, "b")
            return ObstructionMatch("Type1", variant, B, region_rectangles(geo.G, B), tuple(run))
        nb = succ[b]
        if nb == B:
            break
        code = geo.side(B, nb, x[b])
        if code == 0:
            run, sides = [], 0
            below = above = False
        else:
            sides |= code
        b = nb
    return None


def _type1_all(geo: _Geometry, reach, skip=()) -> list[ObstructionMatch]:
    out = []
    for B in range(geo.n):
        if B in skip:
            continue
        m = _type1_at(geo, B, reach)
        if m is not None:
            out.append(m)
    return out


def _augment(reach, hi: int, lo: int):
    up = reach[:, hi].copy()
    up[hi] = True
    down = reach[lo, :].copy()
    down[lo] = True
    return reach | np.outer(up, down)


def _require_knot(G: GridDiagram) -> None:
    if component_count(G) != 1:
        raise ValueError("obstruction detection needs a single-component grid")


def detect_type1(G: GridDiagram) -> list[ObstructionMatch]:
    """All anchors carrying a Type 1 configuration (empty if the order is cyclic)."""
    _require_knot(G)
    geo = _Geometry(G)
    if geo.cyclic(geo.reach):
        return []
    return _type1_all(geo, geo.reach)


def detect_type2(G: GridDiagram) -> list[ObstructionMatch]:
    """All incomparable bend pairs whose two possible orders are both refuted."""
    _require_knot(G)
    geo = _Geometry(G)
    reach = geo.reach
    if geo.cyclic(reach):
        return []
    skip = {m.anchor for m in _type1_all(geo, reach)}
    out = []
    for a in range(geo.n):
        for b in range(a + 1, geo.n):
            if reach[a, b] or reach[b, a]:
                continue
            reasons = []
            for hi, lo in ((a, b), (b, a)):
                r = _augment(reach, hi, lo)
                if geo.cyclic(r):
                    reasons.append("cycle")
                elif _type1_all(geo, r, skip):
                    reasons.append("type1")
                else:
                    break
            if len(reasons) == 2:
                variant = "a" if reasons == ["type1", "type1"] else "b"
                region = region_rectangles(G, a) + region_rectangles(G, b)
                out.append(ObstructionMatch("Type2", variant, a, region, (a, b)))
    return out


def filter_grid(G: GridDiagram) -> FilterVerdict:
    """NoPartialOrder, then Type 1, then Type 2, else Candidate."""
    _require_knot(G)
    geo = _Geometry(G)
    if geo.cyclic(geo.reach):
        return FilterVerdict(NO_PARTIAL_ORDER)
    t1 = _type1_all(geo, geo.reach)
    if t1:
        return FilterVerdict(TYPE1_FOUND, tuple(t1))
    t2 = detect_type2(G)
    if t2:
        return FilterVerdict(TYPE2_FOUND, tuple(t2))
    return FilterVerdict(CANDIDATE)


def kernel_verdict(G: GridDiagram) -> str:
    """Verdict name from the compiled filter used by the enumeration engine."""
    x = np.asarray(G.x_cols, dtype=np.int64)
    o = np.asarray(G.o_cols, dtype=np.int64)
    return KERNEL_CODES[int(K.filter_code(x, o))]


def format_verdict(G: GridDiagram, v: FilterVerdict) -> str:
    """``<verdict> [kind@(row,col)]...`` on one line."""
    parts = [v.verdict]
    for m in v.matches:
        r, c = m.position(G)
        parts.append(f"[{m.kind}{m.variant}@({r},{c})]")
    return " ".join(parts)
