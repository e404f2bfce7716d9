"""Grid diagrams: markings, oriented segments, crossings and X-bends.

Rows are indexed bottom to top and columns left to right.  ``x_cols[r]`` is
the column of the X marking in row ``r`` and ``o_cols[r]`` the column of the O
marking.  Vertical segments run from X to O, horizontal ones from O to X, and
vertical strands always pass over horizontal ones.

X-bends are indexed by the row of their X marking: bend ``r`` is the
horizontal segment of row ``r`` followed by the vertical segment of column
``x_cols[r]``.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "GridError",
    "NotAPermutation",
    "SharedCell",
    "GridDiagram",
    "Segment",
    "Crossing",
    "Bend",
    "BendOrder",
    "new_grid",
    "segments",
    "crossings",
    "component_count",
    "x_bends",
    "bend_order",
    "mirror",
    "writhe",
    "parse_grid",
    "format_grid",
]


class GridError(ValueError):
    pass


class NotAPermutation(GridError):
    def __init__(self, which: str, index: int):
        super().__init__(f"{which} markings are not a permutation (bad entry at row {index})")
        self.which = which
        self.index = index


class SharedCell(GridError):
    def __init__(self, row: int):
        super().__init__(f"X and O share a cell in row {row}")
        self.row = row


@dataclass(frozen=True, order=True)
class GridDiagram:
    n: int
    x_cols: tuple[int, ...]
    o_cols: tuple[int, ...]

    @cached_property
    def x_row(self) -> tuple[int, ...]:
        """Row of the X marking in each column."""
        inv = [0] * self.n
        for r, c in enumerate(self.x_cols):
            inv[c] = r
        return tuple(inv)

    @cached_property
    def o_row(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for r, c in enumerate(self.o_cols):
            inv[c] = r
        return tuple(inv)

    @cached_property
    def successor(self) -> tuple[int, ...]:
        """Bend that follows bend ``r`` along the knot orientation."""
        return tuple(self.o_row[c] for c in self.x_cols)

    def vertical_span(self, bend: int) -> tuple[int, int]:
        s = self.successor[bend]
        return (min(bend, s), max(bend, s))

    def horizontal_span(self, bend: int) -> tuple[int, int]:
        a, b = self.o_cols[bend], self.x_cols[bend]
        return (min(a, b), max(a, b))

    def __str__(self) -> str:
        return format_grid(self).rstrip("\n")


@dataclass(frozen=True)
class Segment:
    axis: str  # "h" or "v"
    fixed: int  # row for horizontal segments, column for vertical ones
    span: tuple[int, int]
    direction: int  # +1 when oriented toward increasing coordinate

    @property
    def start(self) -> tuple[int, int]:
        """(row, col) of the starting marking."""
        a = self.span[0] if self.direction > 0 else self.span[1]
        return (a, self.fixed) if self.axis == "v" else (self.fixed, a)

    @property
    def end(self) -> tuple[int, int]:
        b = self.span[1] if self.direction > 0 else self.span[0]
        return (b, self.fixed) if self.axis == "v" else (self.fixed, b)


@dataclass(frozen=True)
class Crossing:
    position: tuple[int, int]  # (row, col)
    over: Segment
    under: Segment
    sign: int
    over_bend: int
    under_bend: int


@dataclass(frozen=True)
class Bend:
    kind: str  # "X" or "O"
    corner: tuple[int, int]  # (row, col) of the corner marking
    incoming: Segment
    outgoing: Segment


@dataclass(frozen=True)
class BendOrder:
    n: int
    edges: frozenset[tuple[int, int]]  # (over_bend, under_bend)
    acyclic: bool

    def above(self, bend: int) -> set[int]:
        return {a for a, b in self.edges if b == bend}

    def below(self, bend: int) -> set[int]:
        return {b for a, b in self.edges if a == bend}


def _check_perm(which: str, cols: Sequence[int], n: int) -> None:
    seen = set()
    for r, c in enumerate(cols):
        if not (0 <= c < n) or c in seen:
            raise NotAPermutation(which, r)
        seen.add(c)


def new_grid(n: int, x_cols: Iterable[int], o_cols: Iterable[int]) -> GridDiagram:
    """Build a validated grid diagram."""
    x = tuple(int(c) for c in x_cols)
    o = tuple(int(c) for c in o_cols)
    if n < 1:
        raise GridError("grid size must be positive")
    if len(x) != n or len(o) != n:
        raise GridError(f"expected {n} X and O columns, got {len(x)} and {len(o)}")
    _check_perm("X", x, n)
    _check_perm("O", o, n)
    for r in range(n):
        if x[r] == o[r]:
            raise SharedCell(r)
    return GridDiagram(n, x, o)


def _horizontal(G: GridDiagram, r: int) -> Segment:
    a, b = G.o_cols[r], G.x_cols[r]
    return Segment("h", r, (min(a, b), max(a, b)), 1 if b > a else -1)


def _vertical(G: GridDiagram, c: int) -> Segment:
    a, b = G.x_row[c], G.o_row[c]
    return Segment("v", c, (min(a, b), max(a, b)), 1 if b > a else -1)


def segments(G: GridDiagram) -> list[Segment]:
    """All 2n segments, in knot order per component (horizontal then vertical)."""
    out = []
    for bend in _bend_traversal(G):
        out.append(_horizontal(G, bend))
        out.append(_vertical(G, G.x_cols[bend]))
    return out


def _bend_traversal(G: GridDiagram) -> list[int]:
    seen = [False] * G.n
    order = []
    for start in range(G.n):
        b = start
        while not seen[b]:
            seen[b] = True
            order.append(b)
            b = G.successor[b]
    return order


def crossing_sign(vertical_dir: int, horizontal_dir: int) -> int:
    # over strand is vertical; right-handed crossings are +1
    return -vertical_dir * horizontal_dir


def crossings(G: GridDiagram) -> list[Crossing]:
    """Transversal crossings, sorted by (row, col)."""
    out = []
    for r in range(G.n):
        h = _horizontal(G, r)
        for c in range(h.span[0] + 1, h.span[1]):
            v = _vertical(G, c)
            if v.span[0] < r < v.span[1]:
                out.append(Crossing((r, c), v, h, crossing_sign(v.direction, h.direction), G.x_row[c], r))
    return out


def component_count(G: GridDiagram) -> int:
    seen = [False] * G.n
    count = 0
    for start in range(G.n):
        if seen[start]:
            continue
        count += 1
        b = start
        while not seen[b]:
            seen[b] = True
            b = G.successor[b]
    return count


def x_bends(G: GridDiagram) -> list[Bend]:
    """One bend per X marking, indexed by row."""
    return [Bend("X", (r, G.x_cols[r]), _horizontal(G, r), _vertical(G, G.x_cols[r])) for r in range(G.n)]


def o_bends(G: GridDiagram) -> list[Bend]:
    return [Bend("O", (r, G.o_cols[r]), _vertical(G, G.o_cols[r]), _horizontal(G, r)) for r in range(G.n)]


def bend_order(G: GridDiagram) -> BendOrder:
    edges = frozenset((x.over_bend, x.under_bend) for x in crossings(G))
    ts = graphlib.TopologicalSorter({b: set() for b in range(G.n)})
    for a, b in edges:
        ts.add(a, b)
    try:
        ts.prepare()
        acyclic = True
    except graphlib.CycleError:
        acyclic = False
    return BendOrder(G.n, edges, acyclic)


def mirror(G: GridDiagram) -> GridDiagram:
    m = G.n - 1
    return GridDiagram(G.n, tuple(m - c for c in G.x_cols), tuple(m - c for c in G.o_cols))


def writhe(G: GridDiagram) -> int:
    return sum(x.sign for x in crossings(G))


def format_grid(G: GridDiagram) -> str:
    return (
        f"grid {G.n}\n"
        f"X: {' '.join(map(str, G.x_cols))}\n"
        f"O: {' '.join(map(str, G.o_cols))}\n"
    )


def parse_grid(text: str) -> GridDiagram:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 3 or not lines[0].startswith("grid ") or not lines[1].startswith("X:") or not lines[2].startswith("O:"):
        raise GridError("expected 'grid <n>', 'X: ...', 'O: ...'")
    n = int(lines[0].split()[1])
    return new_grid(n, map(int, lines[1][2:].split()), map(int, lines[2][2:].split()))
