"""Cyclic permutations and commutations of grid diagrams, orbits and censuses.

The grid lives on a torus: cyclic permutations rotate rows or columns, and
commutation indices are taken mod n, so rows n-1 and 0 are adjacent.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .grid import GridDiagram, component_count, new_grid
from .invariants import jones, legendrian_data

__all__ = [
    "Move",
    "MoveError",
    "InterleavedPair",
    "SharedCoordinate",
    "CYCLIC_MOVES",
    "apply_move",
    "legal_moves",
    "cyclic_orbit",
    "OrbitReport",
    "reachability_class",
    "CensusBucket",
    "legendrian_census",
]

KINDS = ("CyclicUp", "CyclicDown", "CyclicLeft", "CyclicRight", "CommuteRows", "CommuteCols")


class MoveError(ValueError):
    pass


class InterleavedPair(MoveError):
    pass


class SharedCoordinate(MoveError):
    pass


@dataclass(frozen=True, order=True)
class Move:
    kind: str
    index: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown move {self.kind}")

    def __str__(self) -> str:
        return self.kind if self.kind.startswith("Cyclic") else f"{self.kind}({self.index})"


CYCLIC_MOVES = (Move("CyclicUp"), Move("CyclicDown"), Move("CyclicLeft"), Move("CyclicRight"))


def _pair_status(a1: int, b1: int, a2: int, b2: int) -> str | None:
    """None if two adjacent lines may commute, else the reason they may not."""
    if len({a1, b1, a2, b2}) < 4:
        return "shared"
    if K.interleaved(a1, b1, a2, b2):
        return "interleaved"
    return None


def _check_pair(status: str | None, what: str) -> None:
    if status == "shared":
        raise SharedCoordinate(f"{what} share a marking coordinate")
    if status == "interleaved":
        raise InterleavedPair(f"{what} are interleaved")


def apply_move(G: GridDiagram, m: Move) -> GridDiagram:
    n = G.n
    x, o = list(G.x_cols), list(G.o_cols)
    if m.kind == "CyclicDown":  # bottom row moves to the top
        x, o = x[1:] + x[:1], o[1:] + o[:1]
    elif m.kind == "CyclicUp":
        x, o = x[-1:] + x[:-1], o[-1:] + o[:-1]
    elif m.kind == "CyclicLeft":  # leftmost column moves to the right
        x, o = [(c - 1) % n for c in x], [(c - 1) % n for c in o]
    elif m.kind == "CyclicRight":
        x, o = [(c + 1) % n for c in x], [(c + 1) % n for c in o]
    elif m.kind == "CommuteRows":
        i, j = m.index % n, (m.index + 1) % n
        _check_pair(_pair_status(x[i], o[i], x[j], o[j]), f"rows {i} and {j}")
        x[i], x[j] = x[j], x[i]
        o[i], o[j] = o[j], o[i]
    else:
        i, j = m.index % n, (m.index + 1) % n
        _check_pair(_pair_status(G.x_row[i], G.o_row[i], G.x_row[j], G.o_row[j]), f"columns {i} and {j}")
        swap = {i: j, j: i}
        x = [swap.get(c, c) for c in x]
        o = [swap.get(c, c) for c in o]
    return new_grid(n, x, o)


def legal_moves(G: GridDiagram, commutations: bool = True) -> list[Move]:
    moves = list(CYCLIC_MOVES)
    if not commutations:
        return moves
    n = G.n
    for i in range(n):
        j = (i + 1) % n
        if _pair_status(G.x_cols[i], G.o_cols[i], G.x_cols[j], G.o_cols[j]) is None:
            moves.append(Move("CommuteRows", i))
        if _pair_status(G.x_row[i], G.o_row[i], G.x_row[j], G.o_row[j]) is None:
            moves.append(Move("CommuteCols", i))
    return moves


def _closure(G: GridDiagram, commutations: bool) -> list[GridDiagram]:
    seen = {G}
    order = [G]
    queue = deque([G])
    while queue:
        H = queue.popleft()
        for m in legal_moves(H, commutations):
            K2 = apply_move(H, m)
            if K2 not in seen:
                seen.add(K2)
                order.append(K2)
                queue.append(K2)
    return order


def cyclic_orbit(G: GridDiagram) -> frozenset[GridDiagram]:
    """All distinct grids reached by cyclic permutations (torus translations)."""
    return frozenset(_closure(G, commutations=False))


@dataclass(frozen=True)
class OrbitReport:
    start: GridDiagram
    moves: tuple[str, ...]
    members: tuple[GridDiagram, ...]  # sorted
    fingerprints: frozenset[str] = field(default=frozenset())
    tb_r: frozenset[tuple[int, int]] = field(default=frozenset())

    def __len__(self) -> int:
        return len(self.members)


def reachability_class(G: GridDiagram, commutations: bool = True) -> OrbitReport:
    """Breadth-first closure of G under cyclic permutations and legal commutations."""
    members = tuple(sorted(_closure(G, commutations)))
    knot = component_count(G) == 1
    fps = frozenset(jones(H).fingerprint() for H in members) if knot else frozenset()
    tbr = frozenset((d.tb, d.r) for d in map(legendrian_data, members)) if knot else frozenset()
    names = ("cyclic", "commutation") if commutations else ("cyclic",)
    return OrbitReport(G, names, members, fps, tbr)


@dataclass(frozen=True)
class CensusBucket:
    fingerprint: str
    tb: int
    r: int
    count: int
    num_classes: int
    lifts_found: int
    class_sizes: tuple[int, ...]


def legendrian_census(n: int, with_lift: bool = True, fingerprints: set[str] | None = None) -> dict[tuple[str, int, int], CensusBucket]:
    """Bucket every size-n knot grid by (Jones fingerprint, tb, r).

    Each bucket is split into move-reachability classes.  Jones is computed once
    per class since the moves preserve knot type.  ``fingerprints`` restricts
    the output to the given knot types.
    """
    fact = math.factorial(n)
    ids, _, tbs, rots, lifts = K.census_arrays(n, with_lift)
    roots = K.move_classes(n, ids)
    fp_of = {}
    for r in np.unique(roots):
        x = K.perm_unrank(ids[r] // fact, n)
        o = K.perm_unrank(ids[r] % fact, n)
        fp_of[int(r)] = jones(new_grid(n, x, o)).fingerprint()
    acc: dict[tuple[str, int, int], dict] = {}
    for i in range(ids.shape[0]):
        fp = fp_of[int(roots[i])]
        if fingerprints is not None and fp not in fingerprints:
            continue
        key = (fp, int(tbs[i]), int(rots[i]))
        b = acc.setdefault(key, {"count": 0, "classes": {}, "lifts": 0})
        b["count"] += 1
        b["lifts"] += int(lifts[i])
        root = int(roots[i])
        b["classes"][root] = b["classes"].get(root, 0) + 1
    out = {}
    for key in sorted(acc):
        b = acc[key]
        sizes = tuple(sorted(b["classes"].values(), reverse=True))
        out[key] = CensusBucket(key[0], key[1], key[2], b["count"], len(sizes), b["lifts"] if with_lift else 0, sizes)
    return out
