"""Knot polynomials and Legendrian invariants of grid diagrams.

The Kauffman bracket is evaluated by sweeping a vertical frontier across the
grid one column at a time.  Frontier states are non-crossing matchings of the
horizontal strands cut by the frontier, so the state space is bounded by a
Catalan number in the grid size instead of growing with the crossing count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .grid import GridDiagram, component_count, crossings, new_grid, writhe
from .polynomial import LaurentPolynomial

__all__ = [
    "NonIntegralExponent",
    "InvalidParams",
    "LegendrianData",
    "StandardDiagramParams",
    "LOOP_VALUE",
    "kauffman_bracket",
    "bracket_state_sum",
    "jones",
    "jones_from_bracket",
    "legendrian_data",
    "corner_types",
    "max_tb_rotation_set",
    "standard_diagram",
    "torus_knot_jones",
]


class NonIntegralExponent(ValueError):
    pass


class InvalidParams(ValueError):
    pass


# value of a closed loop: d = -A^2 - A^-2
LOOP_VALUE = LaurentPolynomial({2: -1, -2: -1})


def _add_into(acc: dict, key, poly: dict[int, int], shift: int = 0, factor: int = 1) -> None:
    slot = acc.setdefault(key, {})
    for e, c in poly.items():
        e += shift
        v = slot.get(e, 0) + c * factor
        if v:
            slot[e] = v
        else:
            slot.pop(e, None)


def _cup(match: tuple[int, ...], i: int) -> tuple[int, ...]:
    shifted = [p + 2 if p >= i else p for p in match]
    return tuple(shifted[:i] + [i + 1, i] + shifted[i:])


def _cap(match: tuple[int, ...], i: int) -> tuple[tuple[int, ...], bool]:
    """Join frontier points i and i+1; returns (new matching, closed a loop)."""
    m = list(match)
    loop = m[i] == i + 1
    if not loop:
        p, q = m[i], m[i + 1]
        m[p], m[q] = q, p
    del m[i : i + 2]
    return tuple(p - 2 if p > i else p for p in m), loop


def _mul_loop(poly: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in poly.items():
        out[e + 2] = out.get(e + 2, 0) - c
        out[e - 2] = out.get(e - 2, 0) - c
    return {e: c for e, c in out.items() if c}


def _divide_by_loop(poly: dict[int, int]) -> dict[int, int]:
    # P / (-A^-2 (1 + A^4)) = -A^2 * P / (1 + A^4)
    if not poly:
        return {}
    lo, hi = min(poly), max(poly)
    q: dict[int, int] = {}
    for e in range(lo, hi - 3):
        c = poly.get(e, 0) - q.get(e - 4, 0)
        if c:
            q[e] = c
    for e in range(max(lo, hi - 3), hi + 1):
        if poly.get(e, 0) != q.get(e - 4, 0):
            raise ArithmeticError("bracket sum not divisible by the loop value")
    return {e + 2: -c for e, c in q.items()}


def kauffman_bracket(G: GridDiagram) -> LaurentPolynomial:
    """Kauffman bracket in A, normalised so the unknot evaluates to 1."""
    n = G.n
    h_lo = [min(G.o_cols[r], G.x_cols[r]) for r in range(n)]
    h_hi = [max(G.o_cols[r], G.x_cols[r]) for r in range(n)]
    states: dict[tuple[int, ...], dict[int, int]] = {(): {0: 1}}
    for c in range(n):
        left = [r for r in range(n) if h_lo[r] < c <= h_hi[r]]
        a, b = sorted((G.x_row[c], G.o_row[c]))
        tip = sum(1 for r in left if r < a)
        # bottom corner of the vertical strand
        if h_hi[a] != c:
            new: dict = {}
            for m, w in states.items():
                _add_into(new, _cup(m, tip), w)
            states = new
            tip += 1
        # crossings, bottom to top: A-smoothing caps then cups, A^-1 passes through
        for r in left:
            if not a < r < b:
                continue
            new = {}
            for m, w in states.items():
                _add_into(new, m, w, shift=-1)
                capped, loop = _cap(m, tip)
                _add_into(new, _cup(capped, tip), _mul_loop(w) if loop else w, shift=1)
            states = new
            tip += 1
        # top corner
        if h_hi[b] == c:
            new = {}
            for m, w in states.items():
                capped, loop = _cap(m, tip)
                _add_into(new, capped, _mul_loop(w) if loop else w)
            states = new
    total = states.get((), {})
    return LaurentPolynomial(_divide_by_loop(total))


def bracket_state_sum(G: GridDiagram) -> LaurentPolynomial:
    """Kauffman bracket by brute force over all 2^c smoothings.

    Independent of the frontier sweep; intended as a test oracle.
    """
    xs = crossings(G)
    index = {x.position: i for i, x in enumerate(xs)}
    # walk every component, recording (crossing, entry end, exit end)
    events_per_component = []
    seen = [False] * G.n
    for start in range(G.n):
        if seen[start]:
            continue
        events = []
        b = start
        while not seen[b]:
            seen[b] = True
            r, c = b, G.x_cols[b]
            o = G.o_cols[r]
            step = 1 if c > o else -1
            for col in range(o + step, c, step):
                if (r, col) in index:
                    events.append((index[(r, col)], "W" if step > 0 else "E", "E" if step > 0 else "W"))
            s = G.successor[b]
            step = 1 if s > r else -1
            for row in range(r + step, s, step):
                if (row, c) in index:
                    events.append((index[(row, c)], "S" if step > 0 else "N", "N" if step > 0 else "S"))
            b = s
        events_per_component.append(events)

    free_loops = sum(1 for ev in events_per_component if not ev)
    arcs = []
    for ev in events_per_component:
        for k in range(len(ev)):
            cur, nxt = ev[k], ev[(k + 1) % len(ev)]
            arcs.append(((cur[0], cur[2]), (nxt[0], nxt[1])))

    total: dict[int, int] = {}
    for choice in product((0, 1), repeat=len(xs)):
        parent: dict = {}

        def find(u):
            while parent.setdefault(u, u) != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        def union(u, v):
            parent[find(u)] = find(v)

        for u, v in arcs:
            union(u, v)
        for i, a_smoothing in enumerate(choice):
            if a_smoothing:
                union((i, "N"), (i, "E"))
                union((i, "S"), (i, "W"))
            else:
                union((i, "N"), (i, "W"))
                union((i, "S"), (i, "E"))
        loops = len({find(u) for u in list(parent)}) + free_loops
        a_exp = sum(1 if s else -1 for s in choice)
        term = LaurentPolynomial({a_exp: 1}) * (LOOP_VALUE ** (loops - 1))
        for e, c in term.items():
            total[e] = total.get(e, 0) + c
    return LaurentPolynomial(total)


def jones_from_bracket(bracket: LaurentPolynomial, w: int) -> LaurentPolynomial:
    """V(t) = (-A)^(-3w) <K> with t = A^-4."""
    sign = -1 if w % 2 else 1
    out = {}
    for e, c in bracket.items():
        e -= 3 * w
        if e % 4:
            raise NonIntegralExponent(f"A-exponent {e} is not a multiple of 4")
        out[-e // 4] = sign * c
    return LaurentPolynomial(out)


def jones(G: GridDiagram) -> LaurentPolynomial:
    return jones_from_bracket(kauffman_bracket(G), writhe(G))


def torus_knot_jones(p: int, q: int) -> LaurentPolynomial:
    """Jones polynomial of the positive (p, q) torus knot, closed form."""
    num = LaurentPolynomial({0: 1, p + 1: -1, q + 1: -1, p + q: 1})
    # divide by 1 - t^2
    coeffs = dict(num.items())
    quotient: dict[int, int] = {}
    for e in range(0, p + q - 1):
        c = coeffs.get(e, 0) + quotient.get(e - 2, 0)
        if c:
            quotient[e] = c
    return LaurentPolynomial(quotient).shift((p - 1) * (q - 1) // 2)


# --- Legendrian fronts -------------------------------------------------------

@dataclass(frozen=True)
class LegendrianData:
    writhe: int
    down_cusps: int
    up_cusps: int
    right_cusps: int
    tb: int
    r: int

    @property
    def cusps(self) -> int:
        return self.down_cusps + self.up_cusps


def corner_types(G: GridDiagram) -> list[tuple[str, tuple[int, int], str]]:
    """Classify all 2n corners as (marking, (row, col), quadrant)."""
    out = []
    for r in range(G.n):
        for kind, c in (("X", G.x_cols[r]), ("O", G.o_cols[r])):
            other_col = G.o_cols[r] if kind == "X" else G.x_cols[r]
            other_row = G.o_row[c] if kind == "X" else G.x_row[c]
            east = other_col > c
            north = other_row > r
            # the corner's quadrant is opposite to where its two segments go
            quadrant = ("S" if north else "N") + ("W" if east else "E")
            out.append((kind, (r, c), quadrant))
    return out


def legendrian_data(G: GridDiagram) -> LegendrianData:
    """tb and rotation number of the front obtained from G.

    NE and SW corners are smoothed; NW corners become left cusps and SE
    corners right cusps after rotating 45 degrees counterclockwise.  At a
    left cusp the upper branch is the eastward segment, at a right cusp the
    northward one, so the cusp points down exactly when the strand enters
    along the upper branch.
    """
    if component_count(G) != 1:
        raise ValueError("legendrian_data needs a single-component grid")
    down = up = right = 0
    for kind, _, quadrant in corner_types(G):
        if quadrant == "NW":
            # X markings are entered horizontally
            is_down = kind == "X"
        elif quadrant == "SE":
            is_down = kind == "O"
        else:
            continue
        if quadrant == "SE":
            right += 1
        if is_down:
            down += 1
        else:
            up += 1
    w = writhe(G)
    return LegendrianData(w, down, up, right, w - (down + up) // 2, (down - up) // 2)


def max_tb_rotation_set(p: int) -> frozenset[int]:
    if p < 3 or p % 2 == 0:
        raise InvalidParams("p must be odd and at least 3")
    a = abs(p) - 2
    vals = set()
    t = 0
    while 2 * t < a:
        vals.add(a - 4 * t)
        vals.add(-(a - 4 * t))
        t += 1
    return frozenset(vals)


@dataclass(frozen=True)
class StandardDiagramParams:
    p: int
    j: int
    k: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or self.j < 1 or self.k < 1 or self.j + self.k != self.p:
            raise InvalidParams(f"need odd p >= 3 and j, k >= 1 with j + k = p, got {self}")


def standard_diagram(params: StandardDiagramParams) -> GridDiagram:
    """Minimal grid G_{j,k} of the left-hand (p, 2) torus knot.

    X markings sit on the cyclic diagonal ``c = r + k + 1``.  The O markings
    follow the main diagonal except for the middle block of rows 2..p-1,
    which is rotated by k - 1.  All crossings then lie on two diagonals, j on
    one and k on the other, and the rotation number is k - j.
    """
    p, k = params.p, params.k
    n = p + 2
    x = [(i + k + 1) % n for i in range(n)]
    o = list(range(n))
    for i in range(2, n - 2):
        o[i] = 2 + (i - 2 + k - 1) % (p - 2)
    return new_grid(n, x, o)
