import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubik.grid import (
    GridError,
    NotAPermutation,
    SharedCell,
    bend_order,
    component_count,
    crossings,
    format_grid,
    mirror,
    new_grid,
    parse_grid,
    segments,
    writhe,
    x_bends,
)

from conftest import all_grids


@st.composite
def grids(draw, lo=2, hi=7):
    n = draw(st.integers(lo, hi))
    x = draw(st.permutations(range(n)))
    o = draw(st.permutations(range(n)))
    if any(a == b for a, b in zip(x, o)):
        # shift O cyclically until no row shares a cell; some shift always works
        for s in range(1, n):
            oo = [o[(r + s) % n] for r in range(n)]
            if all(a != b for a, b in zip(x, oo)):
                o = oo
                break
        else:
            o = [(c + 1) % n for c in x]
    return new_grid(n, x, o)


def test_new_grid_errors():
    with pytest.raises(SharedCell) as e:
        new_grid(3, [0, 1, 2], [0, 2, 1])
    assert e.value.row == 0
    with pytest.raises(NotAPermutation) as e:
        new_grid(3, [0, 0, 2], [1, 2, 0])
    assert e.value.which == "X"
    with pytest.raises(GridError):
        new_grid(3, [0, 1], [1, 0])


def test_small_examples(unknot2, shifted_trefoil):
    assert len(segments(unknot2)) == 4 and crossings(unknot2) == []
    assert component_count(unknot2) == 1
    assert component_count(new_grid(4, [0, 1, 2, 3], [1, 0, 3, 2])) == 2
    xs = crossings(shifted_trefoil)
    assert len(xs) == 3 and len({c.sign for c in xs}) == 1
    assert writhe(shifted_trefoil) == -3
    assert len(segments(shifted_trefoil)) == 10
    assert len(x_bends(unknot2)) == 2
    assert bend_order(unknot2).edges == frozenset() and bend_order(unknot2).acyclic


def _crossings_bruteforce(G):
    segs = segments(G)
    hs = [s for s in segs if s.axis == "h"]
    vs = [s for s in segs if s.axis == "v"]
    out = set()
    for h in hs:
        for v in vs:
            if h.span[0] < v.fixed < h.span[1] and v.span[0] < h.fixed < v.span[1]:
                out.add(((h.fixed, v.fixed), -v.direction * h.direction))
    return out


def _components_union_find(G):
    parent = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            a = parent[a]
        return a

    for s in segments(G):
        parent[find(s.start)] = find(s.end)
    return len({find(p) for p in list(parent)})


def test_exhaustive_small():
    for n in range(2, 5):
        for G in all_grids(n):
            assert {(c.position, c.sign) for c in crossings(G)} == _crossings_bruteforce(G)
            assert component_count(G) == _components_union_find(G)
            segs = segments(G)
            assert len(segs) == 2 * G.n
            for s in segs:
                if s.axis == "v":
                    # X -> O
                    assert G.x_row[s.fixed] == s.start[0] and G.o_row[s.fixed] == s.end[0]
            order = bend_order(G)
            assert len(order.edges) == len({(c.over_bend, c.under_bend) for c in crossings(G)})


def test_bends_share_o_markings(left_trefoil):
    G = left_trefoil
    for b in x_bends(G):
        nxt = G.successor[b.corner[0]]
        # the vertical of bend r ends at the O that starts bend succ(r)
        assert b.outgoing.end == (nxt, G.o_cols[nxt])
    assert bend_order(G).acyclic


@given(grids())
@settings(max_examples=200, deadline=None)
def test_mirror_properties(G):
    M = mirror(G)
    assert mirror(M) == G
    assert writhe(M) == -writhe(G)
    assert sorted(c.sign for c in crossings(M)) == sorted(-c.sign for c in crossings(G))


@given(grids())
@settings(max_examples=200, deadline=None)
def test_text_round_trip(G):
    text = format_grid(G)
    assert text.endswith("\n") and text.startswith(f"grid {G.n}\n")
    assert parse_grid(text) == G


def test_format_is_exact():
    assert format_grid(new_grid(3, [0, 1, 2], [1, 2, 0])) == "grid 3\nX: 0 1 2\nO: 1 2 0\n"


def test_right_trefoil_has_cyclic_order():
    # some minimal right-trefoil grid must have no partial order on its bends
    from cubik.invariants import jones
    from cubik.polynomial import LaurentPolynomial

    right = LaurentPolynomial({1: 1, 3: 1, 4: -1})
    cyclic = [G for G in all_grids(5, knots_only=True) if jones(G) == right and not bend_order(G).acyclic]
    assert cyclic
