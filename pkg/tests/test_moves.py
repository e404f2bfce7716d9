import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubik import _kernels as K
from cubik.grid import component_count, new_grid
from cubik.invariants import jones, legendrian_data
from cubik.moves import (
    CYCLIC_MOVES,
    InterleavedPair,
    Move,
    SharedCoordinate,
    apply_move,
    cyclic_orbit,
    legal_moves,
    legendrian_census,
    reachability_class,
)

from conftest import all_grids, standard

INVERSE = {"CyclicUp": "CyclicDown", "CyclicDown": "CyclicUp", "CyclicLeft": "CyclicRight", "CyclicRight": "CyclicLeft"}


@st.composite
def knot_grids(draw, n_min=3, n_max=7):
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    while True:
        x, o = rng.sample(range(n), n), rng.sample(range(n), n)
        if all(a != b for a, b in zip(x, o)):
            G = new_grid(n, x, o)
            if component_count(G) == 1:
                return G


def test_move_names():
    assert str(Move("CyclicUp")) == "CyclicUp"
    assert str(Move("CommuteRows", 2)) == "CommuteRows(2)"
    with pytest.raises(ValueError):
        Move("Stabilize")


@settings(deadline=None)
@given(knot_grids())
def test_cyclic_moves_invert(G):
    for m in CYCLIC_MOVES:
        assert apply_move(apply_move(G, m), Move(INVERSE[m.kind])) == G
    H = G
    for _ in range(G.n):
        H = apply_move(H, Move("CyclicDown"))
    assert H == G


@settings(max_examples=60, deadline=None)
@given(knot_grids())
def test_moves_preserve_invariants(G):
    v = jones(G)
    d = legendrian_data(G)
    for m in legal_moves(G):
        H = apply_move(G, m)
        assert jones(H) == v
        if m.kind.startswith("Commute"):
            assert apply_move(H, m) == G
        e = legendrian_data(H)
        assert (e.tb, e.r) == (d.tb, d.r)


def test_illegal_commutations():
    G = standard(5, 4)
    illegal = [Move(k, i) for k in ("CommuteRows", "CommuteCols") for i in range(G.n)]
    illegal = [m for m in illegal if m not in legal_moves(G)]
    assert illegal
    for m in illegal:
        with pytest.raises((InterleavedPair, SharedCoordinate)):
            apply_move(G, m)


def test_small_orbits(unknot2):
    assert len(cyclic_orbit(unknot2)) == 2
    kmin = standard(5, 4)
    assert len(cyclic_orbit(kmin)) == 7
    assert [m for m in legal_moves(kmin) if m.kind.startswith("Commute")] == []
    rep = reachability_class(kmin)
    assert len(rep) == 7 and len(rep.fingerprints) == 1
    assert rep.tb_r == {(-10, -3)}


def test_python_classes_match_kernel_at_five():
    n = 5
    buckets = legendrian_census(n, with_lift=False)
    fact = 120
    ids, _, _, _, _ = K.census_arrays(n, False)
    roots = K.move_classes(n, ids)
    sizes = {}
    for r in roots:
        sizes[int(r)] = sizes.get(int(r), 0) + 1
    rng = random.Random(5)
    for r in rng.sample(sorted(sizes), 15):
        G = new_grid(n, K.perm_unrank(ids[r] // fact, n), K.perm_unrank(ids[r] % fact, n))
        assert len(reachability_class(G)) == sizes[r]
    assert sum(b.count for b in buckets.values()) == ids.shape[0]


def test_census_p3_single_class_per_bucket():
    left = jones(standard(3, 1)).fingerprint()
    buckets = legendrian_census(5, fingerprints={left})
    assert {(b.tb, b.r) for b in buckets.values()} == {(-6, 1), (-6, -1)}
    assert all(b.num_classes == 1 for b in buckets.values())
