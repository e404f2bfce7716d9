import random

import pytest

from cubik.cube import lift_exists
from cubik.grid import component_count, mirror, new_grid
from cubik.obstructions import (
    CANDIDATE,
    NO_PARTIAL_ORDER,
    TYPE1_FOUND,
    TYPE2_FOUND,
    detect_type1,
    detect_type2,
    filter_grid,
    format_verdict,
    kernel_verdict,
    region_rectangles,
)

from conftest import all_grids, standard


def test_python_and_kernel_agree_to_five():
    for n in range(2, 6):
        for G in all_grids(n, knots_only=True):
            v = filter_grid(G)
            assert v.verdict == kernel_verdict(G), G
            if v.verdict != CANDIDATE:
                assert not lift_exists(G), G


def test_soundness_random_six_and_seven():
    rng = random.Random(2024)
    checked = 0
    while checked < 400:
        n = rng.choice((6, 7))
        x, o = rng.sample(range(n), n), rng.sample(range(n), n)
        if any(a == b for a, b in zip(x, o)):
            continue
        G = new_grid(n, x, o)
        if component_count(G) != 1:
            continue
        if kernel_verdict(G) != CANDIDATE:
            assert not lift_exists(G)
        checked += 1


def test_kmin_three_type1_anchors():
    G = standard(5, 4)
    v = filter_grid(G)
    assert v.verdict == TYPE1_FOUND
    assert [m.anchor for m in v.matches] == [1, 2, 3]
    assert {m.variant for m in v.matches} == {"b"}
    assert format_verdict(G, v).startswith("Type1Found [Type1b@(1,")


def test_liftable_grids_are_candidates(left_trefoil, unknot2):
    assert filter_grid(left_trefoil).verdict == CANDIDATE
    assert filter_grid(unknot2).verdict == CANDIDATE
    assert detect_type1(unknot2) == [] and detect_type2(unknot2) == []
    assert format_verdict(unknot2, filter_grid(unknot2)) == CANDIDATE


def test_every_verdict_occurs_at_five():
    seen = {filter_grid(G).verdict for G in all_grids(5, knots_only=True)}
    assert seen == {CANDIDATE, NO_PARTIAL_ORDER, TYPE1_FOUND, TYPE2_FOUND}


def test_type2_matches_are_incomparable_pairs():
    for G in all_grids(5, knots_only=True):
        v = filter_grid(G)
        if v.verdict == TYPE2_FOUND:
            for m in v.matches:
                a, b = m.witness
                assert a < b and m.variant in "ab"
                assert len(m.region) >= 2


def test_region_boxes_inside_grid():
    G = standard(5, 3)
    for b in range(G.n):
        for lo_r, hi_r, lo_c, hi_c in region_rectangles(G, b):
            assert 0 <= lo_r <= hi_r < G.n and 0 <= lo_c <= hi_c < G.n


def test_right_trefoil_obstructed(left_trefoil):
    assert filter_grid(mirror(left_trefoil)).verdict != CANDIDATE or not lift_exists(mirror(left_trefoil))


def test_multicomponent_rejected():
    with pytest.raises(ValueError):
        filter_grid(new_grid(4, [0, 1, 2, 3], [1, 0, 3, 2]))
