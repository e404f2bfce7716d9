import json

import pytest

from cubik.cube import (
    CubeError,
    FlatCountViolation,
    Marking,
    MultiComponentUnsupported,
    NotLiftable,
    cube_from_json,
    cube_from_levels,
    cube_to_json,
    knot_from_cube,
    lift,
    lift_exists,
    lift_exists_bruteforce,
    lift_levels,
    project,
    validate_cube,
)
from cubik.grid import mirror, new_grid
from cubik.invariants import jones

from conftest import all_grids, standard


def test_unknot_lift(unknot2):
    C = lift(unknot2)
    assert C.n == 2 and len(C.markings) == 6
    knot = knot_from_cube(C)
    assert len(knot.components) == 1
    assert len(knot.edges) == 6


def test_left_trefoil_lifts_right_does_not(left_trefoil):
    C = lift(left_trefoil)
    assert project(C, "z")[0] == left_trefoil
    with pytest.raises(NotLiftable) as e:
        lift(mirror(left_trefoil))
    assert e.value.reason in ("NoPartialOrder", "NoValidExtension")


def test_lex_least_levels(left_trefoil):
    levels = lift_levels(left_trefoil)
    assert sorted(levels) == list(range(5))
    # no lexicographically smaller permutation validates
    import itertools

    for perm in itertools.permutations(range(5)):
        if perm >= levels:
            break
        C = cube_from_levels(left_trefoil, perm)
        with pytest.raises(CubeError):
            validate_cube(C.n, C.markings)


def test_projections_share_knot_type(left_trefoil):
    C = lift(left_trefoil)
    v = jones(left_trefoil)
    for axis in "xyz":
        G, report = project(C, axis)
        assert all(pc.ok for pc in report)
        assert jones(G) == v


def test_json_round_trip(left_trefoil):
    C = lift(left_trefoil)
    text = cube_to_json(C)
    assert cube_from_json(text) == C
    data = json.loads(text)
    assert data["size"] == 5 and len(data["markings"]) == 15


def test_validation_errors(left_trefoil):
    C = lift(left_trefoil)
    ms = list(C.markings)
    with pytest.raises(CubeError):
        validate_cube(5, ms[:-1])
    with pytest.raises(CubeError):
        validate_cube(5, ms[:-1] + [Marking("Q", (0, 0, 0))])
    with pytest.raises(CubeError):
        validate_cube(5, ms[:-1] + [Marking("X", (0, 0, 7))])
    # moving one marking breaks a flat
    bad = ms[:-1] + [Marking(ms[-1].t, tuple((v + 1) % 5 for v in ms[-1].p))]
    with pytest.raises(CubeError):
        validate_cube(5, bad)


def test_flat_count_reported(left_trefoil):
    ms = list(lift(left_trefoil).markings)
    m = ms[0]
    other = next(q.p[0] for q in ms if q.p[0] != m.p[0])
    ms[0] = Marking(m.t, (other, m.p[1], m.p[2]))
    with pytest.raises(FlatCountViolation):
        validate_cube(5, ms)


def test_multicomponent_rejected():
    with pytest.raises(MultiComponentUnsupported):
        lift(new_grid(4, [0, 1, 2, 3], [1, 0, 3, 2]))


def test_kernel_matches_bruteforce_to_four():
    for n in range(2, 5):
        for G in all_grids(n, knots_only=True):
            assert lift_exists(G) == lift_exists_bruteforce(G), G


def test_standard_extremes():
    assert lift_exists(standard(5, 1))
    for j in (2, 3, 4):
        assert not lift_exists(standard(5, j))
