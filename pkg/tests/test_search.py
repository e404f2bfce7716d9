import json
import math

import pytest

from cubik.grid import component_count
from cubik.search import (
    CHECKPOINT_HEADER,
    EnumSpec,
    EnumStats,
    cube_number_survey,
    enumerate_grids,
    run_shards,
    shard_space,
    survey_csv,
    stats_csv,
    write_survey,
)

from conftest import all_grids


def test_size_two():
    st = enumerate_grids(EnumSpec(2))
    assert st.counts["visited"] == 2 and st.counts["knots"] == 2
    assert st.counts["lifted"] == 2
    assert len(st.found) == 1
    assert st.found[next(iter(st.found))] == (2, (0, 1), (1, 0))


def test_counts_match_brute_force_at_four():
    st = enumerate_grids(EnumSpec(4, knots_only=False))
    grids = list(all_grids(4))
    assert st.counts["visited"] == len(grids)
    assert st.counts["knots"] == sum(component_count(G) == 1 for G in grids)
    verdicts = ("no_order", "type1", "type2", "candidate")
    # links are counted as candidates when they are not skipped
    assert sum(st.counts[k] for k in verdicts) == st.counts["visited"]
    knots = enumerate_grids(EnumSpec(4))
    assert sum(knots.counts[k] for k in verdicts) == knots.counts["knots"] == st.counts["knots"]


def test_filters_do_not_change_lift_counts():
    a = enumerate_grids(EnumSpec(5, use_filters=True))
    b = enumerate_grids(EnumSpec(5, use_filters=False))
    assert a.counts["lifted"] == b.counts["lifted"]
    assert a.found == b.found


def test_shards_partition_the_space():
    specs = shard_space(5, 2)
    assert len(specs) == 20
    assert len({s.key for s in specs}) == 20
    whole = enumerate_grids(EnumSpec(5))
    merged = run_shards(specs, threads=1)
    assert merged.counts == whole.counts and merged.found == whole.found
    with pytest.raises(ValueError):
        shard_space(3, 4)


def test_checkpoint_resume(tmp_path):
    spec = EnumSpec(5, prefix=(1,))
    partial = enumerate_grids(spec, checkpoint_dir=tmp_path, stop_after=7)
    path = tmp_path / f"{spec.key}.ckpt"
    header, _, body = path.read_text().partition("\n")
    assert header == CHECKPOINT_HEADER
    data = json.loads(body)
    assert data["done"] == 7 and not data["complete"]
    resumed = enumerate_grids(spec, checkpoint_dir=tmp_path)
    fresh = enumerate_grids(spec)
    assert resumed.counts == fresh.counts and resumed.found == fresh.found
    assert partial.counts["visited"] < fresh.counts["visited"]
    assert json.loads(path.read_text().partition("\n")[2])["complete"]


def test_checkpoint_rejects_other_run(tmp_path):
    enumerate_grids(EnumSpec(4, prefix=(0,)), checkpoint_dir=tmp_path, stop_after=1)
    (tmp_path / "n4-p0.ckpt").write_text("garbage\n{}")
    with pytest.raises(ValueError):
        enumerate_grids(EnumSpec(4, prefix=(0,)), checkpoint_dir=tmp_path)


def test_stats_json_round_trip():
    st = enumerate_grids(EnumSpec(4))
    assert EnumStats.from_json(json.loads(json.dumps(st.to_json()))) == st


def test_survey_to_five(tmp_path):
    R = cube_number_survey(5)
    assert R.entry("unknot").min_cube_size == 2
    assert R.entry("3_1_left").min_cube_size == 5
    right = R.entry("3_1_right")
    assert right.min_cube_size is None and right.lower_bound == 6
    text = survey_csv(R)
    assert text.splitlines()[0] == "knot,fingerprint_id,min_cube_size,witness_file"
    assert "3_1_right" in text and ">=6" in text
    assert stats_csv(R).splitlines()[0].startswith("n,visited")
    files = {p.name for p in write_survey(R, tmp_path)}
    assert {"survey.csv", "survey_stats.csv", "witness_3_1_left_n5.json"} <= files
