import json

import pytest

from cubik.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_bundled(capsys):
    code, out, _ = run(capsys, "validate", "bundled:left_trefoil")
    assert code == 0 and out.startswith("valid grid n=5 components=1 crossings=3")


def test_lift_and_validate_cube(capsys, tmp_path):
    code, out, _ = run(capsys, "lift", "bundled:left_trefoil")
    assert code == 0
    cube = tmp_path / "c.json"
    cube.write_text(out)
    assert json.loads(out)["size"] == 5
    code, out, _ = run(capsys, "validate", str(cube))
    assert code == 0 and out.startswith("valid cube n=5")


def test_lift_expect_lift_fails(capsys):
    code, out, _ = run(capsys, "lift", "bundled:right_trefoil", "--expect-lift")
    assert code == 1 and out.startswith("NotLiftable")
    code, _, _ = run(capsys, "lift", "bundled:right_trefoil")
    assert code == 0


def test_invariants_standard(capsys):
    code, out, _ = run(capsys, "invariants", "--standard", "5,1,4")
    assert code == 0
    assert out.startswith("knot=5_1_left writhe=-5 tb=-10 r=3")
    code, out, _ = run(capsys, "invariants", "--grid", "1,0/0,1", "--format", "json")
    assert json.loads(out)["tb"] == -1


def test_jones(capsys):
    code, out, _ = run(capsys, "jones", "bundled:left_trefoil")
    assert out.split("\t")[:2] == ["t^-1 + t^-3 - t^-4", "3_1_left"]


def test_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", "--standard", "5,4,1")
    assert code == 0 and out.startswith("Type1Found [Type1b@(1,")
    code, out, _ = run(capsys, "obstruct", "--standard", "5,4,1", "--format", "json")
    assert [m["anchor"] for m in json.loads(out)["matches"]] == [1, 2, 3]
    code, out, _ = run(capsys, "--seed", "3", "obstruct", "--random", "30", "--size", "5")
    assert code == 0 and "violations=0" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--threads", "1")
    header, values = out.splitlines()
    row = dict(zip(header.split(","), map(int, values.split(","))))
    assert row["visited"] == 216 and row["audit_violations"] == 0


def test_moves(capsys):
    code, out, _ = run(capsys, "moves", "--standard", "5,4,1", "--orbit", "cyclic")
    assert out.strip() == "cyclic_orbit size=7"
    code, out, _ = run(capsys, "moves", "--grid", "1,0/0,1", "--apply", "CyclicDown")
    assert code == 0 and "X: 0 1" in out
    code, _, err = run(capsys, "moves", "--standard", "5,4,1", "--apply", "CommuteRows:0")
    assert code == 1 and err.startswith("error:")


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "bundled:left_trefoil")
    assert code == 0 and out.count("X") == 5
    dest = tmp_path / "t.svg"
    run(capsys, "render", "bundled:left_trefoil", "--format", "svg", "--view", "front", "--out", str(dest))
    assert dest.read_text().count("<svg") == 1


def test_survey_writes_csv_and_figures(capsys, tmp_path):
    code, out, _ = run(capsys, "survey", "--max-n", "4", "--out", str(tmp_path), "--threads", "1")
    assert code == 0 and out.startswith("knot,fingerprint_id,min_cube_size,witness_file")
    for name in ("survey.csv", "survey_stats.csv", "survey_stats.svg", "survey_stats.png"):
        assert (tmp_path / name).exists()


def test_census(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--p", "3", "--out", str(tmp_path))
    lines = out.splitlines()
    assert lines[0] == "fingerprint_id,tb,r,count,num_classes,lifts_found"
    assert len(lines) == 3
    assert (tmp_path / "census.png").exists()


def test_errors(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.grid"))
    assert code == 1 and "cannot read" in err
    bad = tmp_path / "bad.grid"
    bad.write_text("grid 3\nX: 0 1 2\nO: 0 2 1\n")
    assert run(capsys, "validate", str(bad))[0] == 1
    with pytest.raises(SystemExit) as e:
        main(["lift", "--no-such-flag"])
    assert e.value.code == 2
