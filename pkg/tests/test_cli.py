import json

from duovis.cli import main

from conftest import ASSETS, MINI8_CSV


def write_script(tmp_path, steps):
    path = tmp_path / "script.json"
    path.write_text(json.dumps({"steps": steps}), encoding="utf-8")
    return str(path)


def test_empty_script_emits_initial_spec(tmp_path):
    script = write_script(tmp_path, [])
    out = tmp_path / "spec.json"
    code = main(
        ["--data", str(MINI8_CSV), "--script", script, "--emit-spec", str(out)]
    )
    assert code == 0
    spec = json.loads(out.read_text())
    assert spec["revision"] == 0
    assert spec["bindings"] == []
    assert spec["vis_type"] == "scatterplot"


def test_step_failure_sets_exit_code(tmp_path, capsys):
    script = write_script(
        tmp_path, [{"do": "set_axis", "channel": "x", "attribute": "Origin"}]
    )
    code = main(["--data", str(MINI8_CSV), "--script", script])
    assert code == 1
    assert "step 0" in capsys.readouterr().err


def test_accept_by_rank_after_sort_demo(tmp_path):
    steps = [
        {"do": "set_axis", "channel": "x", "attribute": "Cylinders"},
        {"do": "set_axis", "channel": "y", "attribute": "MPG"},
        {"do": "switch", "target": "bar_chart"},
        {
            "do": "demonstrate",
            "demonstration": {
                "kind": "drag_bar",
                "category": 4,
                "target": "extreme_right",
            },
        },
        {"do": "accept", "rank": 1},
    ]
    script = write_script(tmp_path, steps)
    out = tmp_path / "spec.json"
    code = main(
        ["--data", str(MINI8_CSV), "--script", script, "--emit-spec", str(out)]
    )
    assert code == 0
    spec = json.loads(out.read_text())
    assert spec["sort"] == {"by": "MPG", "direction": "ascending"}


def test_assert_file_mismatch_fails(tmp_path):
    script = write_script(tmp_path, [])
    expected = tmp_path / "expected.json"
    expected.write_text(json.dumps({"spec": {"revision": 99}}), encoding="utf-8")
    code = main(
        ["--data", str(MINI8_CSV), "--script", script, "--assert", str(expected)]
    )
    assert code == 1


def test_assert_file_match_passes(tmp_path):
    script = write_script(tmp_path, [])
    run_out = tmp_path / "spec.json"
    assert (
        main(["--data", str(MINI8_CSV), "--script", script, "--emit-spec", str(run_out)])
        == 0
    )
    expected = tmp_path / "expected.json"
    expected.write_text(
        json.dumps({"spec": json.loads(run_out.read_text())}), encoding="utf-8"
    )
    code = main(
        ["--data", str(MINI8_CSV), "--script", script, "--assert", str(expected)]
    )
    assert code == 0


def test_mini8_tour_script_passes():
    code = main(
        ["--data", str(MINI8_CSV), "--script", str(ASSETS / "mini8_tour.json")]
    )
    assert code == 0


def test_missing_args_exit_2():
    assert main([]) == 2


def test_bad_script_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert main(["--data", str(MINI8_CSV), "--script", str(bad)]) == 1
