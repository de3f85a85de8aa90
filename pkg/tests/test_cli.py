import json
from pathlib import Path

import pytest

from drgalg import cli, report
from drgalg.report import RunConfig, comparable, dumps, emit_json, load_golden, run
from drgalg.terwilliger import DimensionCapError

GOLDEN = Path(__file__).parent / "golden" / "johnson_6-3.json"


def test_verify_hamming_all_pass(capsys):
    assert cli.main(["verify", "hamming:3,3", "--vertex", "0"]) == 0
    out = capsys.readouterr().out
    assert "overall: PASS" in out and "FAIL " not in out


def test_vertex_sweep_on_cycle_is_uniform():
    rep = run(RunConfig("cycle:8", vertex="all", checks=("dual", "talg", "tmod")))
    assert len(rep.vertices) == 8
    profiles = {json.dumps(v["metrics"]["tmod"]["profiles"]) for v in rep.vertices}
    assert len(profiles) == 1
    assert rep.passed


def test_parallel_sweep_matches_serial():
    serial = run(RunConfig("cycle:8", vertex="all", checks=("dual", "tmod")))
    parallel = run(RunConfig("cycle:8", vertex="all", checks=("dual", "tmod"), workers=2))
    assert comparable(serial) == comparable(parallel)


@pytest.mark.parametrize("argv", [["verify", "badspec:1"], ["verify", "hamming:3"], ["bogus", "cycle:8"],
                                  ["verify", "cycle:8", "--vertex", "x"], ["verify", "cycle:8", "--tol", "foo=1"],
                                  ["verify", "cycle:8", "--checks", "bm,nope"], ["verify", "cycle:8", "--vertex", "99"]])
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2


def test_check_failure_exits_1(capsys):
    # not a Q-polynomial ordering: the stage fails with the violated condition named
    assert cli.main(["verify", "johnson:6,3", "--ordering", "0,2,1,3"]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out and "bm-stage" in out


def test_internal_guard_exits_3(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise DimensionCapError("cap reached")
    monkeypatch.setattr(report, "terwilliger_algebra", boom)
    assert cli.main(["tmod", "cycle:8"]) == 3
    assert "cap reached" in capsys.readouterr().err


def test_round_trip(tmp_path):
    rep = run(RunConfig("cycle:8"))
    path = emit_json(rep, tmp_path / "out" / "c8.json")
    back = load_golden(path)
    assert comparable(back) == comparable(rep)
    assert json.loads(path.read_text())["schema_version"] == "1"


def test_golden_johnson():
    rep = run(RunConfig("johnson:6,3", seed=0))
    assert comparable(rep) == comparable(load_golden(GOLDEN))


def test_same_seed_is_byte_identical_minus_timings():
    a = run(RunConfig("hamming:3,3", seed=4))
    b = run(RunConfig("hamming:3,3", seed=4))
    strip = lambda r: json.dumps(comparable(r), sort_keys=True)
    assert strip(a) == strip(b)
    assert a.timings and "timings" not in comparable(a)


def test_serialization_formats():
    rep = run(RunConfig("cycle:8", checks=("bm",)))
    data = json.loads(dumps(rep))
    assert data["graph"]["eigenvalues"][0] == "2"
    assert data["config"]["seed"] == 0
    assert all(isinstance(c["passed"], bool) for c in data["checks"].values())


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(report.OUTPUT_ENV, str(tmp_path))
    assert cli.main(["bm", "cycle:8"]) == 0
    assert (tmp_path / "cycle_8.json").exists()


def test_json_to_stdout(capsys):
    assert cli.main(["scheme", "hamming:3,3", "--cell", "last", "--json", "-"]) == 0
    out = capsys.readouterr().out
    payload = json.loads(out)
    scheme = payload["vertices"][0]["metrics"]["scheme"]
    assert list(scheme) == ["last"] and scheme["last"]["named_match"]["matched"]


def test_every_enabled_check_once():
    rep = run(RunConfig("johnson:7,3", checks=("bm", "talg")))
    board = rep.scoreboard()
    assert all(v["stage"] in ("bm", "talg") for v in rep.vertices[0]["checks"].values())
    assert len(board) == len(rep.checks) + len(rep.vertices[0]["checks"])
    assert "sharpness" not in board


def test_read_error_names_path(tmp_path):
    with pytest.raises(OSError, match="missing.json"):
        load_golden(tmp_path / "missing.json")
