"""Command-line interface: subcommands, exit codes, JSON cache."""

import json

import pytest

from fibwords import __version__
from fibwords.cli import CACHE_ENV, cache_append, cache_lookup, run


def test_build_human(capsys):
    assert run(["build", "-n", "3"]) == 0
    out = capsys.readouterr().out
    assert "a_3 = BabAbaBBAbabAB" in out
    assert "lengths 14/16" in out
    assert "depth >= 5" in out


def test_build_json(capsys):
    assert run(["build", "-n", "2", "--variant", "primed", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"n": 2, "variant": "primed", "a": "abAB", "b": "BAba",
                    "len_a": 4, "len_b": 4, "depth_bound": 2}


def test_depth_human(capsys):
    assert run(["depth", "-w", "abAB"]) == 0
    assert capsys.readouterr().out.strip() == "Exact(2)"
    assert run(["depth", "-w", "e"]) == 0
    assert capsys.readouterr().out.strip() == "Identity"
    assert run(["depth", "-w", "abAB", "--cap", "1"]) == 0
    assert capsys.readouterr().out.strip() == "AtLeast(2)"


def test_depth_parse_error(capsys):
    assert run(["depth", "-w", "ab!x"]) == 2
    assert "invalid character" in capsys.readouterr().err


def test_depth_json(capsys):
    assert run(["depth", "-w", "BabA", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"word": "BabA", "cap": 14, "kind": "exact", "depth": 2}


def test_alpha_json_deterministic(capsys):
    assert run(["alpha", "-n", "2", "--json"]) == 0
    first = capsys.readouterr().out
    assert run(["alpha", "-n", "2", "--json", "-j", "2"]) == 0
    second = capsys.readouterr().out
    assert first == second
    data = json.loads(first)
    assert data["value"] == 4
    assert data["witness"] == "abAB"
    assert data["seconds"] is None


def test_alpha_human_not_found(capsys):
    assert run(["alpha", "-n", "3", "--radius", "6"]) == 0
    assert "unknown above radius 6" in capsys.readouterr().out


def test_verify_passes(capsys):
    assert run(["verify", "--level", "1"]) == 0
    out = capsys.readouterr().out
    assert "all" in out.splitlines()[-1]
    assert "FAIL" not in out


def test_verify_json(capsys):
    assert run(["verify", "--level", "0", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ok"] is True
    names = [s["name"] for s in data["suites"]]
    assert "construction_level_0" in names
    assert "depth_ladder" in names
    assert "girth_remarks" in names


def test_law_catalog(capsys):
    assert run(["law", "--order", "16", "--catalog"]) == 0
    out = capsys.readouterr().out
    assert "q8 (order 8): holds" in out
    assert "s3" not in out


def test_law_word_only(capsys):
    assert run(["law", "--order", "16"]) == 0
    out = capsys.readouterr().out
    assert "14 letters" in out
    assert "word = BabAbaBBAbabAB" in out


def test_law_group_file_failure(tmp_path, capsys):
    from fibwords import build_group

    s3 = build_group("s3")
    path = tmp_path / "s3.json"
    path.write_text(json.dumps(
        {"name": "s3", "order": s3.order, "table": s3.table}))
    assert run(["law", "--order", "4", "--group", str(path)]) == 1
    assert "FAILS" in capsys.readouterr().out


def test_law_group_and_catalog_conflict():
    with pytest.raises(SystemExit) as exc:
        run(["law", "--order", "8", "--group", "x.json", "--catalog"])
    assert exc.value.code == 2


def test_law_missing_group_file(capsys):
    assert run(["law", "--order", "4", "--group", "/nonexistent/g.json"]) == 2
    assert "error" in capsys.readouterr().err


def test_table_csv(capsys):
    assert run(["table", "--n-max", "3", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,variant,len_a,len_b,depth,depth_is_exact,estimate"
    assert lines[1] == "0,standard,1,3,1,False,"
    assert len(lines) == 5


def test_table_json(capsys):
    assert run(["table", "--n-max", "2", "--format", "json",
                "--depth-mode", "magnus"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["depth"] for r in rows] == [1, 2, 3]
    assert all(r["depth_is_exact"] for r in rows)


def test_almost_json_requires_seed(capsys):
    assert run(["almost", "--n-max", "2", "--budget", "100", "--json"]) == 2
    assert "--seed" in capsys.readouterr().err


def test_almost_reads_cache(tmp_path, capsys):
    payload = {
        "k": 2, "n_max": 1, "budget": 50, "seed": 3, "length_cap": 250_000,
        "pair": {"len_w": 10, "len_v": 10,
                 "certified_estimate": 0.25, "samples": 50},
        "rows": [
            {"n": 0, "len": 10, "L_hat": 0.5, "neg_log": 0.0,
             "samples": 50, "seed": 3, "below_float_range": False},
            {"n": 1, "len": 40, "L_hat": 0.0, "neg_log": None,
             "samples": 50, "seed": 3, "below_float_range": True},
        ],
        "constants": {"C": None, "D": None},
    }
    key = {"k": 2, "n_max": 1, "budget": 50, "seed": 3, "length_cap": 250_000}
    cache_append(tmp_path, "decay", key, payload)

    args = ["almost", "--n-max", "1", "--budget", "50", "--seed", "3",
            "--cache", str(tmp_path)]
    assert run(args + ["--json"]) == 0
    assert json.loads(capsys.readouterr().out) == payload

    assert run(args) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "n,len,L_hat,neg_log,samples,seed"
    assert lines[1] == "0,10,0.5,0.0,50,3"
    assert lines[2] == "1,40,0.0,,50,3"


def test_cache_round_trip(tmp_path):
    key = {"n": 4, "radius": 14}
    assert cache_lookup(tmp_path, "alpha", key) is None
    cache_append(tmp_path, "alpha", key, {"value": 14})
    assert cache_lookup(tmp_path, "alpha", key) == {"value": 14}
    # later entries win
    cache_append(tmp_path, "alpha", key, {"value": 15})
    assert cache_lookup(tmp_path, "alpha", key) == {"value": 15}
    # other kinds and keys do not match
    assert cache_lookup(tmp_path, "depth", key) is None
    assert cache_lookup(tmp_path, "alpha", {"n": 5, "radius": 14}) is None


def test_cache_ignores_other_tool_versions(tmp_path):
    path = tmp_path / "fibwords-cache.jsonl"
    entry = {"kind": "alpha", "key": {"n": 1}, "payload": {"value": 9},
             "created": "2000-01-01T00:00:00Z", "tool_version": "0.0.0"}
    path.write_text(json.dumps(entry) + "\n")
    assert cache_lookup(tmp_path, "alpha", {"n": 1}) is None


def test_cache_file_is_valid_json_lines(tmp_path):
    cache_append(tmp_path, "depth", {"word": "ab"}, {"depth": 1})
    cache_append(tmp_path, "depth", {"word": "abAB"}, {"depth": 2})
    lines = (tmp_path / "fibwords-cache.jsonl").read_text().splitlines()
    assert len(lines) == 2
    for line in lines:
        entry = json.loads(line)
        assert entry["tool_version"] == __version__


def test_cache_dir_from_environment(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(CACHE_ENV, str(tmp_path))
    assert run(["depth", "-w", "abAB"]) == 0
    capsys.readouterr()
    assert cache_lookup(tmp_path, "depth", {"word": "abAB", "cap": 14}) \
        == {"word": "abAB", "cap": 14, "kind": "exact", "depth": 2}


def test_usage_errors_exit_2(capsys):
    for argv in (["depth"], ["nonsense"], [], ["build"],
                 ["table", "--n-max", "2"]):
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == __version__
