import json
import pickle
import subprocess
import sys

import jsonschema
import pytest

from minor_density import minors
from minor_density.canon import are_isomorphic
from minor_density.cli import _load_cache, main
from minor_density.graph import make_named, parse_named
from minor_density.graph6 import decode_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_density_example(capsys):
    assert run(capsys, "density", "--named", "complete:4") == (0, "3/2\n", "")


def test_check_minimal_example(capsys):
    code, data = run_json(capsys, "check-minimal", "--named", "friendship:4")
    assert code == 0 and data["verdict"] is True and data["density"] == "4/3"


# (argv, expected exit code, schema name or None)
MATRIX = [
    (["density", "--named", "friendship:2"], 0, "density"),
    (["density", "--named", "friendship:2", "--decimal"], 0, "density"),
    (["rank", "--g6", "C~"], 0, "rank"),
    (["blocks", "--named", "friendship:3"], 0, "blocks"),
    (["ears", "--named", "theta:2,2,2"], 0, "ears"),
    (["minor-test", "--named", "complete:3", "--named", "cycle:5"], 0, "minor-test"),
    (["minor-test", "--named", "complete:4", "--named", "cycle:5"], 0, "minor-test"),
    (["densest-minor", "--named", "cycle:6"], 0, "densest-minor"),
    (["densest-minor", "--named", "cycle:6", "--backend", "branch", "--decimal"], 0, "densest-minor"),
    (["check-minimal", "--named", "cycle:4"], 0, "check-minimal"),
    (["check-minimal", "--named", "complete:1"], 0, "check-minimal"),
    (["check-rank-minimal", "--named", "diamond"], 0, "check-rank-minimal"),
    (["fan", "--named", "complete:3", "--shared", "0,1", "--k", "3", "--densest"], 0, "fan"),
    (["apex-fan", "--named", "path:3", "--k", "2"], 0, "apex-fan"),
    (["cf-density", "--named", "friendship:2"], 0, "cf-density"),
    (["enumerate", "--max-n", "4", "--connectivity", "connected"], 0, "enumerate"),
    (["enumerate", "--max-n", "6", "--connectivity", "biconnected", "--rank", "2"], 0, "enumerate"),
    (["spectrum", "--max-n", "5"], 0, "spectrum"),
    (["next-density", "--threshold", "1", "--max-n", "6"], 0, "next-density"),
    (["verify", "blocks"], 0, "verify"),
    (["verify", "rank4", "--max-n", "6"], 0, "verify"),
    (["verify", "low-spectrum", "--max-n", "5"], 0, "verify"),
    (["verify", "low-spectrum", "--max-n", "5", "--exclude-density", "5/4"], 1, "verify"),
    (["verify", "multi", "--samples", "50"], 0, "verify"),
    (["mg", "density", "--mg", "n=2; 0-1:3"], 0, "mg"),
    (["mg", "densest-minor", "--mg", "n=3; 0-1, 1-2, 0-2"], 0, "mg"),
    (["mg", "check-minimal", "--mg", "n=1; loops 0:4"], 0, "mg"),
    (["mg", "family-density", "--mg", "n=3; 0-1, 1-2, 0-2", "--mg", "n=4; 0-1, 1-2, 2-3"], 0, "mg"),
    (["mg", "family-density", "--mg", "n=2; 0-1", "--unbounded"], 0, "mg"),
    (["encode", "--edges", "n=3; 0-1, 1-2"], 0, "encode"),
    (["decode", "C~"], 0, "decode"),
    # malformed input and guardrails
    (["density", "--named", "nosuch:3"], 2, None),
    (["density", "--g6", "C~~"], 2, None),
    (["density", "--edges", "n=2; 0-7"], 2, None),
    (["density"], 2, None),
    (["minor-test", "--named", "complete:3"], 2, None),
    (["densest-minor", "--named", "cycle:12"], 2, None),
    (["spectrum", "--max-n", "11"], 2, None),
    (["enumerate", "--max-n", "13"], 2, None),
    (["next-density", "--threshold", "1.2"], 2, None),
    (["ears", "--named", "path:3"], 2, None),
    (["mg", "density", "--mg", "n=2; 0~1"], 2, None),
    (["density", "--file", "/nonexistent/graph.txt"], 2, None),
]


@pytest.mark.parametrize("argv,code,schema", MATRIX, ids=[" ".join(m[0])[:60] for m in MATRIX])
def test_exit_codes_and_schemas(capsys, schemas, argv, code, schema):
    got, out, err = run(capsys, *argv, "--format", "json") if schema else (None, None, None)
    if schema is None:
        with pytest.raises(SystemExit) as exc:
            raise SystemExit(main(argv))
        assert exc.value.code == code
        assert "error" in capsys.readouterr().err
        return
    assert got == code, err
    data = json.loads(out)
    jsonschema.validate(data, schemas[schema])
    for g6 in _graph6_strings(data):
        decode_graph6(g6)


def _graph6_strings(data):
    if isinstance(data, dict):
        for key, value in data.items():
            if key in ("graph6", "witness_graph6") and isinstance(value, str):
                yield value
            else:
                yield from _graph6_strings(value)
    elif isinstance(data, list):
        for item in data:
            yield from _graph6_strings(item)


def test_unknown_flag_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["density", "--named", "complete:3", "--bogus"])
    assert exc.value.code == 2


def test_graph6_outputs_reparse_isomorphic(capsys):
    _, data = run_json(capsys, "densest-minor", "--named", "friendship:3")
    assert are_isomorphic(decode_graph6(data["minor"]["graph6"]), make_named("friendship", [3]))
    _, data = run_json(capsys, "fan", "--named", "complete:3", "--shared", "0", "--k", "3")
    assert are_isomorphic(decode_graph6(data["fan"]["graph6"]), make_named("friendship", [3]))


def test_numbers_are_exact(capsys):
    _, out, _ = run(capsys, "density", "--named", "friendship:3", "--decimal")
    exact, approx = out.strip().split("\t")
    assert exact == "9/7" and approx.startswith("~1.2857")
    _, data = run_json(capsys, "density", "--named", "friendship:3")
    assert data["density"] == "9/7" and "decimal" not in data


def test_spectrum_csv(capsys):
    code, out, _ = run(capsys, "spectrum", "--max-n", "4", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "density_num,density_den,witness_graph6,n,m"
    assert lines[1] == "0,1,@,1,0"


def test_guardrail_override(capsys):
    code, out, _ = run(capsys, "densest-minor", "--named", "cycle:11", "--unsafe-large")
    assert code == 0 and out.startswith("1\n")


def test_env_soft_limit(capsys, monkeypatch):
    monkeypatch.setenv("MDL_MAX_N", "11")
    assert run(capsys, "densest-minor", "--named", "cycle:11")[0] == 0


def test_file_input(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("n=4; 0-1, 1-2, 2-3, 0-3, 0-2\n")
    assert run(capsys, "density", "--file", str(p))[1] == "5/4\n"
    p.write_text("C~\n")
    assert run(capsys, "density", "--file", str(p))[1] == "3/2\n"


def test_cache_round_trip_and_corruption(capsys, caplog, tmp_path):
    cache = tmp_path / "memo.pkl"
    assert run(capsys, "densest-minor", "--named", "friendship:2", "--cache", str(cache))[0] == 0
    with cache.open("rb") as fh:
        saved = pickle.load(fh)
    assert isinstance(saved, dict) and saved
    minors.MEMO.clear()
    _load_cache(cache)
    assert len(minors.MEMO) == len(saved)
    assert run(capsys, "check-minimal", "--named", "friendship:2", "--cache", str(cache))[0] == 0
    cache.write_bytes(b"not a pickle")
    code, out, _ = run(capsys, "density", "--named", "complete:4", "--cache", str(cache))
    assert code == 0 and out == "3/2\n"
    assert "ignoring unreadable cache" in caplog.text


def _cli(*argv, stdin=None):
    return subprocess.run([sys.executable, "-m", "minor_density", *argv], input=stdin,
                          capture_output=True, text=True, check=False)


def test_stdin_graph6():
    proc = _cli("density", "--g6", "-", stdin="C~\n")
    assert proc.returncode == 0 and proc.stdout == "3/2\n"
    proc = _cli("decode", "-", stdin="A?")
    assert proc.stdout == "n=2\n"


@pytest.mark.parametrize("argv", [
    ["spectrum", "--max-n", "6", "--format", "csv"],
    ["enumerate", "--max-n", "5", "--format", "json"],
    ["check-minimal", "--named", "f_double_prime:2", "--format", "json"],
])
def test_byte_identical_runs(argv):
    first, second = _cli(*argv), _cli(*argv)
    assert first.returncode == 0
    assert first.stdout.encode() == second.stdout.encode()


def test_verify_reports_identical_apart_from_timing():
    argv = ["verify", "fan-minimality", "--format", "json"]
    first, second = (json.loads(_cli(*argv).stdout) for _ in range(2))
    for data in (first, second):
        assert data.pop("wall_time_ms") >= 0
    assert json.dumps(first) == json.dumps(second)


def test_named_edge_and_g6_inputs_agree(capsys):
    g = parse_named("theta:1,2,3")
    outs = {
        run(capsys, "rank", "--named", "theta:1,2,3")[1],
        run(capsys, "rank", "--edges", g.to_text())[1],
    }
    assert outs == {"2\n"}
