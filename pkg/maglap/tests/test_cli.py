import argparse
import json

import numpy as np
import pytest

from maglap.cli import main, parse_angle, parse_walk, round_float, to_jsonable


C4 = "4 4\n0 1\n1 2\n2 3\n3 0\n"
C4_FLUX_PI = "4 4\n0 1 3.141592653589793\n1 2\n2 3\n3 0\n"
C4_SPREAD = "4 4\n0 1 0.39269908169872414\n1 2 0.39269908169872414\n2 3 0.39269908169872414\n3 0 0.39269908169872414\n"
C4_LUMPED = "4 4\n0 1 1.5707963267948966\n1 2\n2 3\n3 0\n"
TRIANGLE = "3 3\n0 1\n1 2\n2 0\n"
K4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
PETERSEN = (
    "10 15\n0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n"
    "5 7\n6 8\n7 9\n8 5\n9 6\n"
)


@pytest.fixture
def graph_file(tmp_path):
    def write(text: str, name: str = "graph.txt") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


def test_round_float_and_to_jsonable():
    assert round_float(2.0000000000000004) == 2.0
    assert round_float(np.inf) is None
    payload = to_jsonable({"a": np.float64(1 / 3), "b": np.array([1, 2]), "c": np.bool_(True), "z": 1j})
    assert payload == {"a": 0.333333333333, "b": [1, 2], "c": True, "z": [0.0, 1.0]}


@pytest.mark.parametrize(
    "text, expected",
    [("pi", np.pi), ("-pi", -np.pi), ("2pi/3", 2 * np.pi / 3), ("2*pi/3", 2 * np.pi / 3), ("pi/4", np.pi / 4), ("0.25", 0.25)],
)
def test_parse_angle(text, expected):
    assert parse_angle(text) == pytest.approx(expected)


def test_parse_angle_errors():
    with pytest.raises(argparse.ArgumentTypeError, match="multiple of pi"):
        parse_angle("tau")
    with pytest.raises(argparse.ArgumentTypeError, match="divides by zero"):
        parse_angle("pi/0")
    with pytest.raises(argparse.ArgumentTypeError, match="finite"):
        parse_angle("inf")


def test_parse_walk():
    assert parse_walk("0,1,2,0") == [0, 1, 2, 0]
    with pytest.raises(argparse.ArgumentTypeError, match="comma separated"):
        parse_walk("0;1")
    with pytest.raises(argparse.ArgumentTypeError, match="at least one vertex"):
        parse_walk(",")


def test_spectrum(capsys, graph_file):
    code, out, _ = run_json(capsys, ["spectrum", graph_file(TRIANGLE), "--theta-constant", "pi"])
    assert code == 0
    assert out["eigenvalues"] == pytest.approx([1.0, 1.0, 4.0])
    assert out["residual"] < 1e-9

    code, out, _ = run_json(capsys, ["spectrum", graph_file(C4_FLUX_PI), "--method", "lapack"])
    s = np.sqrt(2)
    assert out["eigenvalues"] == pytest.approx([2 - s, 2 - s, 2 + s, 2 + s])


def test_input_errors(capsys, graph_file):
    code, out, err = run(capsys, ["spectrum", graph_file("3 2\n0 1\n1\n")])
    assert code == 2
    assert out == ""
    assert "line 3: expected 'u v [theta]'" in err

    code, _, err = run(capsys, ["spectrum", "/nonexistent/graph.txt"])
    assert code == 2
    assert err.startswith("maglap: error:")

    code, _, err = run(capsys, ["bipartite", graph_file("4 2\n0 1\n2 3\n")])
    assert code == 2
    assert "requires a connected graph" in err


def test_argparse_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["bounds", "g.txt", "--k", "0"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert "maglap" in capsys.readouterr().out


def test_bounds(capsys, graph_file):
    code, out, _ = run_json(capsys, ["bounds", graph_file(C4), "--k", "2", "--via-avp"])
    assert code == 0
    assert out["admissible"] is True
    assert out["bound"] == 1.0
    assert out["mean"] == 1.0
    assert out["sharp"] is True
    assert out["via_avp"]["bound"] == 1.0
    assert out["via_avp"]["holds"] is True

    code, out, _ = run_json(capsys, ["bounds", graph_file(C4), "--k", "3"])
    assert code == 0
    assert out["admissible"] is False


def test_halfband(capsys, graph_file):
    code, out, _ = run_json(capsys, ["halfband", graph_file(PETERSEN), "--d", "3", "--k", "5"])
    assert code == 0
    assert out["mean"] == 1.6
    assert out["bound"] == 2.0
    assert out["holds"] is True


def test_phase_scan(capsys, graph_file):
    code, out, _ = run_json(capsys, ["phase-scan", graph_file(C4), "--k", "2", "--reduce-gauge"])
    assert code == 0
    assert out["best_sum"] == 2.0
    assert out["best_mean"] == 1.0
    assert out["cap"] == 2.0
    assert out["exhaustive"] is True
    assert out["evaluations"] == 8


def test_colouring_commands(capsys, graph_file):
    code, out, _ = run_json(capsys, ["bipartite", graph_file(C4)])
    assert code == 0
    assert out == {"bipartite": True, "k": 1, "classes": [[0, 2], [1, 3]], "orientations_checked": 1}

    code, out, _ = run_json(capsys, ["bipartite", graph_file(C4), "--k", "2"])
    assert out == {"bipartite": True, "k": 2, "classes": [[0, 2], [1, 3]], "orientations_checked": 2}

    code, out, _ = run_json(capsys, ["bipartite", graph_file(TRIANGLE), "--k", "2"])
    assert out == {"bipartite": False, "k": 2, "classes": None, "orientations_checked": 8}

    code, out, _ = run_json(capsys, ["tripartite", graph_file(K4)])
    assert code == 0
    assert out == {"tripartite": False, "classes": None, "orientations_checked": 64}

    code, out, _ = run_json(capsys, ["tripartite", graph_file(TRIANGLE)])
    assert out["tripartite"] is True
    assert out["orientations_checked"] == 3
    assert sorted(v for cls in out["classes"] for v in cls) == [0, 1, 2]


def test_budget_exceeded(capsys, graph_file, monkeypatch):
    code, out, err = run(capsys, ["tripartite", graph_file(TRIANGLE), "--budget", "2"])
    assert code == 3
    assert out == ""
    assert "3 edges exceed the orientation enumeration budget of 2" in err

    monkeypatch.setenv("MAGLAP_BUDGET", "2")
    code, _, _ = run(capsys, ["tripartite", graph_file(TRIANGLE)])
    assert code == 3


def test_flux(capsys, graph_file):
    code, out, _ = run_json(
        capsys,
        ["flux", graph_file(TRIANGLE), "--theta-constant", "2pi/3", "--walk", "0,1,2,0"],
    )
    assert code == 0
    assert out == {"walk": [0, 1, 2, 0], "flux": 0.0}

    code, out, _ = run_json(capsys, ["flux", graph_file(C4_FLUX_PI)])
    assert out["cycles"] == [[3, 0, 1, 2, 3]]
    assert out["fluxes"] == [round_float(np.pi)]
    assert out["equivalent_to_standard"] is False

    code, _, err = run(capsys, ["flux", graph_file(C4), "--walk", "0,2,0"])
    assert code == 2
    assert "not adjacent" in err


def test_gauge_check(capsys, graph_file):
    spread = graph_file(C4_SPREAD, "spread.txt")
    lumped = graph_file(C4_LUMPED, "lumped.txt")
    code, out, _ = run_json(capsys, ["gauge-check", spread, lumped])
    assert code == 0
    assert out["equivalent"] is True
    assert len(out["gauge"]) == 4

    code, out, _ = run_json(capsys, ["gauge-check", graph_file(C4, "zero.txt"), graph_file(C4_FLUX_PI, "pi.txt")])
    assert out == {"equivalent": False, "gauge": None}

    code, _, err = run(capsys, ["gauge-check", spread, graph_file(TRIANGLE, "triangle.txt")])
    assert code == 2
    assert "same directed graph" in err


def test_avp_selftest(capsys):
    code, out, _ = run_json(capsys, ["avp-selftest", "--seed", "4", "--trials", "25"])
    assert code == 0
    assert out["seed"] == 4
    assert out["trials"] == 25
    assert set(out["suites"]) == {"theorem", "sum_bound", "basis"}
    assert all(suite["failed"] == 0 for suite in out["suites"].values())


def test_scan_csv(capsys):
    code, out, _ = run(capsys, ["scan", "--trials", "4", "--n", "6", "--seed", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "seed,n,m,d0,k,mean,bound,slack"
    assert len(lines) > 1
    assert all(len(line.split(",")) == 8 for line in lines[1:])
    assert lines[1].startswith("3,")

    _, again, _ = run(capsys, ["scan", "--trials", "4", "--n", "6", "--seed", "3"])
    assert again == out


def test_scan_json_halfband(capsys):
    code, out, _ = run_json(
        capsys, ["scan", "--family", "halfband", "--trials", "3", "--n", "7", "--format", "json"]
    )
    assert code == 0
    assert all(set(row) == {"seed", "n", "m", "d0", "k", "mean", "bound", "slack"} for row in out)
    assert all(row["mean"] <= row["bound"] + 1e-8 for row in out)


def test_scan_rejects_small_n(capsys):
    code, _, err = run(capsys, ["scan", "--n", "2"])
    assert code == 2
    assert "max_n should be at least 3" in err


def test_named_graphs(capsys):
    code, out, _ = run_json(capsys, ["spectrum", "named:cycle:4"])
    assert code == 0
    assert out["eigenvalues"] == pytest.approx([0.0, 2.0, 2.0, 4.0])

    code, out, _ = run_json(capsys, ["bipartite", "named:petersen"])
    assert out == {"bipartite": False, "k": 1, "classes": None, "orientations_checked": 1}

    code, _, err = run(capsys, ["spectrum", "named:wheel:5"])
    assert code == 2
    assert "unknown graph family 'wheel'" in err
    code, _, err = run(capsys, ["spectrum", "named:cycle:x"])
    assert code == 2
    assert "vertex count should be a non-negative int" in err
