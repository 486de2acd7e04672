import json
import os

import pytest

from canon.cli import main
from canon.fixtures import fixture_path

DATA = os.path.join(os.path.dirname(__file__), "data")
EVEN = fixture_path("even.eqs")
CONSTANTS = fixture_path("constants.eqs")
COUNTER = fixture_path("counterexample.sys")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sharp_prints_the_basis(capsys):
    code, out, _ = run(capsys, "sharp", "--input", EVEN, "--ordering", "completion",
                       "--max-term-size", "8")
    assert code == 0 and out == "2 = 0\n"
    code, out, _ = run(capsys, "sharp", "--input", EVEN, "--raw-terms")
    assert out == "s(s(0)) = 0\n"


def test_sharp_constants(capsys):
    code, out, _ = run(capsys, "sharp", "--input", CONSTANTS, "--term-order", "s > a > b > c",
                       "--max-term-size", "4")
    assert code == 0 and out == "a = c\ns(c) = b\n"


def test_theory_query(capsys):
    assert run(capsys, "theory", "--input", EVEN, "--query", "s^6(0) = 0")[1] == "yes\n"
    assert run(capsys, "theory", "--input", EVEN, "--query", "6 = 0")[1] == "yes\n"
    assert run(capsys, "theory", "--input", EVEN, "--query", "1 = 0")[1] == "no\n"
    assert run(capsys, "theory", "--input", COUNTER, "--query", "a")[1] == "yes\n"


def test_complete_critical_on_counterexample_fails(capsys):
    code, out, _ = run(capsys, "complete", "--input", COUNTER, "--mechanism", "critical",
                       "--check-trace")
    assert code == 1
    assert "fair=false" in out.splitlines()


def test_complete_bulk_writes_a_trace(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run(capsys, "complete", "--input", COUNTER, "--mechanism", "bulk",
                       "--check-trace", "--output", str(trace))
    assert code == 0
    assert out.splitlines()[:2] == ["b", "c"]
    doc = json.loads(trace.read_text())
    assert doc["states"] == [["b"], ["b", "c"]]
    code, out, _ = run(capsys, "check-trace", "--input", COUNTER, "--trace", str(trace))
    assert code == 0 and "canonical=true" in out


def test_check_trace_expectations(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    run(capsys, "complete", "--input", COUNTER, "--mechanism", "critical", "--output", str(trace))
    code, _, _ = run(capsys, "check-trace", "--input", COUNTER, "--trace", str(trace),
                     "--expect", "good")
    assert code == 0
    code, _, _ = run(capsys, "check-trace", "--input", COUNTER, "--trace", str(trace),
                     "--expect", "fair")
    assert code == 1


def test_complete_ground(capsys):
    code, out, _ = run(capsys, "complete", "--input", EVEN, "--mechanism", "ground",
                       "--check-trace")
    assert code == 0 and out.splitlines()[0] == "2 = 0"
    code, _, err = run(capsys, "complete", "--input", COUNTER, "--mechanism", "ground")
    assert code == 2 and "equational" in err


def test_classify_expectations(capsys):
    code, out, _ = run(capsys, "classify", "--input", COUNTER, "--expect", "canonical")
    assert code == 1 and "saturated=false" in out
    code, out, _ = run(capsys, "classify", "--input", COUNTER, "--start", "b,c",
                       "--expect", "canonical")
    assert code == 0
    code, out, _ = run(capsys, "classify", "--input", EVEN, "--format", "json")
    doc = json.loads(out)
    assert doc["contracted"] is True and doc["saturated"] is False


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", "--input", EVEN, "--max-proof-depth", "3")
    assert code == 0 and out == "checked 679 proofs\nok\n"
    code, out, _ = run(capsys, "validate", "--input", os.path.join(DATA, "cut_violation.sys"))
    assert code == 1 and "cut:" in out
    code, out, _ = run(capsys, "validate", "--input", EVEN, "--max-proof-depth", "3",
                       "--sample", "50", "--seed", "7")
    assert code == 0 and out.startswith("checked 50 proofs")


def test_oracle_dumps(capsys):
    code, out, _ = run(capsys, "oracle", "--input", EVEN, "--what", "classes",
                       "--max-term-size", "9")
    assert out == "{0, 2, 4, 6, 8}\n{1, 3, 5, 7}\n"
    code, out, _ = run(capsys, "oracle", "--input", COUNTER, "--what", "normal")
    assert out == "c/a : a\neps_b : b\neps_c : c\n"
    code, out, _ = run(capsys, "oracle", "--input", EVEN, "--what", "minimal",
                       "--ordering", "example_rpo", "--max-term-size", "5")
    assert "T(I(4,0),I(4,2)) : 2 = 0" in out.splitlines()


def test_output_is_deterministic(capsys, tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.json"
        run(capsys, "classify", "--input", EVEN, "--format", "json", "--output", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_custom_ordering_file(capsys):
    code, out, _ = run(capsys, "sharp", "--input", EVEN,
                       "--ordering", fixture_path("completion_order.json"))
    assert code == 0 and out == "2 = 0\n"


@pytest.mark.parametrize("argv", [
    ["sharp", "--input", "missing.eqs"],
    ["sharp", "--input", EVEN, "--ordering", "no_such_preset"],
    ["sharp", "--input", EVEN, "--max-term-size", "0"],
    ["sharp", "--input", EVEN, "--max-term-size", "3"],
    ["theory", "--input", EVEN, "--query", "f(("],
    ["complete", "--input", EVEN],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_bound_errors_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("CANON_MAX_NODES", "10")
    code, _, err = run(capsys, "sharp", "--input", EVEN)
    assert code == 2 and "CANON_MAX_NODES" in err


@pytest.mark.parametrize("name,args", [
    ("even.eqs", []), ("constants.eqs", ["--term-order", "s > a > b > c", "--max-term-size", "4"]),
    ("refute.eqs", ["--ordering", "refutation", "--max-term-size", "5"]),
    ("counterexample.sys", []), ("fan.sys", []), ("unique_needed.sys", []),
])
def test_bulk_agrees_with_sharp_where_minimal_proofs_are_unique(capsys, name, args):
    path = fixture_path(name)
    _, bulk, _ = run(capsys, "complete", "--input", path, "--mechanism", "bulk", *args)
    _, basis, _ = run(capsys, "sharp", "--input", path, *args)
    if name in ("fan.sys", "unique_needed.sys"):
        assert bulk != basis     # minimal proofs are not unique there
    else:
        assert bulk == basis
