"""Runs the command-line tool; skipped when DSCURVE_CLI is not set."""

import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("DSCURVE_CLI")
SCHEMAS = Path(os.environ.get("DSCURVE_SCHEMAS", Path(__file__).resolve().parents[2] / "schemas"))

pytestmark = pytest.mark.skipif(not CLI, reason="DSCURVE_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def schema(name):
    return json.loads((SCHEMAS / name).read_text())


COMMANDS = [
    ["admissible", "--genus", "4"],
    ["zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "5", "--ds", "2"],
    ["zeta", "from-P", "--q", "1024", "--g", "4", "--P", "1,0,0,0,0,0,0,0,1099511627776"],
    ["count", "--curve", "hyp q=2 h=x^2+x f=x^5+x^3+x^2+x", "--m", "3"],
    ["family", "--name", "hermitian", "--param", "2", "--m", "2", "--brute"],
    ["carlitz", "zeta", "--q", "2", "--M", "t^3+t+1"],
    ["drinfeld", "rank3-check", "--u", "1;1;1"],
    ["drinfeld", "descent", "--q", "2", "--l", "2", "--M", "t^3+t+1"],
    ["howe", "interpolation", "--q", "3", "--seed", "5"],
    ["reproduce", "admissible-g4"],
]


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_outputs_validate_and_are_deterministic(args):
    jsonschema = pytest.importorskip("jsonschema")
    first, second = run(*args), run(*args)
    assert first.returncode == 0, first.stderr
    assert first.stdout == second.stdout
    jsonschema.validate(json.loads(first.stdout), schema("envelope.schema.json"))


def test_spec_example_from_counts():
    out = json.loads(run("zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "5", "--ds", "2").stdout)
    assert out["outputs"]["P"] == [1, 2, 2]
    assert out["outputs"]["ds"] is True
    assert "timing_ms" not in out


def test_large_integers_are_strings():
    q = 2**20
    out = json.loads(run("zeta", "from-P", "--q", str(q), "--g", "1", "--P", f"1,0,{q}", "--upto", "3").stdout)
    assert out["outputs"]["N"] == [q + 1, (q + 1) ** 2, str(q**3 + 1)]


def test_enumerate_lines():
    jsonschema = pytest.importorskip("jsonschema")
    p = run("enumerate", "--q", "2", "--g", "5", "--a1", "9", "--zero", "2,3,5")
    assert p.returncode == 0
    lines = [json.loads(line) for line in p.stdout.splitlines()]
    assert [c["a"] for c in lines] == [[9, 0, 0, 2, 0]]
    for c in lines:
        jsonschema.validate(c, schema("candidate.schema.json"))
    jobs = run("enumerate", "--q", "2", "--g", "3", "--jobs", "3")
    assert jobs.stdout == run("enumerate", "--q", "2", "--g", "3").stdout


def test_csv_output():
    p = run("admissible", "--genus", "1", "--format", "csv")
    assert p.stdout.splitlines() == ["q,m", "2,2", "2,3", "3,2", "4,2"]


@pytest.mark.parametrize(
    "args,flag",
    [
        (["zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "x"], "--counts"),
        (["zeta", "from-counts", "--q", "6", "--g", "1", "--counts", "5"], "--q"),
        (["admissible"], "--genus"),
        (["admissible", "--genus", "1", "--bogus"], "--bogus"),
        (["carlitz", "phi", "--q", "2", "--M", "t^^2"], "--M"),
        (["howe", "cubic", "--q", "3", "--n", "1"], "--n"),
    ],
)
def test_validation_errors_exit_2(args, flag):
    p = run(*args)
    assert p.returncode == 2
    assert flag in p.stderr


def test_computation_errors_exit_1():
    p = run("zeta", "from-counts", "--q", "2", "--g", "1", "--counts", "99")
    assert p.returncode == 1
    assert "no curve" in p.stderr


def test_reproduce_mismatch_exits_1_with_diff():
    p = run("reproduce", "genus1-table")
    assert p.returncode == 1
    assert "expected N_1=4" in p.stderr


def test_every_subcommand_has_help():
    for args in (["zeta", "from-h"], ["enumerate"], ["carlitz", "places"], ["drinfeld", "basechange"],
                 ["howe", "cubic"], ["reproduce"], ["family"], ["count"]):
        p = run(*args, "--help")
        assert p.returncode == 0 and "--help" in p.stdout
