import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from avoidkit.cli import main
from avoidkit.graphs import to_graph6
from avoidkit.serialize import digest
from conftest import x6

SCHEMA = json.loads(resources.files("avoidkit").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_tsuff_exact(capsys):
    code, data = run_json(capsys, "tsuff", "--k", "4", "--set", "2", "--mode", "exact")
    assert code == 0
    assert data["result"]["region"] == "(0, 1/2]"
    assert data["manifest"]["result_digest"] == digest(data["result"])


def test_tsuff_grid(capsys):
    code, data = run_json(capsys, "tsuff", "--k", "5", "--set", "2", "--grid-denominator", "1000", "--failures-only")
    assert code == 0 and data["result"]["verdict"] == "holds-for-all-sampled"


def test_tsuff_no_variables(capsys):
    code, _ = run(capsys, "tsuff", "--k", "3", "--set", "0,1,2")
    assert code == 2


@pytest.mark.parametrize("bad", ["2,x", "9"])
def test_tsuff_bad_set(capsys, bad):
    code, _ = run(capsys, "tsuff", "--k", "5", "--set", bad)
    assert code == 2


def test_table_csv(capsys):
    code, out = run(capsys, "table", "--kmin", "5", "--kmax", "6")
    assert code == 0
    assert out.splitlines() == ["k,maximal_sets", "5,{2}", "6,{2} {3}"]


def test_table_json(capsys):
    code, data = run_json(capsys, "table", "--kmin", "5", "--kmax", "5", "--json")
    assert data["result"]["rows"] == [{"k": 5, "maximal_sets": "{2}"}]


def test_table_range_checked(capsys):
    code, _ = run(capsys, "table", "--kmin", "7", "--kmax", "5")
    assert code == 2


def test_kofh(capsys):
    code, data = run_json(capsys, "kofh", "--graph", to_graph6(x6()))
    assert code == 0 and data["result"]["k"] == 6


def test_kofh_symmetric(capsys):
    code, data = run_json(capsys, "kofh", "--graph", "K4")
    assert data["result"]["k"] == "infinity"


def test_kofh_bad_graph(capsys):
    code, _ = run(capsys, "kofh", "--graph", "not a graph")
    assert code == 2


def test_nustar(tmp_path, capsys):
    path = tmp_path / "k5.txt"
    path.write_text("n=5\n")
    code, data = run_json(capsys, "nustar", "--coloring", str(path), "--k", "3")
    assert code == 0 and data["result"]["nu_star"] == "10/3"


def test_witness_then_decompose(tmp_path, capsys):
    path = tmp_path / "c4.txt"
    code, data = run_json(capsys, "witness", "--kind", "c4", "--n", "13", "-o", str(path))
    assert code == 0 and path.exists()
    code, data = run_json(capsys, "decompose", "--coloring", str(path), "--k", "4", "--forbid-blue", "C4")
    assert code == 0 and data["result"]["status"] == "infeasible"
    code, data = run_json(capsys, "decompose", "--coloring", str(path), "--k", "4", "--forbid-blue", "C4",
                          "--node-limit", "10")
    assert code == 3 and data["result"]["status"] == "unknown"


def test_decompose_fano(tmp_path, capsys):
    path = tmp_path / "k7.txt"
    path.write_text("n=7\n")
    code, data = run_json(capsys, "decompose", "--coloring", str(path), "--k", "3", "--allow", "all")
    assert code == 0
    assert data["result"]["status"] == "found"
    assert len(data["result"]["packing"]["blocks"]) == 7


def test_missing_coloring_file(capsys):
    code, _ = run(capsys, "decompose", "--coloring", "/nonexistent/file", "--k", "3")
    assert code == 2


def test_experiment_deterministic(capsys):
    args = ("experiment", "--h", "8", "--trials", "10", "--seed", "3", "--compact")
    _, a = run_json(capsys, *args)
    _, b = run_json(capsys, *args)
    assert a["result"] == b["result"]
    assert a["manifest"]["result_digest"] == b["manifest"]["result_digest"]
    assert a["manifest"]["seed"] == 3


def test_global_flags_after_subcommand(capsys):
    code, data = run_json(capsys, "tsuff", "--k", "4", "--set", "2", "--compact", "--threads", "1")
    assert code == 0


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["tsuff", "--k"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "avoidkit", "table", "--kmin", "5", "--kmax", "5"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[1] == "5,{2}"
