import json
import subprocess
import sys

import pytest

from diskarg.cli import main
from diskarg.measures import BoundedFunctionSpec


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_gen_roundtrip(capsys, tmp_path):
    code, out = run(capsys, "gen", "--kind", "power", "--beta", "3", "--count", "50")
    assert code == 0
    spec = BoundedFunctionSpec.from_json(out)
    assert len(spec.zeros) == 50 and spec.zeros.tail.kind == "power"
    path = tmp_path / "spec.json"
    path.write_text(out)
    code, out2 = run(capsys, "eval", "--spec", str(path), "--z", "0.3,0.2", "--tol", "1e-2", "--h", "0.5")
    res = json.loads(out2)
    assert code == 0 and not res["at_zero"] and "L" in res
    assert 0 < res["tail_bound"] <= 1e-2


def test_eval_example1(capsys):
    code, out = run(capsys, "eval", "--kind", "example1", "--z", "0,0.5")
    res = json.loads(out)
    assert res["arg_f"] == pytest.approx(-0.8, abs=1e-14)


def test_eval_at_zero(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(BoundedFunctionSpec.from_dict({"zeros": {"zeros": [[0.5, 0.0]]}}).to_json())
    code, out = run(capsys, "eval", "--spec", str(path), "--z", "0.5,0")
    assert json.loads(out)["at_zero"] is True


def test_frostman_command(capsys):
    code, out = run(capsys, "frostman", "--kind", "example1", "--gamma", "0.5")
    res = json.loads(out)
    assert res["divergent"] is True and res["value"] == "inf" and res["certificate"] == "atom-at-vertex"
    code, out = run(capsys, "frostman", "--kind", "example2", "--alpha", "0.5", "--gamma", "0.8")
    assert json.loads(out)["divergent"] is False


def test_sweep_csv(capsys):
    args = ("sweep", "--kind", "example1", "--levels", "4:8", "--grid-angles", "9")
    code, out = run(capsys, *args)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "level_index,radius,sup_abs_dgamma_arg,grid_failures,verdict_partial"
    assert len(lines) == 6
    assert run(capsys, *args)[1] == out


def test_sweep_lnb_json(capsys):
    code, out = run(capsys, "sweep-lnb", "--kind", "random", "--seed", "3", "--levels", "4,6,8", "--grid-angles", "5", "--out", "json")
    rep = json.loads(out)
    assert code == 0 and rep["mode"] == "lnb" and len(rep["levels"]) == 3


def test_sweep_failure_budget_exit_code(capsys):
    # a relative tolerance below machine precision cannot be met on any ray
    code = main(["sweep", "--kind", "example1", "--levels", "10:12", "--grid-angles", "5", "--tol", "1e-17"])
    err = capsys.readouterr().err
    assert code == 2 and "budget" in err
    assert main(["sweep", "--kind", "example1", "--levels", "10:12", "--grid-angles", "5"]) == 0
    capsys.readouterr()
    from diskarg.experiments import example1_spec, verify_theorem_arg

    rep = verify_theorem_arg(example1_spec(), levels=[12], grid_angles=5, rtol=1e-16, atol=0, max_panels=2)
    assert rep.failure_budget_exceeded


def test_oracle_commands(capsys):
    code, out = run(capsys, "oracle", "rl", "--function", "one", "--r", "0.81", "--gamma", "0.5", "--panels", "100000")
    res = json.loads(out)
    assert res["oracle_value"] == pytest.approx(res["main_value"], rel=1e-8)
    code, out = run(capsys, "oracle", "product", "--kind", "random", "--seed", "1", "--z", "0.2,0.1")
    res = json.loads(out)
    assert res["oracle_value"] == pytest.approx(res["main_value"], rel=1e-10)
    code, out = run(capsys, "oracle", "frostman", "--kind", "conjugate", "--count", "10", "--gamma", "0.3")
    res = json.loads(out)
    assert res["oracle_value"] == pytest.approx(res["main_value"], rel=1e-12)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "diskarg", "--help"], capture_output=True, text=True, check=True)
    assert "sweep-lnb" in out.stdout
