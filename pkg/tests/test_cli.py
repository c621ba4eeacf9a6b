import csv
import io
import json
import math
import subprocess
import sys

import pytest

from morrey import cli, serialize
from morrey.reproduce import Check, ReproductionReport


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


@pytest.fixture
def witness(tmp_path):
    x = write(tmp_path, "x.json", {"d": 1, "entries": [{"k": [0], "v": 1}, {"k": [4], "v": 1}]})
    y = write(tmp_path, "y.json", {"d": 1, "entries": [{"k": [0], "v": 1}, {"k": [4], "v": -1}]})
    return x, y


@pytest.fixture
def power(tmp_path):
    return write(tmp_path, "f.json", {"d": 1, "pieces": [{"lo": 0, "hi": "inf", "c": 1, "alpha": -0.5}]})


class TestNorm:
    def test_discrete_exact(self, capsys, witness):
        code, out, _ = run(capsys, "norm", "discrete", "--p", 1, "--q", 2, "--input", witness[0], "--exact", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["exact_value"] == 1 and payload["value"] == 1
        assert payload["window"] == {"center": [0], "radius": 0}

    def test_discrete_empty(self, capsys, tmp_path):
        path = write(tmp_path, "z.json", {"d": 2, "entries": []})
        code, out, _ = run(capsys, "norm", "discrete", "--p", 1, "--q", 2, "--d", 2, "--input", path, "--format", "json")
        assert code == 0 and json.loads(out)["value"] == 0

    def test_continuous_local(self, capsys, power):
        code, out, _ = run(capsys, "norm", "continuous", "--p", 1, "--q", 2, "--mode", "local", "--fn", power, "--format", "json")
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(2 * math.sqrt(2), rel=1e-12)

    def test_continuous_global_human(self, capsys, power):
        code, out, _ = run(capsys, "norm", "continuous", "--p", 1, "--q", 2, "--fn", power)
        assert code == 0 and out.startswith("norm = 2.828")

    def test_unbounded_exit_3(self, capsys, tmp_path):
        path = write(tmp_path, "c.json", {"d": 1, "pieces": [{"lo": 0, "hi": "inf", "c": 1, "alpha": 0}]})
        code, _, err = run(capsys, "norm", "continuous", "--p", 1, "--q", 2, "--fn", path)
        assert code == 3 and "error" in err

    def test_divergent_exit_3(self, capsys, tmp_path):
        path = write(tmp_path, "c.json", {"d": 1, "pieces": [{"lo": 0, "hi": 1, "c": 1, "alpha": -2}]})
        assert run(capsys, "norm", "continuous", "--p", 1, "--q", 2, "--mode", "local", "--fn", path)[0] == 3

    def test_malformed_exit_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        assert run(capsys, "norm", "discrete", "--p", 1, "--q", 2, "--input", path)[0] == 2

    def test_duplicate_key_exit_2(self, capsys, tmp_path):
        path = write(tmp_path, "dup.json", {"d": 1, "entries": [{"k": [0], "v": 1}, {"k": [0], "v": 2}]})
        code, _, err = run(capsys, "norm", "discrete", "--p", 1, "--q", 2, "--input", path)
        assert code == 2 and "duplicate" in err

    def test_bad_params_exit_2(self, capsys, witness):
        assert run(capsys, "norm", "discrete", "--p", 3, "--q", 2, "--input", witness[0])[0] == 2

    def test_argparse_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["norm", "discrete", "--p", "1"])
        assert exc.value.code == 2


class TestConstants:
    def test_eval_nj(self, capsys, witness):
        code, out, _ = run(
            capsys, "constants", "eval", "--functional", "nj", "--p", 1, "--q", 2,
            "--x", witness[0], "--y", witness[1], "--exact", "--format", "json",
        )
        payload = json.loads(out)
        assert code == 0
        assert payload["value"] == 2 and payload["exact"] == 2 and payload["envelope_ok"]

    def test_eval_equal_vectors_exit_2(self, capsys, witness):
        code, _, err = run(capsys, "constants", "eval", "--functional", "dw", "--p", 1, "--q", 2, "--x", witness[0], "--y", witness[0])
        assert code == 2 and "EqualVectors" in err

    def test_eval_continuous(self, capsys, tmp_path, power):
        k = write(tmp_path, "k.json", {"d": 1, "pieces": [
            {"lo": 0, "hi": 1, "c": 1, "alpha": -0.5}, {"lo": 1, "hi": "inf", "c": -1, "alpha": -0.5},
        ]})
        code, out, _ = run(
            capsys, "constants", "eval", "--functional", "james", "--space", "continuous",
            "--p", 1, "--q", 2, "--x", power, "--y", k, "--format", "json",
        )
        assert code == 0 and json.loads(out)["value"] == pytest.approx(2, abs=1e-5)

    def test_search_l2(self, capsys):
        code, out, _ = run(capsys, "constants", "search", "--functional", "nj", "--p", 2, "--q", 2, "--budget", 1000, "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["value"] == pytest.approx(1, abs=1e-12)
        assert payload["budget"] == 1000 and payload["seed"] == 0

    def test_envelope_violation_exit_4(self, capsys, witness, monkeypatch):
        monkeypatch.setattr(cli, "assert_envelopes", lambda report, space: False)
        code, out, _ = run(
            capsys, "constants", "eval", "--functional", "nj", "--p", 1, "--q", 2,
            "--x", witness[0], "--y", witness[1], "--format", "json",
        )
        assert code == 4 and json.loads(out)["envelope_ok"] is False

    def test_search_deterministic_bytes(self, capsys):
        argv = ["constants", "search", "--functional", "dw", "--p", 1, "--q", 3, "--d", 2, "--budget", 600, "--seed", 11, "--format", "json"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_json_round_trip(self, capsys):
        code, out, _ = run(capsys, "constants", "search", "--functional", "james", "--p", 1, "--q", 2, "--budget", 300, "--format", "json")
        payload = json.loads(out)
        pair = [serialize.vector_from_json(v) for v in payload["pair"]]
        assert [serialize.vector_to_json(v) for v in pair] == payload["pair"]


class TestReproduce:
    def test_thm2_exact(self, capsys):
        code, out, _ = run(capsys, "reproduce", "thm2", "--p", 1, "--q", 2, "--d", 1, "--exact", "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["passed"]
        assert payload["functionals"]["nj"] == 2 and payload["functionals"]["james"] == 2
        assert payload["functionals"]["dw_corrected(r=0.01)"] == pytest.approx(4.02 / 1.01, rel=1e-15)

    def test_thm1(self, capsys):
        code, out, _ = run(capsys, "reproduce", "thm1", "--p", 1, "--q", 2, "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["passed"]
        assert payload["norms"]["|f|"] == pytest.approx(2 * math.sqrt(2), rel=1e-6)

    def test_dw_curve(self, capsys):
        code, out, _ = run(capsys, "reproduce", "dw-curve", "--space", "discrete", "--p", 2, "--q", 3, "--r", "0.5,0.1", "--exact", "--format", "json")
        assert code == 0 and json.loads(out)["passed"]

    def test_dw_curve_continuous(self, capsys):
        code, out, _ = run(capsys, "reproduce", "dw-curve", "--space", "continuous", "--p", 1, "--q", 2, "--r", "0.5,0.01")
        assert code == 0 and "ALL PASS" in out

    def test_local_remark(self, capsys):
        code, out, _ = run(capsys, "reproduce", "local-remark", "--p", 1, "--q", 3, "--d", 3)
        assert code == 0 and "ALL PASS" in out

    def test_reversed_exponents_exit_2(self, capsys):
        assert run(capsys, "reproduce", "thm2", "--p", 2, "--q", 1, "--d", 1)[0] == 2

    def test_bad_r_exit_2(self, capsys):
        assert run(capsys, "reproduce", "thm2", "--p", 1, "--q", 2, "--r", "1.5")[0] == 2

    def test_check_failure_exit_5(self, capsys, monkeypatch):
        failing = ReproductionReport("thm2", {}, {}, [Check("always wrong", 1, 2, 0.0, "exact")])
        monkeypatch.setattr(cli, "reproduce_thm2", lambda *a, **k: failing)
        code, out, _ = run(capsys, "reproduce", "thm2", "--p", 1, "--q", 2)
        assert code == 5 and "FAILED" in out

    def test_informational_check_does_not_fail(self):
        report = ReproductionReport("x", {}, {}, [Check("info", 1, 2, 0.0, "exact", gate=False)])
        assert report.passed

    def test_csv_matches_json(self, capsys):
        argv = ["reproduce", "thm2", "--p", 1, "--q", 3, "--d", 2, "--exact"]
        payload = json.loads(run(capsys, *argv, "--format", "json")[1])
        rows = list(csv.DictReader(io.StringIO(run(capsys, *argv, "--format", "csv")[1])))
        assert len(rows) == len(payload["checks"])
        for row, chk in zip(rows, payload["checks"]):
            for key, value in serialize.flatten(chk, "check.").items():
                assert row[key] == ("" if value is None else str(value))
            assert row["theorem"] == "thm2" and row["params.q"] == "3"

    def test_csv_matches_json_flat_payload(self, capsys, witness):
        argv = ["constants", "eval", "--functional", "dw", "--p", 1, "--q", 2, "--x", witness[0], "--y", witness[1]]
        payload = json.loads(run(capsys, *argv, "--format", "json")[1])
        (row,) = csv.DictReader(io.StringIO(run(capsys, *argv, "--format", "csv")[1]))
        flat = serialize.flatten(payload)
        assert set(row) == set(flat)
        for key, value in flat.items():
            assert row[key] == ("" if value is None else str(value))

    def test_thm2_deterministic_bytes(self, capsys):
        argv = ["reproduce", "thm2", "--p", 2, "--q", 5, "--d", 3, "--format", "json"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "morrey", "reproduce", "thm2", "--p", "1", "--q", "2", "--exact", "--format", "json"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
