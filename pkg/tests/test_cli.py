import json

import pytest

from bhlab.analysis import CSV_HEADER
from bhlab.cli import SWEEP_HEADER, main

from conftest import pm_spec, xor_spec


@pytest.fixture
def spec_file(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(pm_spec(k=2, t=1, s=1, m=(4, 4)).to_json()))
    return str(path)


@pytest.fixture
def chain_spec_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(xor_spec(k=4, t=2, m_each=1).to_json()))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestRun:
    def test_optimal_run_json(self, capsys, spec_file):
        code, out = run_cli(capsys, "run", "--spec", spec_file, "--alg", "qalg-a", "--seed", "7")
        assert code == 0
        doc = json.loads(out)
        assert doc["cost"] == 1.0
        assert doc["ratio"] == 1.0
        assert doc["outputs"] == "".join(str(b) for b in doc["outputs"] if b in "01")

    def test_byte_identical_reruns(self, capsys, spec_file):
        _, first = run_cli(capsys, "run", "--spec", spec_file, "--alg", "qalg-b", "--seed", "7")
        _, second = run_cli(capsys, "run", "--spec", spec_file, "--alg", "qalg-b", "--seed", "7")
        assert first == second

    def test_ibh_needs_interleaving(self, capsys, spec_file):
        code, _ = run_cli(capsys, "run", "--spec", spec_file, "--alg", "ibh")
        assert code == 2

    def test_promise_violation_exit(self, capsys, spec_file):
        code, _ = run_cli(
            capsys, "run", "--spec", spec_file, "--alg", "qalg-b", "--input", "2111021111"
        )
        assert code == 3

    def test_literal_input(self, capsys, spec_file):
        code, out = run_cli(
            capsys, "run", "--spec", spec_file, "--alg", "qalg-a", "--input", "2111121111"
        )
        assert code == 0
        assert json.loads(out)["word"] == "2111121111"

    def test_unknown_algorithm(self, capsys, spec_file):
        code, _ = run_cli(capsys, "run", "--spec", spec_file, "--alg", "qalg-z")
        assert code == 2

    def test_missing_spec_file(self, capsys, tmp_path):
        code, _ = run_cli(capsys, "run", "--spec", str(tmp_path / "nope.json"), "--alg", "qalg-a")
        assert code == 2


class TestExpect:
    def test_header_and_methods(self, capsys, chain_spec_file):
        code, out = run_cli(
            capsys, "expect", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--method", "all", "--eps", "0.1", "--trials", "500", "--seed", "3",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == CSV_HEADER
        methods = [line.split(",")[1] for line in lines[1:]]
        assert methods == ["closed", "exact", "mc"]
        values = [float(line.split(",")[4]) for line in lines[1:]]
        assert abs(values[0] - values[1]) <= 1e-9
        assert values[0] == pytest.approx(2.724, abs=1e-9)

    def test_closed_eps_zero_is_optimal(self, capsys, chain_spec_file):
        code, out = run_cli(
            capsys, "expect", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--method", "closed", "--eps", "0",
        )
        assert code == 0
        assert float(out.strip().splitlines()[1].split(",")[4]) == 2.0

    def test_zero_trials_is_usage_error(self, capsys, chain_spec_file):
        code, _ = run_cli(
            capsys, "expect", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--method", "mc", "--trials", "0",
        )
        assert code == 2

    def test_branch_limit_exit(self, capsys, tmp_path):
        path = tmp_path / "wide.json"
        path.write_text(json.dumps(xor_spec(k=8, t=1, m_each=1).to_json()))
        code, _ = run_cli(
            capsys, "expect", "--spec", str(path), "--alg", "ralg-a",
            "--method", "exact", "--eps", "0.1", "--branch-limit", "4",
        )
        assert code == 4

    def test_closed_requires_chain_algorithm(self, capsys, spec_file):
        code, _ = run_cli(
            capsys, "expect", "--spec", spec_file, "--alg", "qalg-b", "--method", "closed"
        )
        assert code == 2

    def test_deterministic_output(self, capsys, chain_spec_file):
        args = (
            "expect", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--method", "mc", "--eps", "0.1", "--trials", "200", "--seed", "9",
        )
        _, first = run_cli(capsys, *args)
        _, second = run_cli(capsys, *args)
        assert first == second


class TestSweep:
    def test_eps_sweep_csv(self, capsys, chain_spec_file, tmp_path):
        out_dir = str(tmp_path / "out")
        code, _ = run_cli(
            capsys, "sweep", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--axis", "eps", "--from", "0", "--to", "0.45", "--step", "0.05",
            "--out", out_dir, "--svg",
        )
        assert code == 0
        csv_lines = (tmp_path / "out" / "sweep_eps.csv").read_text().splitlines()
        assert csv_lines[0] == SWEEP_HEADER
        assert len(csv_lines) == 11
        ratios = [float(line.split(",")[11]) for line in csv_lines[1:]]
        assert all(a <= b + 1e-12 for a, b in zip(ratios, ratios[1:]))
        svg = (tmp_path / "out" / "sweep_eps.svg").read_text()
        assert svg.startswith("<svg") and "polyline" in svg

    def test_bound_sweep_ends_at_one(self, capsys, chain_spec_file, tmp_path):
        out_dir = str(tmp_path / "bounds")
        code, _ = run_cli(
            capsys, "sweep", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--axis", "b", "--from", "0", "--to", "4", "--step", "1", "--out", out_dir,
        )
        assert code == 0
        lines = (tmp_path / "bounds" / "sweep_b.csv").read_text().splitlines()
        cells = lines[-1].split(",")
        assert float(cells[12]) == 1.0 and float(cells[13]) == 1.0

    def test_t_sweep_rejects_non_divisors(self, capsys, chain_spec_file, tmp_path):
        out_dir = str(tmp_path / "tsweep")
        code, _ = run_cli(
            capsys, "sweep", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--axis", "t", "--from", "1", "--to", "4", "--step", "1",
            "--out", out_dir, "--eps", "0.1",
        )
        assert code == 0
        lines = (tmp_path / "tsweep" / "sweep_t.csv").read_text().splitlines()
        by_point = {line.split(",")[2]: line for line in lines[1:]}
        assert by_point["3"].split(",")[14] != ""  # rejected with a reason
        assert by_point["2"].split(",")[14] == ""
        assert by_point["2"].split(",")[6] != ""

    def test_empty_range(self, capsys, chain_spec_file, tmp_path):
        code, _ = run_cli(
            capsys, "sweep", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--axis", "eps", "--from", "0.4", "--to", "0.1", "--out", str(tmp_path / "x"),
        )
        assert code == 2


class TestBrute:
    def test_deterministic_report(self, capsys, tmp_path):
        path = tmp_path / "brute.json"
        path.write_text(json.dumps(pm_spec(k=2, t=1, s=1, m=(8, 8)).to_json()))
        code, out = run_cli(capsys, "brute", "--spec", str(path), "--states", "2")
        assert code == 0
        doc = json.loads(out)
        assert doc["ratio"] >= 3.0
        assert doc["bound"] == 3.0
        assert doc["witness"]["S"] == 2

    def test_space_too_large_exit(self, capsys, tmp_path):
        path = tmp_path / "big.json"
        path.write_text(json.dumps(pm_spec(k=2, t=1).to_json()))
        code, _ = run_cli(capsys, "brute", "--spec", str(path), "--states", "5")
        assert code == 5


class TestGenInput:
    def test_deterministic(self, capsys, spec_file):
        _, first = run_cli(capsys, "gen-input", "--spec", spec_file, "--seed", "4")
        _, second = run_cli(capsys, "gen-input", "--spec", spec_file, "--seed", "4")
        assert first == second
        word = first.strip()
        assert set(word) <= {"0", "1", "2"} and word.count("2") == 2

    def test_pinned_v(self, capsys, spec_file):
        _, out = run_cli(capsys, "gen-input", "--spec", spec_file, "--v", "2")
        word = out.strip()
        assert word.count("1") == 8  # v=2 at s=1 forces 4 ones per segment


class TestTableAlgId:
    def test_run_table_from_file(self, capsys, tmp_path, spec_file):
        table = tmp_path / "machine.json"
        table.write_text(
            json.dumps({"S": 1, "transitions": [[0, 0, 0]], "outputs": [[0, 0, 0]]})
        )
        code, out = run_cli(
            capsys, "run", "--spec", spec_file, "--alg", f"table:{table}", "--seed", "1"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["outputs"] == "00"

    def test_missing_table_file(self, capsys, spec_file, tmp_path):
        code, _ = run_cli(
            capsys, "run", "--spec", spec_file, "--alg", f"table:{tmp_path / 'no.json'}"
        )
        assert code == 2


class TestUSweep:
    def test_u_axis_rejects_non_divisors(self, capsys, chain_spec_file, tmp_path):
        out_dir = str(tmp_path / "usweep")
        code, _ = run_cli(
            capsys, "sweep", "--spec", chain_spec_file, "--alg", "ralg-a",
            "--axis", "u", "--from", "1", "--to", "4", "--step", "1",
            "--out", out_dir, "--eps", "0.1",
        )
        assert code == 0
        lines = (tmp_path / "usweep" / "sweep_u.csv").read_text().splitlines()
        by_point = {line.split(",")[2]: line.split(",") for line in lines[1:]}
        assert by_point["3"][14] != ""   # u=3 does not divide lambda*k=4
        assert by_point["2"][14] == ""
        assert float(by_point["2"][6]) == pytest.approx(2.724)  # t=2, u=2 at eps 0.1


class TestEnvSeed:
    def test_bhlab_seed_env_default(self, capsys, spec_file, monkeypatch):
        monkeypatch.setenv("BHLAB_SEED", "4")
        _, via_env = run_cli(capsys, "gen-input", "--spec", spec_file)
        monkeypatch.delenv("BHLAB_SEED")
        _, via_flag = run_cli(capsys, "gen-input", "--spec", spec_file, "--seed", "4")
        assert via_env == via_flag


class TestExperimentStanza:
    def test_flags_override_config(self, capsys, tmp_path):
        doc = xor_spec(k=2, t=1, m_each=1).to_json()
        doc["experiment"] = {"eps": 0.2, "trials": 100, "seed": 5}
        path = tmp_path / "exp.json"
        path.write_text(json.dumps(doc))
        code, out = run_cli(
            capsys, "expect", "--spec", str(path), "--alg", "ralg-a", "--method", "closed"
        )
        assert code == 0
        row = out.strip().splitlines()[1].split(",")
        assert float(row[2]) == 0.2  # eps from the stanza
        code, out = run_cli(
            capsys, "expect", "--spec", str(path), "--alg", "ralg-a",
            "--method", "closed", "--eps", "0.1",
        )
        row = out.strip().splitlines()[1].split(",")
        assert float(row[2]) == 0.1  # flag wins
