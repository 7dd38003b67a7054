"""End-to-end tests of the command-line interface."""

import json

import numpy as np
import pytest

from entbound import DensityMatrix, amplitude_damping, apply_two_sided, wootters_concurrence
from entbound.cli import default_base_state, main
from entbound.serialize import channel_to_json, dump_json, state_to_json


def run_cli(*argv):
    return main(list(argv))


def write_state(path, state):
    dump_json(state_to_json(state), path)
    return str(path)


def write_channel(path, channel):
    dump_json(channel_to_json(channel), path)
    return str(path)


def bell_density():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return DensityMatrix((2, 2), np.outer(v, v))


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0]
    rows = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
    return header, rows


class TestGen:
    def test_state_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert run_cli("gen", "state", str(a), "--dims", "2", "2", "--rank", "4",
                       "--seed", "7") == 0
        assert run_cli("gen", "state", str(b), "--dims", "2", "2", "--rank", "4",
                       "--seed", "7") == 0
        assert a.read_bytes() == b.read_bytes()

    def test_amplitude_damping_entries(self, tmp_path):
        out = tmp_path / "ch.json"
        assert run_cli("gen", "channel", str(out), "--family", "amplitude-damping",
                       "--gamma", "0.2") == 0
        doc = json.loads(out.read_text())
        assert doc["kraus"][0][1][1][0] == pytest.approx(np.sqrt(0.8))
        assert doc["kraus"][1][0][1][0] == pytest.approx(np.sqrt(0.2))

    def test_probe_full_rank(self, tmp_path):
        out = tmp_path / "probe.json"
        assert run_cli("gen", "probe", str(out), "--dim", "2", "--seed", "1") == 0
        doc = json.loads(out.read_text())
        m = np.array([[complex(re, im) for re, im in row] for row in doc["matrix"]])
        assert abs(np.linalg.norm(m) - 1.0) < 1e-12
        assert np.linalg.svd(m, compute_uv=False)[-1] > 1e-8

    def test_missing_family_parameter(self, tmp_path):
        assert run_cli("gen", "channel", str(tmp_path / "x.json"),
                       "--family", "depolarizing") == 2

    def test_pure_state_when_rank_omitted(self, tmp_path):
        out = tmp_path / "pure.json"
        assert run_cli("gen", "state", str(out), "--dims", "2", "3", "--seed", "3") == 0
        assert json.loads(out.read_text())["kind"] == "pure"


class TestBound:
    def test_bell_identity_channel(self, tmp_path, capsys):
        state = write_state(tmp_path / "bell.json", bell_density())
        from entbound import KrausChannel
        channel = write_channel(tmp_path / "id.json", KrausChannel(2, (np.eye(2),)))
        assert run_cli("bound", state, channel) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["lower"] == pytest.approx(1.0, abs=1e-12)
        assert report["exact"] == pytest.approx(1.0, abs=1e-12)
        assert report["p"] == pytest.approx(1.0, abs=1e-12)

    def test_probe_and_direct_agree(self, tmp_path, capsys):
        state = write_state(tmp_path / "rho.json", default_base_state())
        channel = write_channel(tmp_path / "ad.json", amplitude_damping(0.2))
        assert run_cli("bound", state, channel, "--method", "direct") == 0
        direct = json.loads(capsys.readouterr().out)
        assert run_cli("bound", state, channel, "--method", "probe") == 0
        probe = json.loads(capsys.readouterr().out)
        assert abs(direct["lower_raw"] - probe["lower_raw"]) < 1e-8
        assert direct["p_t"] == pytest.approx(1.0, abs=1e-10)

    def test_two_channels(self, tmp_path, capsys):
        state = write_state(tmp_path / "rho.json", default_base_state())
        ch1 = write_channel(tmp_path / "c1.json", amplitude_damping(0.2))
        ch2 = write_channel(tmp_path / "c2.json", amplitude_damping(0.3))
        assert run_cli("bound", state, ch1, ch2, "--method", "probe") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["lower"] <= report["exact"] <= report["upper"] + 1e-9

    def test_rank_deficient_probe_exits_5(self, tmp_path):
        state = write_state(tmp_path / "rho.json", bell_density())
        channel = write_channel(tmp_path / "ch.json", amplitude_damping(0.2))
        probe_doc = {"dim": 2, "matrix": [[[1.0, 0.0], [0.0, 0.0]],
                                          [[0.0, 0.0], [0.0, 0.0]]]}
        probe_path = tmp_path / "probe.json"
        dump_json(probe_doc, probe_path)
        assert run_cli("bound", state, channel, "--probe-path", str(probe_path)) == 5

    def test_broken_json_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        channel = write_channel(tmp_path / "ch.json", amplitude_damping(0.2))
        assert run_cli("bound", str(bad), channel) == 2

    def test_dimension_mismatch_exits_4(self, tmp_path):
        from entbound import random_density
        state = write_state(tmp_path / "rho.json", random_density((3, 3), 2, seed=0))
        channel = write_channel(tmp_path / "ch.json", amplitude_damping(0.2))
        assert run_cli("bound", state, channel) == 4

    def test_non_square_direct_method(self, tmp_path, capsys):
        from entbound import random_density
        state = write_state(tmp_path / "rho.json", random_density((2, 3), 3, seed=2))
        channel = write_channel(tmp_path / "ch.json", amplitude_damping(0.2))
        assert run_cli("bound", state, channel, "--method", "direct") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["exact"] is None and report["upper"] is None
        assert report["p_prime"] is None and report["p_t"] is None
        assert report["p"] == pytest.approx(1.0, abs=1e-12)

    def test_non_square_probe_method_exits_4(self, tmp_path):
        from entbound import random_density
        state = write_state(tmp_path / "rho.json", random_density((2, 3), 3, seed=2))
        channel = write_channel(tmp_path / "ch.json", amplitude_damping(0.2))
        assert run_cli("bound", state, channel, "--method", "probe") == 4


class TestSweep:
    def test_default_sweep(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run_cli("sweep", "--output", str(out)) == 0
        header, rows = read_csv(out)
        assert header == "x,lower_bound,concurrence,upper_bound,p_total"
        assert rows.shape == (101, 5)
        # x = 0: maximally mixed input stays separable
        assert np.all(np.abs(rows[0, 1:4]) <= 1e-12)
        # ordering along the whole grid
        assert np.all(rows[:, 1] <= rows[:, 2] + 1e-9)
        assert np.all(rows[:, 2] <= rows[:, 3] + 1e-9)

    def test_x1_concurrence_matches_standalone(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert run_cli("sweep", "--output", str(out)) == 0
        _, rows = read_csv(out)
        evolved = apply_two_sided(amplitude_damping(0.2), amplitude_damping(0.3),
                                  default_base_state())
        assert rows[-1, 2] == pytest.approx(wootters_concurrence(evolved.output), abs=1e-12)
        assert rows[-1, 0] == 1.0

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli("sweep", "--output", str(a)) == 0
        assert run_cli("sweep", "--output", str(b)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_config_file(self, tmp_path):
        config = {"x_grid": [0.0, 0.5, 1.0], "seed": 3}
        cfg_path = tmp_path / "cfg.json"
        dump_json(config, cfg_path)
        out = tmp_path / "sweep.csv"
        assert run_cli("sweep", "--config", str(cfg_path), "--output", str(out)) == 0
        _, rows = read_csv(out)
        assert rows.shape == (3, 5)
        np.testing.assert_allclose(rows[:, 0], [0.0, 0.5, 1.0])

    def test_bad_config_exits_2(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        dump_json({"x_grid": [0.5, 0.2]}, cfg_path)  # not increasing
        assert run_cli("sweep", "--config", str(cfg_path),
                       "--output", str(tmp_path / "s.csv")) == 2

    def test_qutrit_sweep_leaves_two_qubit_columns_empty(self, tmp_path):
        from entbound import KrausChannel, random_density
        from entbound.serialize import channel_to_json
        base = random_density((3, 3), 4, seed=8)
        identity3 = KrausChannel(3, (np.eye(3),))
        cfg = {"x_grid": [0.0, 0.5, 1.0],
               "base_state": state_to_json(base),
               "channel_1": channel_to_json(identity3),
               "channel_2": channel_to_json(identity3)}
        cfg_path = tmp_path / "cfg.json"
        dump_json(cfg, cfg_path)
        out = tmp_path / "sweep3.csv"
        assert run_cli("sweep", "--config", str(cfg_path), "--output", str(out)) == 0
        lines = out.read_text().strip().split("\n")
        assert len(lines) == 4
        fields = lines[-1].split(",")
        assert fields[2] == "" and fields[3] == ""  # exact/upper 2x2 only
        assert float(fields[4]) == pytest.approx(1.0)


class TestCheck:
    def test_mes_basis_suite_passes(self, capsys):
        assert run_cli("check", "mes-basis") == 0
        out = capsys.readouterr().out
        assert "mes-basis: PASS" in out

    def test_small_theorem1_suite(self, capsys):
        assert run_cli("check", "theorem1", "--trials", "50", "--seed", "1") == 0
        assert "theorem1: PASS" in capsys.readouterr().out

    def test_small_sandwich_suite(self, capsys):
        assert run_cli("check", "sandwich", "--trials", "40", "--seed", "2") == 0
        assert "sandwich: PASS" in capsys.readouterr().out

    def test_report_file(self, tmp_path, capsys):
        report = tmp_path / "report.txt"
        assert run_cli("check", "mes-basis", "--report", str(report)) == 0
        assert "mes-basis: PASS" in report.read_text()
        capsys.readouterr()

    def test_failure_writes_repro_bundle(self, tmp_path, capsys, monkeypatch):
        import entbound.cli
        from entbound.suites import SuiteResult

        def fake_run(name, seed=0, trials=None):
            return [SuiteResult("sandwich", False, 10, 1, 0.5,
                                {"suite": "sandwich", "trial": 3})]

        monkeypatch.setattr(entbound.cli, "run_suites", fake_run)
        report = tmp_path / "report.txt"
        assert run_cli("check", "sandwich", "--report", str(report)) == 1
        bundle = json.loads((tmp_path / "report.txt.repro.json").read_text())
        assert bundle["failure"]["trial"] == 3
        assert "sandwich: FAIL" in capsys.readouterr().out


def test_log_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ENTBOUND_LOG", "debug")
    assert run_cli("check", "mes-basis") == 0
    capsys.readouterr()
