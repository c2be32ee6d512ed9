"""Integration tests for the cvmfe command line."""

import json
import logging
import math
import os
import subprocess
import sys
from pathlib import Path

import pandas as pd
import pytest

from cvmfe import __version__
from cvmfe.cli import EXIT_IO, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, run

SRC_DIR = Path(__file__).resolve().parents[2] / "src"
EPS1_H12 = math.log(1.2) / 2.0

pytestmark = pytest.mark.integration


@pytest.fixture(autouse=True)
def _detach_cli_logging():
    yield
    root = logging.getLogger("cvmfe")
    for handler in [h for h in root.handlers if h.get_name() == "cvmfe-cli"]:
        root.removeHandler(handler)
    root.setLevel(logging.NOTSET)


def _cli(*args):
    return run(["--threads", "1", *[str(a) for a in args]])


def _generate(temp_dir, rows=16, cols=16, seed=7, name="g.txt"):
    out = temp_dir / name
    assert _cli("generate", "--rows", rows, "--cols", cols, "--seed", seed, "--out", out) == 0
    return out


class TestGenerate:
    """Test the generate command."""

    def test_writes_grid_and_manifest(self, temp_dir):
        out = _generate(temp_dir)
        manifest = json.loads((temp_dir / "g.txt.manifest.json").read_text())

        assert len(out.read_text().splitlines()) == 16
        assert manifest["command"] == "generate"
        assert manifest["config"]["seed"] == 7
        assert manifest["outputs"] == [str(out)]
        assert manifest["versions"]["cvmfe"] == __version__

    def test_repeatable(self, temp_dir):
        out = _generate(temp_dir)
        grid_bytes = out.read_bytes()
        manifest_bytes = (temp_dir / "g.txt.manifest.json").read_bytes()
        _generate(temp_dir)

        assert out.read_bytes() == grid_bytes
        assert (temp_dir / "g.txt.manifest.json").read_bytes() == manifest_bytes

    def test_odd_rows(self, temp_dir, capsys):
        code = _cli("generate", "--rows", 3, "--cols", 4, "--seed", 1, "--out", temp_dir / "g.txt")

        assert code == EXIT_USAGE
        assert "row count" in capsys.readouterr().err
        assert not (temp_dir / "g.txt").exists()


class TestAnalyze:
    """Test the analyze command."""

    def test_zero_interaction(self, temp_dir):
        grid = _generate(temp_dir)
        out = temp_dir / "a.json"

        assert _cli("analyze", "--grid", grid, "--eps1", 0, "--json-out", out) == EXIT_OK
        thermo = json.loads(out.read_text())["thermo"]
        assert thermo["free_energy"] == pytest.approx(-thermo["entropy"], abs=1e-15)

    def test_estimates_h_when_not_given(self, temp_dir):
        grid = _generate(temp_dir, rows=64, cols=64)
        out = temp_dir / "a.json"

        assert _cli("analyze", "--grid", grid, "--json-out", out) == EXIT_OK
        report = json.loads(out.read_text())
        assert report["h_estimate"]["h_mean"] == pytest.approx(1.0, abs=0.1)
        assert report["thermo"]["eps1"] == pytest.approx(math.log(report["h_estimate"]["h_mean"]))
        assert (temp_dir / "a.json.manifest.json").exists()

    def test_unbalanced_grid_with_interaction(self, temp_dir):
        """An off-balance grid still reports its free energy at the given interaction."""
        grid = temp_dir / "heavy.txt"
        grid.write_text("1110\n1110\n1100\n1000\n")
        out = temp_dir / "a.json"

        assert _cli("analyze", "--grid", grid, "--eps1", 0.1, "--json-out", out) == EXIT_OK
        report = json.loads(out.read_text())
        assert report["h_estimate"] is None
        assert report["config_vars"]["x"][0] == pytest.approx(0.5625)
        assert report["thermo"]["eps1"] == pytest.approx(0.1)

    def test_unbalanced_grid_without_interaction(self, temp_dir, capsys):
        grid = temp_dir / "heavy.txt"
        grid.write_text("1110\n1110\n1100\n1000\n")

        assert _cli("analyze", "--grid", grid, "--json-out", temp_dir / "a.json") == EXIT_USAGE
        assert "x1 near 0.5" in capsys.readouterr().err

    def test_both_interactions_rejected(self, temp_dir):
        grid = _generate(temp_dir)
        code = _cli(
            "analyze", "--grid", grid, "--eps1", 0, "--h", 1.2, "--json-out", temp_dir / "a.json"
        )

        assert code == EXIT_USAGE

    def test_estimation_failure(self, temp_dir, capsys):
        grid = temp_dir / "striped.txt"
        grid.write_text("1111\n0000\n1111\n0000\n")

        assert _cli("analyze", "--grid", grid, "--json-out", temp_dir / "a.json") == EXIT_NUMERICAL
        assert "no h found" in capsys.readouterr().err

    def test_bad_grid_file(self, temp_dir, capsys):
        grid = temp_dir / "bad.txt"
        grid.write_text("10\n0\n")

        assert _cli("analyze", "--grid", grid, "--json-out", temp_dir / "a.json") == EXIT_USAGE
        assert "line 2" in capsys.readouterr().err


class TestMinimize:
    """Test the minimize command."""

    def test_trace_csv(self, temp_dir):
        grid = _generate(temp_dir)
        trace = temp_dir / "t.csv"
        code = _cli(
            "minimize", "--grid", grid, "--h", 1.2, "--trials", 2000, "--seed", 3,
            "--out", temp_dir / "best.txt", "--trace-csv", trace, "--json-out", temp_dir / "m.json",
        )

        assert code == EXIT_OK
        frame = pd.read_csv(trace)
        assert list(frame.columns) == ["trial", "delta_f", "accepted", "free_energy_after"]
        assert (frame["free_energy_after"].diff().dropna() <= 1e-12).all()
        manifest = json.loads((temp_dir / "best.txt.manifest.json").read_text())
        assert len(manifest["outputs"]) == 3
        assert json.loads((temp_dir / "m.json").read_text())["thermo"]["eps1"] == pytest.approx(
            math.log(1.2)
        )

    def test_missing_grid(self, temp_dir, capsys):
        code = _cli(
            "minimize", "--grid", temp_dir / "nope.txt", "--h", 1.2, "--out", temp_dir / "b.txt"
        )

        assert code == EXIT_IO
        assert "nope.txt" in capsys.readouterr().err

    def test_interaction_required(self, temp_dir):
        grid = _generate(temp_dir)

        assert _cli("minimize", "--grid", grid, "--out", temp_dir / "b.txt") == EXIT_USAGE

    def test_restarts_match_oracle(self, temp_dir):
        grid = _generate(temp_dir, rows=4, cols=4, seed=2)
        best = temp_dir / "best.txt"
        summary = temp_dir / "m.json"
        oracle = temp_dir / "oracle.json"

        assert _cli(
            "minimize", "--grid", grid, "--eps1", EPS1_H12, "--restarts", 20, "--seed", 1,
            "--out", best, "--json-out", summary,
        ) == EXIT_OK
        assert _cli(
            "oracle", "--rows", 4, "--cols", 4, "--eps1", EPS1_H12, "--json-out", oracle
        ) == EXIT_OK

        found = json.loads(summary.read_text())["thermo"]["free_energy"]
        exact = json.loads(oracle.read_text())["min_free_energy"]
        assert found >= exact - 1e-12
        assert found - exact <= 0.02 * abs(exact)


class TestOracle:
    """Test the oracle command."""

    def test_report(self, temp_dir):
        out = temp_dir / "o.json"

        assert _cli("oracle", "--rows", 4, "--cols", 4, "--h", 1.2, "--json-out", out) == EXIT_OK
        report = json.loads(out.read_text())
        assert report["states_enumerated"] == 12870
        assert report["h"] == pytest.approx(1.2)
        assert report["argmin_grids"]

    def test_too_large(self, temp_dir):
        code = _cli(
            "oracle", "--rows", 6, "--cols", 6, "--eps1", 0, "--json-out", temp_dir / "o.json"
        )

        assert code == EXIT_USAGE


class TestVarbayes:
    """Test the varbayes command."""

    @pytest.fixture
    def joint_file(self, temp_dir):
        path = temp_dir / "joint.json"
        path.write_text(json.dumps({"table": [[0.1, 0.2], [0.3, 0.4]], "theta": {"h": 1.2}}))
        return path

    def test_posterior_default(self, temp_dir, joint_file):
        out = temp_dir / "vb.json"

        code = _cli("varbayes", "--joint-json", joint_file, "--blanket-state", 1, "--json-out", out)

        assert code == EXIT_OK
        report = json.loads(out.read_text())
        assert report["decomposition"]["kl_posterior"] == pytest.approx(0.0, abs=1e-15)
        assert report["theta"] == {"h": 1.2}

    def test_identity_fields(self, temp_dir, joint_file):
        q = temp_dir / "q.json"
        q.write_text("[0.5, 0.5]")
        out = temp_dir / "vb.json"

        assert _cli(
            "varbayes", "--joint-json", joint_file, "--q-json", q, "--blanket-state", 1,
            "--json-out", out,
        ) == EXIT_OK
        parts = json.loads(out.read_text())["decomposition"]
        assert parts["free_energy"] == pytest.approx(
            parts["expected_energy"] - parts["entropy_q"], abs=1e-10
        )
        assert parts["free_energy"] == pytest.approx(
            parts["surprisal_l"] + parts["kl_posterior"], abs=1e-10
        )

    def test_support_violation(self, temp_dir):
        joint = temp_dir / "joint.json"
        joint.write_text("[[0.0, 0.5], [0.5, 0.0]]")
        q = temp_dir / "q.json"
        q.write_text("[0.5, 0.5]")
        code = _cli(
            "varbayes", "--joint-json", joint, "--q-json", q, "--json-out", temp_dir / "vb.json"
        )

        assert code == EXIT_NUMERICAL

    def test_invalid_distribution(self, temp_dir, joint_file):
        q = temp_dir / "q.json"
        q.write_text("[0.5, 0.6]")
        code = _cli(
            "varbayes", "--joint-json", joint_file, "--q-json", q, "--json-out", temp_dir / "v.json"
        )

        assert code == EXIT_USAGE


class TestPipeline:
    """Test the pipeline command on a small world."""

    @pytest.fixture
    def config_file(self, temp_dir):
        path = temp_dir / "cfg.json"
        path.write_text(
            json.dumps(
                {
                    "external_dims": [16, 16],
                    "repr_dims": [8, 8],
                    "sense_block": [2, 2],
                    "eps1_true": 0.0911607783969773,
                    "fit_restarts": 2,
                    "fit_trials": 1000,
                    "world_trials": 2000,
                    "seed": 2,
                }
            )
        )
        return path

    def test_artifacts(self, temp_dir, config_file):
        out_dir = temp_dir / "run"

        assert _cli("pipeline", "--config", config_file, "--out-dir", out_dir) == EXIT_OK
        manifest = json.loads((out_dir / "manifest.json").read_text())
        names = sorted(Path(p).name for p in manifest["outputs"])
        assert names == [
            "external.txt",
            "model.txt",
            "report.json",
            "representation.txt",
            "trace_fit.csv",
            "trace_world.csv",
        ]
        report = json.loads((out_dir / "report.json").read_text())
        assert report["divergence"] >= 0.0
        assert report["sensed_cv"] == report["external_cv"]
        assert manifest["config"]["pipeline"]["seed"] == 2

    def test_repeatable(self, temp_dir, config_file):
        out_dir = temp_dir / "run"
        _cli("pipeline", "--config", config_file, "--out-dir", out_dir)
        first = {p.name: p.read_bytes() for p in out_dir.iterdir()}
        _cli("pipeline", "--config", config_file, "--out-dir", out_dir)
        second = {p.name: p.read_bytes() for p in out_dir.iterdir()}

        assert first == second

    def test_malformed_config(self, temp_dir, capsys):
        path = temp_dir / "cfg.json"
        path.write_text(json.dumps({"external_dims": [16, 16], "repr_dims": [8, 8]}))

        assert _cli("pipeline", "--config", path, "--out-dir", temp_dir / "run") == EXIT_USAGE
        assert "sense_block" in capsys.readouterr().err


class TestEntryPoint:
    """Test the module entry point in a subprocess."""

    def test_version(self):
        env = {**os.environ, "PYTHONPATH": str(SRC_DIR)}
        result = subprocess.run(
            [sys.executable, "-m", "cvmfe.cli", "--version"],
            capture_output=True,
            text=True,
            timeout=60,
            env=env,
            check=False,
        )

        assert result.returncode == 0
        assert __version__ in result.stdout

    def test_version_in_process(self, capsys):
        assert run(["--version"]) == EXIT_OK
        assert __version__ in capsys.readouterr().out
