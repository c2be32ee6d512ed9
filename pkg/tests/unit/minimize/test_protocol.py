"""Unit tests for the swap-protocol minimizer."""

import math

import numpy as np
import pandas as pd
import pytest

from cvmfe.exact.enumeration import enumerate_min_free_energy
from cvmfe.lattice.config_vars import count_config_vars
from cvmfe.lattice.grid import new_random
from cvmfe.minimize.protocol import (
    TRACE_COLUMNS,
    MinimizeConfig,
    NoSwapPossibleError,
    StopReason,
    default_max_trials,
    minimize_grid,
)
from cvmfe.thermo.cvm_free_energy import free_energy_cvm, grid_eps_from_h
from cvmfe.thermo.equilibrium import estimate_h

EPS1_H12 = math.log(1.2) / 2.0


@pytest.fixture(scope="module")
def oracle_4x4():
    return enumerate_min_free_energy(4, 4, EPS1_H12, threads=1)


class TestMinimizeConfig:
    """Test stopping settings."""

    def test_default_budget(self):
        assert default_max_trials(16) == 2560
        assert MinimizeConfig().resolved_max_trials(256) == 655360

    def test_explicit_budget(self):
        assert MinimizeConfig(max_trials=10).resolved_max_trials(256) == 10

    @pytest.mark.parametrize(
        "kwargs", [{"max_trials": 0}, {"stall_window": 0}, {"audit_every": 0}]
    )
    def test_invalid_settings(self, kwargs):
        with pytest.raises(ValueError):
            MinimizeConfig(**kwargs).validate()


class TestMinimizeGrid:
    """Test strict-descent minimization."""

    def test_descent_is_monotone(self, random_grid, eps1_h12):
        final, trace = minimize_grid(random_grid, eps1_h12, max_trials=10_000, seed=1)
        after = [r.free_energy_after for r in trace.records]

        assert all(b <= a for a, b in zip(after, after[1:]))
        assert trace.final_report.free_energy <= trace.initial_report.free_energy
        assert final.n_a == random_grid.n_a

    def test_accepted_moves_strictly_decrease(self, random_grid, eps1_h12):
        _, trace = minimize_grid(random_grid, eps1_h12, max_trials=5_000, seed=2)
        accepted = trace.accepted_records()

        assert trace.acceptances == len(accepted) > 0
        assert all(r.delta_f < 0 for r in accepted)
        assert all(r.delta_f >= 0 for r in trace.records if not r.accepted)

    def test_final_report_matches_recount(self, random_grid, eps1_h12):
        final, trace = minimize_grid(random_grid, eps1_h12, max_trials=3_000, seed=3)
        recount = free_energy_cvm(count_config_vars(final), eps1_h12)

        assert recount.free_energy == pytest.approx(trace.final_report.free_energy, abs=1e-9)

    def test_input_grid_untouched(self, random_grid, eps1_h12):
        before = random_grid.digest()
        minimize_grid(random_grid, eps1_h12, max_trials=1_000, seed=4)

        assert random_grid.digest() == before

    def test_deterministic(self, random_grid, eps1_h12):
        first = minimize_grid(random_grid, eps1_h12, max_trials=2_000, seed=5)
        second = minimize_grid(random_grid, eps1_h12, max_trials=2_000, seed=5)

        assert first[0] == second[0]
        assert first[1].records == second[1].records

    def test_budget_stop(self, random_grid, eps1_h12):
        _, trace = minimize_grid(
            random_grid, eps1_h12, max_trials=50, stall_window=1_000, seed=6
        )

        assert trace.trials_run == 50
        assert len(trace.records) == 50
        assert trace.stop_reason is StopReason.MAX_TRIALS

    def test_stall_stop(self, random_grid, eps1_h12):
        _, trace = minimize_grid(
            random_grid, eps1_h12, max_trials=100_000, stall_window=50, seed=7
        )
        tail = trace.records[-50:]

        assert trace.stop_reason is StopReason.STALL_WINDOW
        assert not any(r.accepted for r in tail)
        assert trace.trials_run < 100_000

    def test_uniform_grid_rejected(self, all_a_grid):
        with pytest.raises(NoSwapPossibleError):
            minimize_grid(all_a_grid, 0.1, max_trials=10)

    def test_config_overrides_keywords(self, random_grid, eps1_h12):
        _, trace = minimize_grid(
            random_grid,
            eps1_h12,
            max_trials=5,
            seed=8,
            config=MinimizeConfig(max_trials=20, stall_window=1_000, audit_every=7),
        )

        assert trace.trials_run == 20

    def test_trace_csv_columns(self, random_grid, eps1_h12, temp_dir):
        _, trace = minimize_grid(random_grid, eps1_h12, max_trials=200, seed=9)
        path = trace.to_csv(temp_dir / "trace.csv")
        frame = pd.read_csv(path)

        assert tuple(frame.columns) == TRACE_COLUMNS
        assert len(frame) == 200
        assert frame["trial"].tolist() == list(range(1, 201))

    def test_summary(self, random_grid, eps1_h12):
        _, trace = minimize_grid(random_grid, eps1_h12, max_trials=100, seed=10)
        summary = trace.summary()

        assert summary["stop_reason"] in ("max-trials", "stall-window")
        assert summary["trials_run"] == 100
        assert summary["final"]["free_energy"] == trace.final_report.free_energy


class TestAgainstOracle:
    """Compare 4x4 runs with exhaustive enumeration."""

    def test_never_undercuts_oracle(self, oracle_4x4, eps1_h12):
        best = min(
            minimize_grid(new_random(4, 4, seed=s), eps1_h12, seed=s)[1].final_report.free_energy
            for s in range(20)
        )
        gap = abs(best - oracle_4x4.min_free_energy)

        assert best >= oracle_4x4.min_free_energy - 1e-12
        assert gap <= 0.02 * abs(oracle_4x4.min_free_energy)

    def test_optimal_grid_is_stable(self, oracle_4x4, eps1_h12):
        start = min(
            oracle_4x4.argmin_grids,
            key=lambda g: free_energy_cvm(count_config_vars(g), eps1_h12).free_energy,
        )
        final, trace = minimize_grid(
            start, eps1_h12, max_trials=5_000, stall_window=300, seed=0
        )

        assert trace.acceptances == 0
        assert trace.stop_reason is StopReason.STALL_WINDOW
        assert final == start


@pytest.mark.slow
class TestDescentProperty:
    """Monotone descent and composition on 16x16 grids."""

    def test_twenty_seeded_runs(self, eps1_h12):
        for seed in range(20):
            grid = new_random(16, 16, seed=seed)
            final, trace = minimize_grid(grid, eps1_h12, max_trials=10_000, seed=seed)
            after = np.array([r.free_energy_after for r in trace.records])

            assert np.all(np.diff(after) <= 0.0)
            assert final.n_a == grid.n_a
            assert count_config_vars(final).x1 == 0.5


@pytest.mark.slow
class TestRelaxationReachesH:
    """A grid minimized at grid_eps_from_h(h) is estimated back near h."""

    @pytest.mark.parametrize("h", [1.0, 1.2])
    def test_estimated_h(self, h):
        estimates = []
        for seed in range(3):
            grid = new_random(32, 32, seed=seed)
            final, _ = minimize_grid(
                grid, grid_eps_from_h(h), max_trials=100_000, stall_window=2_000, seed=seed
            )
            estimates.append(estimate_h(count_config_vars(final)).h_mean)

        assert np.mean(estimates) == pytest.approx(h, abs=0.06)
