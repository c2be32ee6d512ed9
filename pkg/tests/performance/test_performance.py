"""Performance tests to catch regressions in the hot paths."""

import os
import time

import numpy as np
import psutil
import pytest

from cvmfe.exact.enumeration import enumerate_min_free_energy
from cvmfe.lattice.config_vars import ConfigCounter, count_config_vars
from cvmfe.lattice.grid import new_random
from cvmfe.minimize.protocol import minimize_grid
from cvmfe.thermo.cvm_free_energy import grid_eps_from_h

pytestmark = [pytest.mark.performance, pytest.mark.slow]


class TestIncrementalCounting:
    """Swap updates against full recounts on a large grid."""

    def test_swap_beats_recount(self):
        grid = new_random(128, 128, seed=1)
        counter = ConfigCounter(grid)
        rng = np.random.default_rng(0)
        a_sites = np.flatnonzero(grid.cells.ravel() == 1)
        b_sites = np.flatnonzero(grid.cells.ravel() == 0)

        start = time.perf_counter()
        for _ in range(2_000):
            site_a = int(rng.choice(a_sites))
            site_b = int(rng.choice(b_sites))
            counter.swap(site_a, site_b)
            counter.swap(site_b, site_a)
        swap_time = (time.perf_counter() - start) / 4_000

        start = time.perf_counter()
        for _ in range(50):
            counter.recount()
        recount_time = (time.perf_counter() - start) / 50

        counter.audit()
        assert counter.config_vars() == count_config_vars(grid)
        assert swap_time < recount_time
        print(f"swap: {swap_time * 1e6:.1f}us, recount: {recount_time * 1e6:.1f}us")


class TestMinimizeThroughput:
    """Trial rate of a single minimization."""

    def test_trials_per_second(self):
        grid = new_random(32, 32, seed=3)

        start = time.perf_counter()
        _, trace = minimize_grid(grid, grid_eps_from_h(1.2), 20_000, 20_000, seed=0)
        elapsed = time.perf_counter() - start

        assert trace.trials_run == 20_000
        assert elapsed < 60.0
        print(f"{trace.trials_run / elapsed:.0f} trials/s")


class TestEnumerationCost:
    """Exhaustive search stays bounded in time and memory."""

    def test_four_by_four(self):
        process = psutil.Process(os.getpid())
        mem_before = process.memory_info().rss / 1024 / 1024

        start = time.perf_counter()
        result = enumerate_min_free_energy(4, 4, grid_eps_from_h(1.2), threads=1)
        elapsed = time.perf_counter() - start

        mem_increase = process.memory_info().rss / 1024 / 1024 - mem_before
        assert result.states_enumerated == 12870
        assert elapsed < 30.0
        assert mem_increase < 500
        print(f"enumeration: {elapsed:.2f}s, memory increase: {mem_increase:.1f}MB")
