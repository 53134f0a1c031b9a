import numpy as np
import pytest

from oransec.attacklab import CountingOracle, HsjaParams, PreconditionError, hop_skip_jump

BOUNDS_1D = (np.array([-10.0]), np.array([10.0]))
BOUNDS_2D = (np.full(2, -10.0), np.full(2, 10.0))


def step_oracle_1d(x):
    return 1 if x[0] > 0.0 else 0


def linear_oracle_2d(x):
    return 1 if x[0] > 0.0 else 0


class TestOneDimensional:
    def test_converges_to_analytic_boundary(self):
        params = HsjaParams(seed=3)
        trace = hop_skip_jump(step_oracle_1d, np.array([-1.0]), 0, np.array([1.0]),
                              params, BOUNDS_1D)
        assert trace.success
        final = trace.best_adversarial
        assert final[0] > 0.0
        # boundary at 0; source at -1: final within tolerance * segment of it
        assert final[0] <= params.binary_search_tolerance * 2.0

    def test_precondition_rejected(self):
        with pytest.raises(PreconditionError):
            hop_skip_jump(step_oracle_1d, np.array([-1.0]), 0, np.array([-2.0]),
                          HsjaParams(seed=1), BOUNDS_1D)


class TestTwoDimensional:
    def test_distance_near_optimum(self):
        source = np.array([-2.0, 0.5])
        trace = hop_skip_jump(linear_oracle_2d, source, 0, np.array([3.0, -4.0]),
                              HsjaParams(seed=11), BOUNDS_2D)
        assert trace.success
        assert trace.best_distance <= 1.1 * 2.0
        assert trace.queries <= 25_000

    def test_fifty_seeded_runs_median(self):
        source = np.array([-2.0, 0.5])
        dists = []
        for seed in range(50):
            rng = np.random.Generator(np.random.PCG64(seed))
            init = np.array([rng.uniform(0.5, 5.0), rng.uniform(-5.0, 5.0)])
            trace = hop_skip_jump(linear_oracle_2d, source, 0, init,
                                  HsjaParams(seed=seed), BOUNDS_2D)
            assert trace.queries <= 25_000
            series = trace.best_distance_series()
            assert all(b <= a + 1e-15 for a, b in zip(series, series[1:]))
            dists.append(trace.best_distance)
        assert float(np.median(dists)) <= 1.1 * 2.0


class TestTraceInvariants:
    def run(self, seed=0, budget=25_000):
        counter = {"n": 0}

        def oracle(x):
            counter["n"] += 1
            return linear_oracle_2d(x)

        trace = hop_skip_jump(oracle, np.array([-2.0, 0.5]), 0, np.array([2.0, 1.0]),
                              HsjaParams(seed=seed, query_budget=budget), BOUNDS_2D)
        return trace, counter["n"]

    def test_query_accounting_is_exact(self):
        trace, external_count = self.run()
        assert trace.queries == external_count

    def test_adversarial_points_confirmed_on_replay(self):
        trace, _ = self.run(seed=7)
        for point in trace.adversarial_points:
            assert linear_oracle_2d(point) != 0
        assert linear_oracle_2d(trace.best_adversarial) != 0

    def test_best_distance_non_increasing(self):
        trace, _ = self.run(seed=5)
        series = trace.best_distance_series()
        assert all(b <= a for a, b in zip(series, series[1:]))

    def test_zero_budget_returns_failed_trace(self):
        trace, external = self.run(budget=0)
        assert trace.queries == 0 == external
        assert not trace.success
        assert trace.iterations == []

    def test_budget_below_first_boundary_fails(self):
        # enough to confirm init, not enough to finish one binary search
        trace, external = self.run(budget=3)
        assert trace.queries == 3 == external
        assert not trace.success

    def test_deterministic_per_seed(self):
        a, _ = self.run(seed=9)
        b, _ = self.run(seed=9)
        assert a.canonical_json() == b.canonical_json()

    def test_trace_doc_round_trips_json(self):
        import json

        trace, _ = self.run(seed=2)
        doc = json.loads(trace.canonical_json())
        assert doc["queries"] == trace.queries
        assert doc["success"] is True
        assert len(doc["iterations"]) == len(trace.iterations)


class TestCountingOracle:
    def test_counts_and_enforces(self):
        oracle = CountingOracle(step_oracle_1d, budget=2)
        oracle(np.array([1.0]))
        oracle(np.array([1.0]))
        assert oracle.queries == 2
        from oransec.attacklab.hopskipjump import _BudgetExhausted
        with pytest.raises(_BudgetExhausted):
            oracle(np.array([1.0]))


def test_param_validation():
    with pytest.raises(ValueError):
        HsjaParams(norm="Linf")
    with pytest.raises(ValueError):
        HsjaParams(max_iterations=0)
    with pytest.raises(ValueError):
        HsjaParams(binary_search_tolerance=0.0)
