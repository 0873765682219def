"""Tests for the BestKSubset solvers."""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np
import pytest

from sepmax.exceptions import (
    DegenerateInstanceError,
    EnumerationBudgetError,
    InvalidParamsError,
    RunBudgetError,
)
from sepmax.harness.dispatch import build_oracle
from sepmax.harness.generator import gen_cover
from sepmax.models import SchemeParams, SolveMode
from sepmax.oracle import ValueOracle
from sepmax.problems.cover import cover_oracle
from sepmax.problems.models import CoverInstance
from sepmax.solvers import (
    best_subset_exact,
    brute_force,
    exact_run_count,
    greedy,
    greedy_guarantee,
    min_exact_size,
    min_or_max,
    min_or_max_p,
    pool_size,
    preselect_enumerate,
    ptas,
    ptas_threshold,
    randomized_min,
    run_count,
    run_stream,
    selection_distribution,
    single_run,
    top_singletons,
)
from sepmax.solvers.base import ceil_count


@pytest.fixture
def inst_a_oracle_pair(inst_a: CoverInstance) -> tuple[ValueOracle, ValueOracle]:
    """Two independent oracles over the same instance."""
    return cover_oracle(inst_a)[0], cover_oracle(inst_a)[0]


def _exhaustive_best(oracle: ValueOracle, k: int) -> float:
    best = 0.0
    for size in range(min(k, oracle.size) + 1):
        for combo in combinations(range(oracle.size), size):
            best = max(best, oracle.evaluate(sum(1 << x for x in combo)))
    return best


def _allowed_failures(epsilon: float, trials: int) -> float:
    return epsilon + 3.0 * math.sqrt(epsilon * (1.0 - epsilon) / trials)


class TestCeilCount:
    def test_float_noise(self) -> None:
        assert ceil_count(math.log(math.exp(3.0))) == 3
        assert ceil_count(3.0000000000000004) == 3

    def test_rounds_up(self) -> None:
        assert ceil_count(2.01) == 3

    def test_never_negative(self) -> None:
        assert ceil_count(-5.0) == 0

    def test_infinite(self) -> None:
        with pytest.raises(InvalidParamsError):
            ceil_count(math.inf)


class TestBruteForce:
    def test_cover_pair(self, oracle_a: ValueOracle) -> None:
        result = brute_force(oracle_a, 2)
        assert result.chosen == [0, 2]
        assert result.value == 4.0
        assert result.residual == 0.0
        assert result.guarantee == 1.0
        assert result.mode == SolveMode.MAX

    def test_owa_single(self, oracle_b: ValueOracle) -> None:
        result = brute_force(oracle_b, 1)
        assert result.chosen == [1]
        assert result.value == 2.0

    def test_k_above_m_takes_everything(self, oracle_a: ValueOracle) -> None:
        assert brute_force(oracle_a, 7).chosen == [0, 1, 2]

    def test_k_zero(self, oracle_a: ValueOracle) -> None:
        result = brute_force(oracle_a, 0)
        assert result.chosen == []
        assert result.value == 0.0

    def test_ties_go_to_smallest_mask(self, zero_oracle: ValueOracle) -> None:
        assert brute_force(zero_oracle, 2).chosen == [0, 1]

    def test_budget(self) -> None:
        oracle = ValueOracle.from_function(30, lambda mask: float(mask.bit_count()))
        with pytest.raises(EnumerationBudgetError) as excinfo:
            brute_force(oracle, 15)
        assert excinfo.value.required == math.comb(30, 15)

    def test_counts_evaluations(self, oracle_a: ValueOracle) -> None:
        result = brute_force(oracle_a, 2)
        # Three pairs plus the full set for the residual.
        assert result.evaluations == 4


class TestMinExactSize:
    def test_cover(self, oracle_a: ValueOracle) -> None:
        result = min_exact_size(oracle_a)
        assert result.k == 2
        assert result.chosen == [0, 2]
        assert result.found is True

    def test_owa(self, oracle_b: ValueOracle) -> None:
        assert min_exact_size(oracle_b).chosen == [1]

    def test_zero(self, zero_oracle: ValueOracle) -> None:
        assert min_exact_size(zero_oracle).k == 0


class TestPreselect:
    def test_pool_size(self) -> None:
        assert pool_size(2.0, 2, 0.5) == 10
        assert pool_size(1.0, 1, 0.99) == 101

    def test_pool_size_rejects_beta_one(self) -> None:
        with pytest.raises(InvalidParamsError):
            pool_size(1.0, 1, 1.0)

    def test_top_singletons_tie_break(self, oracle_a: ValueOracle) -> None:
        assert top_singletons(oracle_a, 2) == [0, 1]

    def test_top_singletons_by_value(self, oracle_b: ValueOracle) -> None:
        assert top_singletons(oracle_b, 1) == [1]

    def test_cover_instance(self, oracle_a: ValueOracle) -> None:
        result = preselect_enumerate(oracle_a, SchemeParams(k=2, beta=0.5, p=2.0))
        assert result.chosen == [0, 2]
        assert result.value == 4.0
        assert result.guarantee == 0.5
        assert result.solver == "alg1"

    def test_requires_p(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            preselect_enumerate(oracle_a, SchemeParams(k=2, beta=0.5))

    def test_rejects_k_above_m(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            preselect_enumerate(oracle_a, SchemeParams(k=4, beta=0.5, p=2.0))

    @pytest.mark.parametrize("beta", [0.5, 0.7, 0.9])
    def test_beta_bound_on_generated_covers(self, beta: float) -> None:
        for seed in range(200):
            oracle, structural = build_oracle(gen_cover(12, 9, 3, seed=seed))
            assert structural.super_p is not None
            for k in (1, 2, 3):
                result = preselect_enumerate(
                    oracle, SchemeParams(k=k, beta=beta, p=structural.super_p)
                )
                assert result.value >= beta * _exhaustive_best(oracle, k) - 1e-9

    def test_small_pool_bound(self) -> None:
        # p = 1, K = 1, beta = 0.5 keeps a pool of 3 out of 9 sets.
        for seed in range(200):
            oracle, _ = build_oracle(gen_cover(12, 9, 1, seed=seed))
            result = preselect_enumerate(oracle, SchemeParams(k=1, beta=0.5, p=1.0))
            assert result.value >= 0.5 * _exhaustive_best(oracle, 1) - 1e-9


class TestGreedy:
    def test_cover_pair(self, oracle_a: ValueOracle) -> None:
        result = greedy(oracle_a, 2)
        assert result.chosen == [0, 2]
        assert result.value == 4.0

    def test_owa_single(self, oracle_b: ValueOracle) -> None:
        assert greedy(oracle_b, 1).chosen == [1]

    def test_k_zero(self, oracle_a: ValueOracle) -> None:
        result = greedy(oracle_a, 0)
        assert result.chosen == []
        assert result.value == 0.0

    def test_k_above_m(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            greedy(oracle_a, 4)

    def test_guarantee(self) -> None:
        assert greedy_guarantee(3, 2, None, False) is None
        assert greedy_guarantee(3, 2, 1.0, False) == pytest.approx(1 - math.exp(-2 / 3))
        assert greedy_guarantee(3, 2, 1.0, True) == pytest.approx(1 - 1 / math.e)
        assert greedy_guarantee(3, 3, 3.0, True) == pytest.approx(1 - math.exp(-3))

    def test_guarantee_recorded(self, oracle_a: ValueOracle) -> None:
        result = greedy(oracle_a, 2, p=1.0, submodular=True)
        assert result.guarantee == pytest.approx(1 - 1 / math.e)

    @pytest.mark.parametrize("p", [1, 2])
    def test_bound_on_min_frequency_covers(self, p: int) -> None:
        for seed in range(200):
            oracle, _ = build_oracle(gen_cover(10, 8, 3, seed=seed, min_freq=p))
            m = oracle.size
            for k in (1, 2, 3, 4):
                opt = _exhaustive_best(oracle, k)
                value = greedy(oracle, k).value
                assert value >= (1 - math.exp(-p * k / m)) * opt - 1e-9
                assert value >= (1 - 1 / math.e) * opt - 1e-9


class TestPtas:
    def test_threshold(self) -> None:
        assert ptas_threshold(0.5, 0.1) == 5
        assert ptas_threshold(1.0, math.exp(-3)) == 3

    def test_threshold_validation(self) -> None:
        with pytest.raises(InvalidParamsError):
            ptas_threshold(0.0, 0.1)
        with pytest.raises(InvalidParamsError):
            ptas_threshold(1.0, 1.0)

    def test_brute_force_branch(self, oracle_a: ValueOracle) -> None:
        result = ptas(oracle_a, 2, 1 / 3, 0.5)
        assert result.value == 4.0
        assert result.solver == "ptas"
        assert result.guarantee == 0.5
        assert result.evaluations == 4

    def test_greedy_branch(self, oracle_a: ValueOracle) -> None:
        # c = ceil(ln 2) = 1 < K.
        result = ptas(oracle_a, 2, 1.0, 0.5)
        assert result.chosen == [0, 2]
        assert result.solver == "ptas"

    def test_k_above_m_within_threshold(self, oracle_a: ValueOracle) -> None:
        # c = 5 >= K, so the exact branch takes the whole ground set.
        result = ptas(oracle_a, 5, 0.5, 0.1)
        assert result.chosen == [0, 1, 2]
        assert result.value == 4.0

    def test_k_above_m_beyond_threshold(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            ptas(oracle_a, 5, 2.0, 0.1)


class TestSingleRun:
    def test_first_step_uniform(self, oracle_a: ValueOracle) -> None:
        candidates, probs = selection_distribution(oracle_a, 0)
        assert candidates == [0, 1, 2]
        assert probs == pytest.approx([1 / 3, 1 / 3, 1 / 3])

    def test_second_step(self, oracle_a: ValueOracle) -> None:
        candidates, probs = selection_distribution(oracle_a, 0b001)
        assert candidates == [1, 2]
        assert probs == pytest.approx([1 / 3, 2 / 3])

    def test_zero_function_pads(self, zero_oracle: ValueOracle) -> None:
        _, probs = selection_distribution(zero_oracle, 0)
        assert not probs.any()
        mask = single_run(zero_oracle, 2, np.random.default_rng(0))
        assert mask.bit_count() == 2

    def test_size_is_k(self, oracle_a: ValueOracle) -> None:
        for seed in range(20):
            assert single_run(oracle_a, 2, np.random.default_rng(seed)).bit_count() == 2

    def test_deterministic_per_stream(self, oracle_a: ValueOracle) -> None:
        first = [single_run(oracle_a, 2, run_stream(9, i)) for i in range(30)]
        second = [single_run(oracle_a, 2, run_stream(9, i)) for i in range(30)]
        assert first == second

    def test_first_step_frequencies(self, oracle_b: ValueOracle) -> None:
        # Marginals (1, 2, 1) give probabilities (1/4, 1/2, 1/4).
        rng = np.random.default_rng(12345)
        draws = 100_000
        counts = np.zeros(3)
        for _ in range(draws):
            counts[single_run(oracle_b, 1, rng).bit_length() - 1] += 1
        expected = np.array([0.25, 0.5, 0.25])
        sigma = np.sqrt(expected * (1 - expected) / draws)
        assert np.all(np.abs(counts / draws - expected) <= 3 * sigma)


class TestRunCount:
    def test_examples(self) -> None:
        assert run_count(2.0, 2.0, 2, 0.05) == 48
        assert run_count(3.0, 2.0, 2, 0.05) == 108

    def test_exact_levels(self) -> None:
        assert exact_run_count(2.0, 1, 0.1) == 5
        assert exact_run_count(1.0, 3, 0.5) == 1

    def test_overflow_is_infinite(self) -> None:
        assert run_count(1e6, 2.0, 400, 0.05) == math.inf

    def test_validation(self) -> None:
        with pytest.raises(InvalidParamsError):
            run_count(2.0, 1.0, 2, 0.05)
        with pytest.raises(InvalidParamsError):
            run_count(0.0, 2.0, 2, 0.05)


class TestRandomizedMin:
    def _params(self, **kwargs: float) -> SchemeParams:
        values: dict[str, float] = {"k": 2, "beta": 2.0, "epsilon": 0.05, "p": 2.0}
        values.update(kwargs)
        return SchemeParams.model_validate(values)

    def test_run_count_and_mode(self, oracle_a: ValueOracle) -> None:
        result = randomized_min(oracle_a, self._params(), 7)
        assert result.runs == 48
        assert result.mode == SolveMode.MIN
        assert result.guarantee == 2.0
        assert result.seed == 7
        assert len(result.chosen) <= 2

    def test_hits_optimum(self, oracle_a: ValueOracle) -> None:
        hits = sum(
            randomized_min(oracle_a, self._params(), seed).value == 4.0 for seed in range(300)
        )
        assert hits >= 0.95 * 300

    def test_deterministic(self, inst_a_oracle_pair: tuple[ValueOracle, ValueOracle]) -> None:
        first, second = inst_a_oracle_pair
        assert randomized_min(first, self._params(), 11) == randomized_min(
            second, self._params(), 11
        )

    def test_workers_do_not_change_result(
        self, inst_a_oracle_pair: tuple[ValueOracle, ValueOracle]
    ) -> None:
        first, second = inst_a_oracle_pair
        serial = randomized_min(first, self._params(), 3)
        parallel = randomized_min(second, self._params(), 3, workers=4)
        assert serial == parallel

    def test_run_budget(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(RunBudgetError) as excinfo:
            randomized_min(oracle_a, self._params(p=10.0, k=3), 0, run_budget=1000)
        assert excinfo.value.required == run_count(10.0, 2.0, 3, 0.05)

    def test_beta_must_exceed_one(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            randomized_min(oracle_a, self._params(beta=0.5), 0)

    def test_bad_seed(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            randomized_min(oracle_a, self._params(), -1)

    def test_failure_rate_within_bound(self) -> None:
        oracle, structural = build_oracle(gen_cover(12, 9, 2, seed=21))
        assert structural.at_most_p is not None
        k, beta, epsilon, trials = 3, 2.0, 0.2, 300
        full = oracle.full_value()
        optimal_residual = full - brute_force(oracle, k).value
        params = SchemeParams(k=k, beta=beta, epsilon=epsilon, p=structural.at_most_p)
        failures = 0
        for seed in range(trials):
            result = randomized_min(oracle, params, seed)
            if result.residual > beta * optimal_residual + 1e-9:
                failures += 1
        assert failures / trials <= _allowed_failures(epsilon, trials)


class TestMinOrMax:
    def test_parameter(self, oracle_a: ValueOracle, oracle_b: ValueOracle) -> None:
        assert min_or_max_p(oracle_a, 2.0) == pytest.approx(3.0)
        assert min_or_max_p(oracle_b, 2.0) == pytest.approx(4.0)

    def test_modular_ratio(self) -> None:
        oracle = ValueOracle.from_function(4, lambda mask: float(mask.bit_count()))
        assert min_or_max_p(oracle, 2.0) == pytest.approx(2.0)

    def test_degenerate(self, zero_oracle: ValueOracle) -> None:
        with pytest.raises(DegenerateInstanceError):
            min_or_max_p(zero_oracle, 2.0)
        result = min_or_max(zero_oracle, 2, 2.0, 0.05, 0)
        assert result.chosen == []
        assert result.value == 0.0
        assert result.runs == 0

    def test_solver_and_mode(self, oracle_a: ValueOracle) -> None:
        result = min_or_max(oracle_a, 2, 2.0, 0.05, 5)
        assert result.solver == "min-or-max"
        assert result.mode == SolveMode.MIN_OR_MAX
        assert result.runs == run_count(3.0, 2.0, 2, 0.05)

    def test_evaluations_include_parameter(self, oracle_a: ValueOracle) -> None:
        result = min_or_max(oracle_a, 2, 2.0, 0.05, 0)
        assert result.evaluations == oracle_a.evaluations
        assert result.evaluations == 8

    def test_failure_rate_within_bound(self) -> None:
        oracle, _ = build_oracle(gen_cover(12, 9, 2, seed=21))
        k, beta, epsilon, trials = 3, 2.0, 0.2, 300
        full = oracle.full_value()
        optimum = brute_force(oracle, k).value
        failures = 0
        for seed in range(trials):
            result = min_or_max(oracle, k, beta, epsilon, seed)
            by_value = result.value >= optimum / beta - 1e-9
            by_residual = result.residual <= beta * (full - optimum) + 1e-9
            if not (by_value or by_residual):
                failures += 1
        assert failures / trials <= _allowed_failures(epsilon, trials)


class TestBestSubsetExact:
    def test_owa_single_item(self, oracle_b: ValueOracle) -> None:
        result = best_subset_exact(oracle_b, 1e-6, 0, 3, 2.0)
        assert result.found is True
        assert result.k == 1
        assert result.chosen == [1]
        assert result.mode == SolveMode.EXACT
        assert result.guarantee is None

    def test_cover_pair(self, oracle_a: ValueOracle) -> None:
        result = best_subset_exact(oracle_a, 1e-6, 4, 3, 2.0)
        assert result.found is True
        assert result.k == 2
        assert result.chosen == [0, 2]
        # K = 1 spends ceil(-ln eps * 2) runs before K = 2 succeeds.
        assert result.runs == exact_run_count(2.0, 1, 1e-6) + exact_run_count(2.0, 2, 1e-6)

    def test_zero_function(self, zero_oracle: ValueOracle) -> None:
        result = best_subset_exact(zero_oracle, 0.1, 0, 3, 1.0)
        assert result.found is True
        assert result.k == 1
        assert len(result.chosen) == 1

    def test_not_found(self, oracle_a: ValueOracle) -> None:
        result = best_subset_exact(oracle_a, 0.05, 0, 1, 2.0)
        assert result.found is False
        assert result.value == 2.0
        assert result.residual == 2.0

    def test_run_budget_across_levels(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(RunBudgetError):
            best_subset_exact(oracle_a, 1e-6, 0, 3, 2.0, run_budget=40)

    def test_k_max_validation(self, oracle_a: ValueOracle) -> None:
        with pytest.raises(InvalidParamsError):
            best_subset_exact(oracle_a, 0.1, 0, 0, 2.0)

    def test_matches_minimum_size(self) -> None:
        trials, hits = 100, 0
        for seed in range(trials):
            oracle, structural = build_oracle(gen_cover(6, 5, 2, seed=seed, weights="unit"))
            assert structural.at_most_p is not None
            smallest = min_exact_size(oracle).k
            result = best_subset_exact(oracle, 0.1, seed, oracle.size, structural.at_most_p)
            if result.found and result.k == smallest:
                hits += 1
        assert hits >= 85


class TestFeasibility:
    def test_value_matches_chosen(self, oracle_a: ValueOracle) -> None:
        results = [
            brute_force(oracle_a, 2),
            greedy(oracle_a, 2),
            preselect_enumerate(oracle_a, SchemeParams(k=2, beta=0.5, p=2.0)),
            randomized_min(oracle_a, SchemeParams(k=2, beta=2.0, p=2.0), 1),
        ]
        for result in results:
            assert len(result.chosen) <= result.k
            assert result.value == oracle_a.evaluate(result.mask)
