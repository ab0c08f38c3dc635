from unittest import TestCase

import numpy as np

from tsalloc.dataset import RandomInstanceGenerator, sample_stream, single_channel_instance
from tsalloc.estimators import constraint_error, objective_estimator
from tsalloc.lp import LpStatus
from tsalloc.offline import compute_gammas, measure_of_feasibility, solve_expected
from tsalloc.online import make_stage_schedule

from ..utils import covering_instance


class TestObjectiveEstimator(TestCase):
    def test_deterministic_single_type(self):
        inst = single_channel_instance(T=1000)
        W_beta = solve_expected(inst, 0.1).W_beta
        for t_r in (1, 100, 250, 1000):
            estimate = objective_estimator(np.zeros(t_r, dtype=int), t_r, 0.1, inst)
            self.assertTrue(estimate.feasible)
            self.assertAlmostEqual(estimate.W_r, t_r / inst.T * W_beta, delta=1e-8)

    def test_balanced_sample_is_a_scaled_copy(self):
        inst = covering_instance(T=1000)
        requests = np.repeat([0, 1], 100)
        for beta in (0.0, 0.25, 0.5):
            estimate = objective_estimator(requests, 200, beta, inst)
            expected = solve_expected(inst, beta)
            self.assertAlmostEqual(estimate.W_r, 0.2 * expected.W_beta, delta=1e-8)

    def test_infeasible_sample(self):
        # covering asks for 1.05 t_r units, more than t_r requests can consume
        inst = covering_instance(T=1000)
        estimate = objective_estimator(np.zeros(10, dtype=int), 10, 0.95, inst)
        self.assertEqual(estimate.status, LpStatus.INFEASIBLE)
        self.assertTrue(np.isnan(estimate.W_r))

    def test_invalid_requests(self):
        inst = covering_instance(T=1000)
        with self.assertRaises(ValueError):
            objective_estimator([0, 1], 3, 0.0, inst)
        with self.assertRaises(ValueError):
            objective_estimator([0, 2], 2, 0.0, inst)
        with self.assertRaises(ValueError):
            objective_estimator([], 0, 0.0, inst)


def fraction_in_band(inst, epsilon, n_trials):
    """Share of quarter-horizon samples whose estimate lies in the stage error band around ``W_eps``."""
    T = inst.T
    schedule = make_stage_schedule(epsilon, T)
    gammas = compute_gammas(inst, epsilon)
    assert np.isfinite(gammas.gamma1_effective)
    xi_star = measure_of_feasibility(inst).xi_star
    W_eps = solve_expected(inst, epsilon).W_beta

    t_r = T // 4
    eps_x = constraint_error(
        gammas.gamma1_effective, T, t_r, inst.n_resources, schedule.delta
    )
    width = (2 + 1 / (xi_star - epsilon)) * eps_x
    inside = 0
    for seed in range(n_trials):
        requests = sample_stream(inst, seed).segment(0, t_r)
        estimate = objective_estimator(requests, t_r, epsilon, inst)
        if estimate.feasible:
            ratio = estimate.W_r / (t_r / T * W_eps)
            inside += 1 - width <= ratio <= 1 + width
    return inside / n_trials, schedule.delta


def test_concentration_band(monte_carlo):
    inst = covering_instance(T=4000)
    inside, delta = fraction_in_band(inst, 0.25, 500 if monte_carlo else 100)
    assert inside >= 1 - 2 * delta


def test_concentration_band_on_generated_instance(monte_carlo):
    epsilon = 0.25
    T, n_trials = (200000, 300) if monte_carlo else (20000, 60)
    generator = RandomInstanceGenerator(n_resources=2, n_types=4, n_channels=2, T=T, lower_margin=0.4)
    inst = generator.generate(0).instance
    assert measure_of_feasibility(inst).xi_star > epsilon
    inside, delta = fraction_in_band(inst, epsilon, n_trials)
    assert inside >= 1 - 2 * delta
