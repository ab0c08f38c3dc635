from unittest import TestCase

import numpy as np

from tsalloc.dataset import RandomInstanceGenerator, sample_stream, stream_from_types
from tsalloc.estimators import objective_estimator
from tsalloc.offline import (
    EnumerationBudgetError,
    check_expectation_bound,
    offline_ilp_opt,
    offline_ilp_solve,
    sampled_relaxation,
)

from ..utils import one_type_instance


class TestOfflineIlp(TestCase):
    def test_serve_the_request(self):
        inst = one_type_instance(T=1, L=0.0, U=1.0)
        self.assertEqual(offline_ilp_opt(inst, stream_from_types([0])), 1.0)

    def test_covering_forces_service(self):
        inst = one_type_instance(T=2, L=2.0, U=2.0)
        optimum = offline_ilp_solve(inst, stream_from_types([0, 0]))
        self.assertEqual(optimum.revenue, 2.0)
        self.assertListEqual(optimum.decisions.tolist(), [1, 1])

    def test_no_feasible_assignment(self):
        inst = one_type_instance(T=2, L=3.0, U=3.0)
        optimum = offline_ilp_solve(inst, stream_from_types([0, 0]))
        self.assertEqual(optimum.revenue, -np.inf)
        self.assertFalse(optimum.feasible)

    def test_budget(self):
        inst = one_type_instance(T=30)
        with self.assertRaisesRegex(EnumerationBudgetError, "instance too large for enumeration"):
            offline_ilp_opt(inst, stream_from_types([0] * 30))

    def test_bounded_by_relaxation(self):
        generator = RandomInstanceGenerator(n_resources=2, n_types=2, n_channels=2, T=6)
        for seed in range(20):
            inst = generator.generate(seed).instance
            stream = sample_stream(inst, seed)
            relaxation = sampled_relaxation(inst, stream)
            revenue = offline_ilp_opt(inst, stream)
            if relaxation.optimal:
                self.assertLessEqual(revenue, relaxation.objective + 1e-9)
                aggregated = objective_estimator(stream.types, inst.T, 0.0, inst)
                self.assertAlmostEqual(aggregated.W_r, relaxation.objective, delta=1e-9)
            else:
                self.assertEqual(revenue, -np.inf)


def test_expectation_bound():
    generator = RandomInstanceGenerator(n_resources=2, n_types=2, n_channels=2, T=6)
    for seed in range(3):
        inst = generator.generate(seed).instance
        check = check_expectation_bound(inst, n_streams=2000, base_seed=100 * seed)
        assert check.holds
        assert check.mean <= check.W_E + 3 * check.standard_error
