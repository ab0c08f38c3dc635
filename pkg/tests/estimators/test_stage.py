import math
from unittest import TestCase

import numpy as np

from tsalloc.dataset import single_channel_instance
from tsalloc.estimators import (
    FeasibilityMarginError,
    constraint_error,
    revenue_error,
    stage_params,
    union_log_term,
)
from tsalloc.offline import solve_expected
from tsalloc.online import make_stage_schedule

from ..utils import covering_instance


class TestErrorTerms(TestCase):
    def test_constraint_error(self):
        value = constraint_error(0.001, T=4, t_r=1, n_resources=1, delta=0.05)
        self.assertAlmostEqual(value, math.sqrt(0.016 * math.log(60)), delta=1e-15)
        self.assertAlmostEqual(value, 0.25595, delta=5e-6)
        self.assertAlmostEqual(math.log1p(value), 0.22789, delta=5e-6)

    def test_inverse_square_root(self):
        for t_r in (10, 100, 1000):
            coarse = constraint_error(0.001, 4000, t_r, 2, 0.01)
            fine = constraint_error(0.001, 4000, 4 * t_r, 2, 0.01)
            self.assertAlmostEqual(fine, coarse / 2, delta=1e-15)

    def test_revenue_error(self):
        expected = math.sqrt(4 * 1000 * union_log_term(2, 0.1) * 2.0 / (500.0 * 100))
        self.assertAlmostEqual(revenue_error(500.0, 2.0, 1000, 100, 2, 0.1), expected, delta=1e-15)


class TestStageParams(TestCase):
    def setUp(self):
        self.epsilon = 0.25
        self.inst = single_channel_instance(T=1600)
        self.schedule = make_stage_schedule(self.epsilon, 1600)
        self.W_eps = solve_expected(self.inst, self.epsilon).W_beta

    def test_exact_estimate_without_error(self):
        t_prev = self.schedule.stage_size(-1)
        params = stage_params(
            0, self.schedule, t_prev / 1600 * self.W_eps, 0.8, self.epsilon, 0.0, self.schedule.delta, self.inst
        )
        self.assertEqual(params.eps_x_prev, 0.0)
        self.assertEqual(params.eps_x, 0.0)
        self.assertAlmostEqual(params.Z_r, self.W_eps, delta=1e-9)
        np.testing.assert_allclose(params.c1k, [0.0])
        self.assertAlmostEqual(params.drift_x, union_log_term(1, self.schedule.delta) / params.t_r)
        self.assertAlmostEqual(params.init_log_phi, -(params.t_r - 1) * params.drift_x)

    def test_exact_estimate_with_error(self):
        gamma1 = 1 / 790
        t_prev = self.schedule.stage_size(0)
        xi = 0.8
        params = stage_params(
            1, self.schedule, t_prev / 1600 * self.W_eps, xi, self.epsilon, gamma1, self.schedule.delta, self.inst
        )
        eps_x_prev = constraint_error(gamma1, 1600, t_prev, 1, self.schedule.delta)
        self.assertAlmostEqual(params.eps_x_prev, eps_x_prev, delta=1e-15)
        self.assertAlmostEqual(
            params.Z_r, self.W_eps / (1 + (2 + 1 / (xi - self.epsilon)) * eps_x_prev), delta=1e-9
        )
        self.assertEqual(params.t_r, 800)
        self.assertAlmostEqual(params.eps_x, constraint_error(gamma1, 1600, 800, 1, self.schedule.delta))
        np.testing.assert_allclose(params.c1k, [math.log1p(params.eps_x)])
        self.assertAlmostEqual(params.c2, math.log1p(params.eps_y))
        self.assertAlmostEqual(params.drift_x, params.eps_x ** 2 / (4 * 1600 * gamma1))
        self.assertAlmostEqual(params.init_log_psi, -(params.t_r - 1) * params.drift_y)

    def test_targets(self):
        inst = covering_instance(T=1600)
        W_prev = 100.0
        params = stage_params(0, self.schedule, W_prev, 0.8, self.epsilon, 1 / 1000, self.schedule.delta, inst)
        np.testing.assert_allclose(params.upper_target, (1 + params.eps_x) * inst.U / 1600)
        lower = inst.a_bar - (1 + params.eps_x) * ((1 - self.epsilon) * 1600 * inst.a_bar - inst.L) / 1600
        np.testing.assert_allclose(params.lower_target, lower)
        self.assertAlmostEqual(params.revenue_target, (1 - params.eps_y) * params.Z_r / 1600)
        self.assertEqual(params.to_dict()["c1k"], params.c1k.tolist())

    def test_invalid_arguments(self):
        args = dict(schedule=self.schedule, epsilon=self.epsilon, delta=self.schedule.delta, inst=self.inst)
        with self.assertRaisesRegex(FeasibilityMarginError, "feasibility margin exhausted"):
            stage_params(0, W_prev=10.0, xi=0.25, gamma1=0.001, **args)
        with self.assertRaises(ValueError):
            stage_params(0, W_prev=0.0, xi=0.8, gamma1=0.001, **args)
        with self.assertRaises(ValueError):
            stage_params(0, W_prev=10.0, xi=0.8, gamma1=-1.0, **args)
        with self.assertRaises(ValueError):
            stage_params(self.schedule.l, W_prev=10.0, xi=0.8, gamma1=0.001, **args)
