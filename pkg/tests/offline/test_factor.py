from unittest import TestCase

import numpy as np

from tsalloc.dataset import single_channel_instance, tight_two_channel_instance
from tsalloc.offline import (
    StrongFeasibilityError,
    factor_revealing_t,
    measure_of_feasibility,
    sensitivity_check,
    tau_of,
)

from ..utils import generated_instances


class TestFactorRevealing(TestCase):
    def test_tight_instance(self):
        t_star = factor_revealing_t(tight_two_channel_instance(T=1000), 0.1)
        self.assertAlmostEqual(t_star, (1 / 9) / 0.5, delta=1e-8)

    def test_single_channel(self):
        t_star = factor_revealing_t(single_channel_instance(T=1000), 0.1)
        self.assertAlmostEqual(t_star, (1 / 9) / 0.8, delta=1e-8)

    def test_vanishes_with_epsilon(self):
        inst = tight_two_channel_instance(T=1000)
        values = [factor_revealing_t(inst, eps) for eps in (0.2, 0.1, 0.05, 0.01, 0.001)]
        self.assertTrue(np.all(np.diff(values) < 0))
        self.assertLess(values[-1], 0.01)

    def test_strong_feasibility_required(self):
        with self.assertRaisesRegex(StrongFeasibilityError, "strong feasibility violated"):
            factor_revealing_t(tight_two_channel_instance(T=1000), 0.4)

    def test_generated_instances(self):
        epsilon = 0.05
        tau = tau_of(epsilon)
        checked = 0
        for generated in generated_instances(100, n_resources=2, n_types=3, n_channels=2, T=1000):
            inst = generated.instance
            xi_star = measure_of_feasibility(inst).xi_star
            if xi_star <= tau:
                continue
            t_star = factor_revealing_t(inst, epsilon)
            self.assertLessEqual(t_star, tau / xi_star + 1e-8)
            check = sensitivity_check(inst, epsilon)
            self.assertLessEqual((1 - t_star) * check.W_E, check.W_tau + 1e-8 * check.W_E)
            checked += 1
        self.assertGreater(checked, 50)


class TestSensitivityCheck(TestCase):
    def test_tight_instance_attains_the_bound(self):
        inst = tight_two_channel_instance(T=1000)
        check = sensitivity_check(inst, 0.1)
        self.assertAlmostEqual(check.W_tau, (0.5 - 1 / 9) * 1000, delta=1e-8)
        self.assertTrue(check.bound_ok)
        bound = (1 - (1 / 9) / 0.5) * check.W_E
        self.assertAlmostEqual(check.W_tau, bound, delta=1e-8 * check.W_E)

    def test_single_channel_is_loose(self):
        check = sensitivity_check(single_channel_instance(T=1000), 0.1)
        self.assertAlmostEqual(check.W_tau, 1000.0, delta=1e-8)
        self.assertAlmostEqual(check.W_E, 1000.0, delta=1e-8)
        self.assertTrue(check.bound_ok)

    def test_generated_instances(self):
        epsilon = 0.05
        tau = tau_of(epsilon)
        for generated in generated_instances(100, n_resources=2, n_types=2, n_channels=3, T=1000):
            inst = generated.instance
            if measure_of_feasibility(inst).xi_star <= tau:
                continue
            self.assertTrue(sensitivity_check(inst, epsilon).bound_ok)

    def test_requires_margin(self):
        with self.assertRaises(StrongFeasibilityError):
            sensitivity_check(tight_two_channel_instance(T=1000), 0.4)
