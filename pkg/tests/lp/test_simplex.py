from unittest import TestCase

import numpy as np
import pytest
from scipy.optimize import linprog

from tsalloc.lp import (
    IterationLimitError,
    LpProblem,
    LpStatus,
    complementary_slackness,
    duality_gap,
    primal_residual,
    solve,
    solve_dense,
)

from ..utils import random_packing_lp, vertex_enumeration_max


def assert_optimality_certificates(test, problem, solution):
    test.assertEqual(solution.status, LpStatus.OPTIMAL)
    test.assertLessEqual(
        primal_residual(problem, solution.x), 1e-8 * (1 + np.abs(problem.b).max(initial=0.0))
    )
    test.assertLessEqual(duality_gap(solution), 1e-6 * (1 + abs(solution.objective)))
    test.assertLessEqual(complementary_slackness(problem, solution).max(initial=0.0), 1e-6)


class TestSolveExamples(TestCase):
    def test_single_bound(self):
        solution = solve_dense(c=[1.0], A=[[1.0]], senses=["<="], b=[1.0])
        self.assertEqual(solution.status, LpStatus.OPTIMAL)
        np.testing.assert_allclose(solution.x, [1.0])
        self.assertAlmostEqual(solution.objective, 1.0)
        self.assertAlmostEqual(solution.y[0], 1.0)

    def test_empty_box(self):
        solution = solve_dense(c=[1.0], A=[[1.0], [1.0]], senses=["<=", ">="], b=[1.0, 2.0])
        self.assertEqual(solution.status, LpStatus.INFEASIBLE)
        self.assertFalse(solution.optimal)

    def test_unbounded(self):
        solution = solve_dense(c=[1.0, 0.0], A=[[1.0, -1.0]], senses=["<="], b=[1.0])
        self.assertEqual(solution.status, LpStatus.UNBOUNDED)

    def test_equality_and_negative_rhs(self):
        # min x + 2y  s.t.  x + y = 3,  -x <= -1
        problem = LpProblem(c=[1.0, 2.0], A=[[1.0, 1.0], [-1.0, 0.0]], senses=["=", "<="], b=[3.0, -1.0], sense="min")
        solution = solve(problem)
        np.testing.assert_allclose(solution.x, [3.0, 0.0], atol=1e-12)
        self.assertAlmostEqual(solution.objective, 3.0)
        assert_optimality_certificates(self, problem, solution)

    def test_dual_signs(self):
        # min x  s.t.  x >= 2: the covering row gets a non-negative multiplier
        solution = solve_dense(c=[1.0], A=[[1.0]], senses=[">="], b=[2.0], sense="min")
        self.assertAlmostEqual(solution.y[0], 1.0)
        # max -x  s.t.  x >= 2: the same row prices negatively in a max problem
        solution = solve_dense(c=[-1.0], A=[[1.0]], senses=[">="], b=[2.0], sense="max")
        self.assertAlmostEqual(solution.y[0], -1.0)

    def test_general_bounds(self):
        # max x - y  s.t.  x + y <= 4,  -1 <= x <= 2,  y free but y >= -3 through a row
        problem = LpProblem(
            c=[1.0, -1.0],
            A=[[1.0, 1.0], [0.0, 1.0]],
            senses=["<=", ">="],
            b=[4.0, -3.0],
            lower=[-1.0, -np.inf],
            upper=[2.0, np.inf],
        )
        solution = solve(problem)
        np.testing.assert_allclose(solution.x, [2.0, -3.0], atol=1e-12)
        self.assertAlmostEqual(solution.objective, 5.0)
        assert_optimality_certificates(self, problem, solution)

    def test_redundant_equalities(self):
        problem = LpProblem(
            c=[1.0, 1.0],
            A=[[1.0, 1.0], [2.0, 2.0], [1.0, 0.0]],
            senses=["=", "=", "<="],
            b=[1.0, 2.0, 0.25],
        )
        solution = solve(problem)
        self.assertAlmostEqual(solution.objective, 1.0)
        assert_optimality_certificates(self, problem, solution)

    def test_degenerate_cycling_example(self):
        # Beale's example cycles under the largest-coefficient rule
        c = [0.75, -150.0, 0.02, -6.0]
        A = [[0.25, -60.0, -0.04, 9.0], [0.5, -90.0, -0.02, 3.0], [0.0, 0.0, 1.0, 0.0]]
        problem = LpProblem(c=c, A=A, senses=["<="] * 3, b=[0.0, 0.0, 1.0])
        solution = solve(problem)
        self.assertAlmostEqual(solution.objective, 0.05)
        assert_optimality_certificates(self, problem, solution)

    def test_iteration_limit(self):
        c, A, b = random_packing_lp(np.random.RandomState(1))
        with self.assertRaises(IterationLimitError):
            solve(LpProblem(c=np.abs(c) + 1.0, A=A, senses=["<="] * 5, b=b), max_iter=0)

    def test_inconsistent_dimensions(self):
        with self.assertRaises(ValueError):
            LpProblem(c=[1.0, 2.0], A=[[1.0]], senses=["<="], b=[1.0])
        with self.assertRaises(ValueError):
            LpProblem(c=[1.0], A=[[np.nan]], senses=["<="], b=[1.0])
        with self.assertRaises(ValueError):
            LpProblem(c=[1.0], A=[[1.0]], senses=["<>"], b=[1.0])


class TestSolveAgainstOracles(TestCase):
    def test_vertex_enumeration(self):
        rng = np.random.RandomState(0)
        for _ in range(200):
            c, A, b = random_packing_lp(rng)
            problem = LpProblem(c=c, A=A, senses=["<="] * 5, b=b)
            solution = solve(problem)
            self.assertAlmostEqual(solution.objective, vertex_enumeration_max(c, A, b), delta=1e-7)
            assert_optimality_certificates(self, problem, solution)

    def test_linprog_mixed_senses(self):
        rng = np.random.RandomState(3)
        for _ in range(50):
            n_vars, n_rows = 6, 4
            A = rng.uniform(0.1, 1.0, size=(n_rows, n_vars))
            x0 = rng.uniform(0.0, 1.0, size=n_vars)
            activity = A @ x0
            senses = ["<=", ">=", "<=", "="]
            b = np.array([activity[0] + 0.5, activity[1] - 0.5, activity[2] + 0.1, activity[3]])
            c = rng.uniform(-1.0, 1.0, size=n_vars)
            upper = np.full(n_vars, 2.0)
            problem = LpProblem(c=c, A=A, senses=senses, b=b, upper=upper, sense="min")
            solution = solve(problem)
            reference = linprog(
                c,
                A_ub=np.vstack([A[0], -A[1], A[2]]),
                b_ub=[b[0], -b[1], b[2]],
                A_eq=A[3:],
                b_eq=b[3:],
                bounds=[(0.0, 2.0)] * n_vars,
            )
            self.assertTrue(reference.success)
            self.assertAlmostEqual(solution.objective, reference.fun, delta=1e-7)
            assert_optimality_certificates(self, problem, solution)

    def test_scaling_costs_keeps_basis(self):
        rng = np.random.RandomState(5)
        c, A, b = random_packing_lp(rng)
        problem = LpProblem(c=c, A=A, senses=["<="] * 5, b=b)
        scaled = LpProblem(c=7.5 * c, A=A, senses=["<="] * 5, b=b)
        self.assertEqual(solve(problem).basis, solve(scaled).basis)


@pytest.mark.parametrize("sense", ["max", "min"])
def test_reduced_costs_definition(sense):
    c, A, b = random_packing_lp(np.random.RandomState(2))
    problem = LpProblem(c=c, A=A, senses=["<="] * 5, b=b, sense=sense)
    solution = solve(problem)
    assert solution.optimal
    np.testing.assert_allclose(solution.reduced_costs, problem.c - A.T @ solution.y)
