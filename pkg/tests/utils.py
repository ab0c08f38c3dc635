import itertools
from fractions import Fraction

import numpy as np

from tsalloc.dataset import Instance, RandomInstanceGenerator


def one_type_instance(T=1000, L=0.0, U=None):
    """One type, one serving channel with revenue 1 and consumption 1."""
    return Instance.with_null_channel(
        p=[1.0], w=[[1.0]], a=[[[1.0]]], L=[L], U=[T if U is None else U], T=T
    )


def covering_instance(T=1000, lower=0.1, upper=0.9):
    """K=2, two equally likely types; ``c3`` consumes both resources at a lower revenue.

    L = lower T and U = upper T on both resources, so the measure of feasibility is
    ``upper - lower``, 0.8 by default.
    """
    w = [[1.0, 1.0], [1.0, 1.0], [0.6, 0.6]]
    a = [
        [[1.0, 0.0], [1.0, 0.0]],
        [[0.0, 1.0], [0.0, 1.0]],
        [[1.0, 1.0], [1.0, 1.0]],
    ]
    return Instance.with_null_channel(
        p=[0.5, 0.5],
        w=w,
        a=a,
        L=[lower * T, lower * T],
        U=[upper * T, upper * T],
        T=T,
        channels=["c1", "c2", "c3"],
    )


def generated_instances(n, **kwargs):
    generator = RandomInstanceGenerator(**kwargs)
    return [generator.generate(seed) for seed in range(n)]


def random_packing_lp(rng, n_vars=5, n_rows=5):
    """``max c.x  s.t.  A x <= b, x >= 0`` with positive ``A``: feasible at 0 and bounded."""
    A = rng.uniform(0.1, 1.0, size=(n_rows, n_vars))
    b = rng.uniform(1.0, 2.0, size=n_rows)
    c = rng.uniform(-1.0, 1.0, size=n_vars)
    return c, A, b


def vertex_enumeration_max(c, A, b):
    """Best vertex of ``{A x <= b, x >= 0}`` by solving every square active set."""
    n_rows, n_vars = A.shape
    G = np.vstack([A, -np.eye(n_vars)])
    h = np.concatenate([b, np.zeros(n_vars)])
    best = -np.inf
    for active in itertools.combinations(range(n_rows + n_vars), n_vars):
        M = G[list(active)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, h[list(active)])
        if np.all(G @ x <= h + 1e-9):
            best = max(best, float(c @ x))
    return best


def exact_sums(inst, types, decisions):
    """Revenue and consumption summed in rational arithmetic."""
    revenue = sum((Fraction(inst.w[i, j]) for i, j in zip(decisions, types)), Fraction(0))
    consumption = [
        sum((Fraction(inst.a[i, j, k]) for i, j in zip(decisions, types)), Fraction(0))
        for k in range(inst.n_resources)
    ]
    return float(revenue), [float(value) for value in consumption]


def replay_log_potentials(
    inst,
    types,
    decisions,
    c1k,
    c2,
    upper_target,
    lower_target,
    revenue_target,
    drift_x=0.0,
    drift_y=0.0,
    init_log_phi=0.0,
    init_log_psi=0.0,
):
    """Log potentials before the first step and after each step, from the update rules.

    Capacity: ``+ c1k (a - upper) + drift_x``; covering: ``+ c1k (lower - a) + drift_x``;
    revenue: ``+ c2 (revenue_target - w) + drift_y``.
    """
    types = np.asarray(types)
    decisions = np.asarray(decisions)
    used = inst.a[decisions, types, :]
    earned = inst.w[decisions, types]
    phi = init_log_phi + np.cumsum(c1k * (used - upper_target) + drift_x, axis=0)
    varphi = init_log_phi + np.cumsum(c1k * (lower_target - used) + drift_x, axis=0)
    psi = init_log_psi + np.cumsum(c2 * (revenue_target - earned) + drift_y)
    steps = np.hstack([phi, varphi, psi[:, None]])
    K = inst.n_resources
    start = np.concatenate([np.full(2 * K, init_log_phi), [init_log_psi]])
    return np.vstack([start, steps])


def channel_scores(inst, j, log_potentials, c1k, c2, upper_target, lower_target, revenue_target):
    """Three-term score of every channel, evaluated term by term with a max shift."""
    K = inst.n_resources
    scores = []
    for i in range(inst.n_channels):
        exponents = np.concatenate(
            [
                log_potentials[:K] + c1k * (inst.a[i, j] - upper_target),
                log_potentials[K : 2 * K] + c1k * (lower_target - inst.a[i, j]),
                [log_potentials[2 * K] + c2 * (revenue_target - inst.w[i, j])],
            ]
        )
        top = exponents.max()
        scores.append(top + np.log(np.sum(np.exp(exponents - top))))
    return np.array(scores)


def greedy_violations(inst, types, decisions, trajectory, rates_and_targets, rtol=1e-12):
    """Steps whose recorded channel is not a minimizer of the score or ties with a lower index."""
    violations = []
    for s, (j, chosen) in enumerate(zip(types, decisions)):
        scores = channel_scores(inst, j, trajectory[s], **rates_and_targets)
        best = scores.min()
        tolerance = rtol * max(1.0, abs(best))
        not_minimal = scores[chosen] > best + tolerance
        tied_below = np.any(np.abs(scores[:chosen] - scores[chosen]) <= tolerance)
        if not_minimal or tied_below:
            violations.append(s)
    return violations
