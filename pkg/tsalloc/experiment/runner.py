import logging
import math
import multiprocessing
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd
import tqdm

from tsalloc._settings import get_verbosity, set_verbosity
from tsalloc.dataset.instance import Instance
from tsalloc.dataset.stream import sample_stream
from tsalloc.experiment.config import ExperimentConfig
from tsalloc.offline.expected import measure_of_feasibility, solve_expected, tau_of
from tsalloc.offline.factor import factor_revealing_t, sensitivity_check
from tsalloc.offline.gammas import compute_gammas
from tsalloc.online import run_algA, run_algA1, run_algA2, run_ptilde

logger = logging.getLogger(__name__)

BASE_COLUMNS = ["seed", "revenue", "ratio", "feasible", "n_served", "status", "failure"]


class OracleInfeasibleError(RuntimeError):
    """Raised when an offline oracle the experiment depends on has no solution."""


@dataclass
class MetricsReport:
    """Aggregates of an experiment and one row per trial, sorted by seed."""

    aggregates: Dict
    trials: pd.DataFrame = field(default_factory=pd.DataFrame)

    @property
    def n_trials(self) -> int:
        return len(self.trials)


def trial_columns(n_resources: int) -> List[str]:
    return (
        BASE_COLUMNS
        + ["consumption_%d" % k for k in range(n_resources)]
        + ["lower_violated_%d" % k for k in range(n_resources)]
        + ["upper_violated_%d" % k for k in range(n_resources)]
    )


def compute_oracles(inst: Instance, epsilon: float, gamma_c: float = 1.0) -> Dict:
    """Offline benchmarks every ratio and algorithm parameter is taken from.

    :raises OracleInfeasibleError: when the expected instance is infeasible.
    """
    expected = solve_expected(inst, 0.0)
    if not expected.feasible:
        raise OracleInfeasibleError("the expected instance is {}".format(expected.status.value))
    measure = measure_of_feasibility(inst)
    tau = tau_of(epsilon)
    gammas = compute_gammas(inst, epsilon, c=gamma_c)
    oracles = dict(
        W_E=expected.W_beta,
        xi_star=measure.xi_star,
        tau=tau,
        W_tau=gammas.W_tau,
        gamma=gammas.gamma,
        gamma1=gammas.gamma1,
        gamma1_effective=gammas.gamma1_effective,
        gamma2=gammas.gamma2,
        threshold=gammas.threshold,
        within_regime=gammas.within_regime,
        t_star=np.nan,
        sensitivity_ok=None,
    )
    if measure.strongly_feasible(tau):
        oracles["t_star"] = factor_revealing_t(inst, epsilon)
        oracles["sensitivity_ok"] = sensitivity_check(inst, epsilon).bound_ok
    else:
        logger.info("xi*={} does not exceed tau={:.6g}; t* not computed".format(measure.xi_star, tau))
    for diagnostic in gammas.diagnostics:
        logger.info(diagnostic)
    logger.info(
        "W_E={:.6g}, xi*={:.6g}, W_tau={:.6g}, t*={:.6g}".format(
            oracles["W_E"], oracles["xi_star"], oracles["W_tau"], oracles["t_star"]
        )
    )
    return oracles


def algorithm_parameters(config: ExperimentConfig, oracles: Dict) -> Dict:
    """Arguments of the configured algorithm, from the config or the oracles.

    :raises OracleInfeasibleError: when a required oracle value is missing.
    """
    epsilon = config.epsilon
    if config.algorithm == "ptilde":
        if not oracles["xi_star"] > oracles["tau"]:
            raise OracleInfeasibleError(
                "strong feasibility violated: xi*={} <= tau={:.6g}".format(
                    oracles["xi_star"], oracles["tau"]
                )
            )
        return dict(epsilon=epsilon)
    if config.algorithm == "algA":
        if not oracles["W_tau"] > 0:
            raise OracleInfeasibleError("W_tau={} is not positive".format(oracles["W_tau"]))
        return dict(epsilon=epsilon, W_tau=oracles["W_tau"])

    gamma1 = config.gamma1 if config.gamma1 is not None else oracles["gamma1_effective"]
    if not (np.isfinite(gamma1) and gamma1 > 0):
        raise OracleInfeasibleError("gamma1 is undefined for this instance")
    if config.algorithm == "algA1":
        xi = config.xi if config.xi is not None else oracles["xi_star"]
        if not xi > epsilon:
            raise OracleInfeasibleError(
                "feasibility margin exhausted: xi={} <= epsilon={}".format(xi, epsilon)
            )
        return dict(epsilon=epsilon, gamma1=gamma1, xi=xi, warm_start=config.warm_start)
    gamma2 = config.gamma2 if config.gamma2 is not None else oracles["gamma2"]
    if not (np.isfinite(gamma2) and gamma2 > 0):
        raise OracleInfeasibleError("gamma2 is undefined for this instance")
    return dict(epsilon=epsilon, gamma1=gamma1, gamma2=gamma2, warm_start=config.warm_start)


_RUNNERS = {"ptilde": run_ptilde, "algA": run_algA, "algA1": run_algA1, "algA2": run_algA2}


def run_trial(inst: Instance, algorithm: str, parameters: Dict, W_E: float, seed: int) -> Dict:
    """One trial on the stream drawn with ``seed``; depends on nothing else."""
    stream = sample_stream(inst, seed)
    trace = _RUNNERS[algorithm](inst, stream, **parameters)
    outcome = trace.outcome
    row = dict(
        seed=seed,
        revenue=outcome.revenue,
        ratio=outcome.revenue / W_E if W_E > 0 else np.nan,
        feasible=outcome.feasible,
        n_served=outcome.n_served,
        status=trace.status,
        failure=trace.failure or "",
    )
    for k in range(inst.n_resources):
        row["consumption_%d" % k] = float(outcome.consumption[k])
    for k in range(inst.n_resources):
        row["lower_violated_%d" % k] = not bool(outcome.lower_ok[k])
    for k in range(inst.n_resources):
        row["upper_violated_%d" % k] = not bool(outcome.upper_ok[k])
    return row


def _run_trial_star(args):
    return run_trial(*args)


def run_trials(
    inst: Instance,
    algorithm: str,
    parameters: Dict,
    W_E: float,
    seeds: List[int],
    workers: int = 1,
    show_progress: Optional[bool] = None,
) -> List[Dict]:
    """Runs one trial per seed, in worker processes when ``workers > 1``.

    Rows come back sorted by seed whatever order the workers finish in.
    """
    if show_progress is None:
        show_progress = logger.getEffectiveLevel() <= logging.INFO
    jobs = [(inst, algorithm, parameters, W_E, seed) for seed in seeds]
    pbar = tqdm.tqdm(total=len(jobs), desc=algorithm, disable=not show_progress)
    rows = []
    if workers > 1 and len(jobs) > 1:
        context = multiprocessing.get_context("spawn")
        logger.debug("Starting {} worker processes".format(workers))
        with context.Pool(
            processes=workers, initializer=set_verbosity, initargs=(get_verbosity(),)
        ) as pool:
            for row in pool.imap_unordered(_run_trial_star, jobs):
                rows.append(row)
                pbar.update()
    else:
        for job in jobs:
            rows.append(run_trial(*job))
            pbar.update()
    pbar.close()
    return sorted(rows, key=lambda row: row["seed"])


def aggregate(rows: List[Dict], n_trials: int) -> Dict:
    """Order-independent summary of trial rows."""
    if not rows:
        return dict(
            mean_revenue=np.nan,
            mean_ratio=np.nan,
            median_ratio=np.nan,
            infeasibility_frequency=np.nan,
            failure_probability=np.nan,
        )
    revenues = sorted(row["revenue"] for row in rows)
    ratios = sorted(row["ratio"] for row in rows)
    return dict(
        mean_revenue=math.fsum(revenues) / len(rows),
        mean_ratio=math.fsum(ratios) / len(rows),
        median_ratio=float(np.median(ratios)),
        infeasibility_frequency=sum(not row["feasible"] for row in rows) / n_trials,
        failure_probability=sum(row["status"] == "failed" for row in rows) / n_trials,
    )


def run_experiment(config: ExperimentConfig, instance: Instance = None) -> MetricsReport:
    """Runs ``config.trials`` trials with seeds ``seed .. seed + trials - 1``.

    :param instance: Use this instance instead of loading the configured one.
    :raises ConfigError: for an invalid configuration or instance.
    :raises OracleInfeasibleError: when the offline oracles admit no benchmark.
    """
    config.validate()
    inst = config.load_instance() if instance is None else instance
    oracles = compute_oracles(inst, config.epsilon, config.gamma_c)
    aggregates = dict(
        algorithm=config.algorithm,
        epsilon=config.epsilon,
        trials=config.trials,
        seed=config.seed,
        T=inst.T,
        K=inst.n_resources,
        J=inst.n_types,
    )
    aggregates.update(oracles)

    if config.algorithm == "offline-only":
        aggregates.update(aggregate([], config.trials))
        return MetricsReport(aggregates=aggregates, trials=pd.DataFrame(columns=trial_columns(inst.n_resources)))

    parameters = algorithm_parameters(config, oracles)
    aggregates.update({"param_" + k: v for k, v in parameters.items()})
    seeds = list(range(config.seed, config.seed + config.trials))
    rows = run_trials(inst, config.algorithm, parameters, oracles["W_E"], seeds, workers=config.workers)
    aggregates.update(aggregate(rows, config.trials))
    logger.info(
        "{}: mean ratio {:.4f}, infeasible {:.3f}, failed {:.3f} over {} trials".format(
            config.algorithm,
            aggregates["mean_ratio"],
            aggregates["infeasibility_frequency"],
            aggregates["failure_probability"],
            config.trials,
        )
    )
    trials = pd.DataFrame(rows, columns=trial_columns(inst.n_resources))
    return MetricsReport(aggregates=aggregates, trials=trials)
