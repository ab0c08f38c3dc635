import logging
import math
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from tsalloc.dataset.instance import Instance
from tsalloc.offline.expected import measure_of_feasibility, solve_expected, tau_of

logger = logging.getLogger(__name__)


def _ratio(numerator: np.ndarray, denominator: np.ndarray) -> np.ndarray:
    """``numerator / denominator`` with non-positive denominators mapped to ``inf``."""
    numerator = np.broadcast_to(np.asarray(numerator, dtype=np.float64), np.shape(denominator))
    out = np.full(np.shape(denominator), np.inf)
    positive = denominator > 0
    out[positive] = numerator[positive] / denominator[positive]
    return out


def tau1_of(epsilon: float) -> float:
    """``sqrt(eps) / (1 - sqrt(eps))``, the extra lift the staged algorithms are analysed with."""
    root = math.sqrt(epsilon)
    return root / (1.0 - root)


def regime_threshold(epsilon: float, n_resources: int, c: float = 1.0) -> float:
    """``c * eps^2 / ln(K / eps)``."""
    return c * epsilon ** 2 / math.log(n_resources / epsilon)


@dataclass(frozen=True)
class GammaReport:
    """Largest single-request shares of the bounds and of the revenue benchmark.

    :param gamma: Governs the policy-following and potential algorithms, uses ``W_tau``.
    :param gamma1: Governs the staged algorithm, uses ``W_{eps + tau1}``; ``nan``
        when that expected instance is infeasible.
    :param gamma1_effective: ``gamma1``, or the same maximum with the revenue term
        taken at ``beta = min(eps + tau1, xi*)`` when ``gamma1`` is undefined.
    :param gamma2: Governs the feasibility estimator, bounds terms only.
    :param within_regime: ``gamma``, ``gamma1_effective`` and ``gamma2`` are all
        at most ``threshold``.
    """

    epsilon: float
    gamma: float
    gamma1: float
    gamma2: float
    gamma1_effective: float
    threshold: float
    within_regime: bool
    W_tau: float = np.nan
    diagnostics: Tuple[str, ...] = field(default=())

    @property
    def gamma1_defined(self) -> bool:
        return not math.isnan(self.gamma1)


def compute_gammas(inst: Instance, epsilon: float, c: float = 1.0) -> GammaReport:
    """Evaluates ``gamma``, ``gamma1`` and ``gamma2`` for ``inst`` at ``epsilon``.

    :param c: Constant in the regime threshold ``c * eps^2 / ln(K / eps)``.
    """
    tau = tau_of(epsilon)
    tau1 = tau1_of(epsilon)
    T, a_bar, w_bar = inst.T, inst.a_bar, inst.w_bar
    diagnostics = []

    capacity_terms = _ratio(a_bar, inst.U)
    cover_terms = _ratio(a_bar, T * a_bar - inst.L)
    cover_terms_1 = _ratio(a_bar, (1.0 - epsilon) * T * a_bar - inst.L)
    gamma2 = float(max(capacity_terms.max(), cover_terms.max()))

    lifted = solve_expected(inst, tau)
    if lifted.feasible and lifted.W_beta > 0:
        W_tau = lifted.W_beta
        gamma = float(max(gamma2, w_bar / W_tau))
    else:
        W_tau = np.nan
        gamma = np.nan
        diagnostics.append("E(tau) infeasible at tau={:.6g}; gamma undefined".format(tau))

    bounds_1 = float(max(capacity_terms.max(), cover_terms_1.max()))
    lifted_1 = solve_expected(inst, epsilon + tau1)
    if lifted_1.feasible and lifted_1.W_beta > 0:
        gamma1 = float(max(bounds_1, w_bar / lifted_1.W_beta))
        gamma1_effective = gamma1
    else:
        gamma1 = np.nan
        measure = measure_of_feasibility(inst)
        beta = min(epsilon + tau1, measure.xi_star) if measure.feasible else np.nan
        fallback = solve_expected(inst, beta) if measure.feasible else None
        if fallback is not None and fallback.feasible and fallback.W_beta > 0:
            gamma1_effective = float(max(bounds_1, w_bar / fallback.W_beta))
        else:
            gamma1_effective = np.nan
        message = (
            "E(eps + tau1) infeasible at beta={:.6g}; gamma1 undefined, "
            "revenue term taken at beta={:.6g}".format(epsilon + tau1, beta)
        )
        diagnostics.append(message)
        logger.warning(message)

    threshold = regime_threshold(epsilon, inst.n_resources, c)
    values = np.array([gamma, gamma1_effective, gamma2])
    within_regime = bool(np.all(np.isfinite(values)) and np.all(values <= threshold))
    return GammaReport(
        epsilon=epsilon,
        gamma=gamma,
        gamma1=gamma1,
        gamma2=gamma2,
        gamma1_effective=gamma1_effective,
        threshold=threshold,
        within_regime=within_regime,
        W_tau=W_tau,
        diagnostics=tuple(diagnostics),
    )
