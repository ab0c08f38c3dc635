"""Dense two-phase primal simplex with Bland's rule and basis duals."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
FEASIBILITY_TOL = 1e-9
RATIO_TOL = 1e-12

LE, GE, EQ = "<=", ">=", "="
_SENSES = {LE: LE, GE: GE, EQ: EQ, "==": EQ, "≤": LE, "≥": GE}


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


class IterationLimitError(RuntimeError):
    """Raised when the simplex method hits its iteration limit before terminating."""


@dataclass(frozen=True, eq=False)
class LpProblem:
    """A dense linear program ``opt c.x  s.t.  A x (senses) b,  lower <= x <= upper``.

    :param c: ``np.ndarray`` with shape (n_vars,).
    :param A: ``np.ndarray`` with shape (n_rows, n_vars), row-major dense.
    :param senses: One of ``"<="``, ``">="``, ``"="`` per row.
    :param b: ``np.ndarray`` with shape (n_rows,).
    :param lower: Variable lower bounds, ``-inf`` allowed. Default: zeros.
    :param upper: Variable upper bounds, ``inf`` allowed. Default: ``inf``.
    :param sense: ``"max"`` or ``"min"``.
    """

    c: np.ndarray
    A: np.ndarray
    senses: Tuple[str, ...]
    b: np.ndarray
    lower: np.ndarray = None
    upper: np.ndarray = None
    sense: str = "max"

    def __post_init__(self):
        c = np.array(self.c, dtype=np.float64).ravel()
        n = c.shape[0]
        A = np.array(self.A, dtype=np.float64)
        if A.size == 0:
            A = A.reshape((0, n))
        b = np.array(self.b, dtype=np.float64).ravel()
        if A.ndim != 2 or A.shape[1] != n or A.shape[0] != b.shape[0]:
            raise ValueError(
                "Inconsistent LP dimensions: c {}, A {}, b {}".format(
                    c.shape, A.shape, b.shape
                )
            )
        try:
            senses = tuple(_SENSES[s] for s in self.senses)
        except KeyError as error:
            raise ValueError("Unknown row sense {}".format(error))
        if len(senses) != b.shape[0]:
            raise ValueError("Need one sense per row")
        lower = np.zeros(n) if self.lower is None else np.array(self.lower, dtype=np.float64)
        upper = np.full(n, np.inf) if self.upper is None else np.array(self.upper, dtype=np.float64)
        if lower.shape != (n,) or upper.shape != (n,):
            raise ValueError("Bounds must have shape ({},)".format(n))
        for name, values in (("c", c), ("A", A), ("b", b)):
            if not np.all(np.isfinite(values)):
                raise ValueError("LP {} has non-finite entries".format(name))
        if np.any(np.isnan(lower)) or np.any(np.isnan(upper)) or np.any(lower == np.inf) or np.any(upper == -np.inf):
            raise ValueError("Invalid variable bounds")
        if self.sense not in ("max", "min"):
            raise ValueError("sense must be 'max' or 'min', got {}".format(self.sense))
        for name, value in (("c", c), ("A", A), ("b", b), ("lower", lower), ("upper", upper)):
            value.flags.writeable = False
            object.__setattr__(self, name, value)
        object.__setattr__(self, "senses", senses)

    @property
    def n_vars(self) -> int:
        return self.c.shape[0]

    @property
    def n_rows(self) -> int:
        return self.b.shape[0]


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Result of :func:`solve`.

    ``y`` holds one multiplier per row, signed so that ``>=`` rows of a ``min``
    problem (and ``<=`` rows of a ``max`` problem) get non-negative multipliers.
    ``reduced_costs`` is ``c - A^T y``.
    """

    status: LpStatus
    x: Optional[np.ndarray] = None
    y: Optional[np.ndarray] = None
    objective: float = np.nan
    dual_objective: float = np.nan
    reduced_costs: Optional[np.ndarray] = None
    basis: Tuple[int, ...] = field(default=())
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class _StandardForm:
    """``min cs.z  s.t.  As z = bs,  z >= 0`` equivalent of an :class:`LpProblem`.

    Original variables are recovered as ``x = shift + M z[:n_struct]``.
    """

    def __init__(self, problem: LpProblem):
        n = problem.n_vars
        lower, upper = problem.lower, problem.upper
        columns = []  # (original variable, sign)
        bound_rows = []  # (structural column, width)
        shift = np.zeros(n)
        for j in range(n):
            if np.isfinite(lower[j]):
                shift[j] = lower[j]
                columns.append((j, 1.0))
                if np.isfinite(upper[j]):
                    bound_rows.append((len(columns) - 1, upper[j] - lower[j]))
            elif np.isfinite(upper[j]):
                shift[j] = upper[j]
                columns.append((j, -1.0))
            else:
                columns.append((j, 1.0))
                columns.append((j, -1.0))
        n_struct = len(columns)
        M = np.zeros((n, n_struct))
        for col, (j, sign) in enumerate(columns):
            M[j, col] = sign

        m0 = problem.n_rows
        m = m0 + len(bound_rows)
        A = np.zeros((m, n_struct))
        A[:m0] = problem.A @ M
        b = np.empty(m)
        b[:m0] = problem.b - problem.A @ shift
        senses = list(problem.senses)
        for r, (col, width) in enumerate(bound_rows):
            A[m0 + r, col] = 1.0
            b[m0 + r] = width
            senses.append(LE)

        row_sign = np.where(b < 0, -1.0, 1.0)
        A *= row_sign[:, None]
        b *= row_sign
        flip = {LE: GE, GE: LE, EQ: EQ}
        senses = [flip[s] if sign < 0 else s for s, sign in zip(senses, row_sign)]

        n_slack = sum(s != EQ for s in senses)
        n_art = sum(s != LE for s in senses)
        A_full = np.zeros((m, n_struct + n_slack + n_art))
        A_full[:, :n_struct] = A
        basis = np.empty(m, dtype=np.int64)
        slack_col, art_col = n_struct, n_struct + n_slack
        for r, s in enumerate(senses):
            if s == LE:
                A_full[r, slack_col] = 1.0
                basis[r] = slack_col
                slack_col += 1
            elif s == GE:
                A_full[r, slack_col] = -1.0
                slack_col += 1
            if s != LE:
                A_full[r, art_col] = 1.0
                basis[r] = art_col
                art_col += 1

        c_min = problem.c if problem.sense == "min" else -problem.c
        cost = np.zeros(A_full.shape[1])
        cost[:n_struct] = c_min @ M

        self.M = M
        self.shift = shift
        self.n_struct = n_struct
        self.n_orig_rows = m0
        self.art_start = n_struct + n_slack
        self.A_full = A_full
        self.b = b
        self.row_sign = row_sign
        self.cost = cost
        self.basis = basis
        self.c_min = c_min


def _pivot(tab: np.ndarray, r: int, s: int):
    tab[r] /= tab[r, s]
    col = tab[:, s].copy()
    col[r] = 0.0
    tab -= np.outer(col, tab[r])
    rhs = tab[:-1, -1]
    rhs[(rhs < 0) & (rhs > -FEASIBILITY_TOL)] = 0.0


def _bland(tab: np.ndarray, basis: np.ndarray, n_cols: int, max_iter: int, iterations: int):
    """Runs primal simplex iterations in place; returns (status, iterations)."""
    m = tab.shape[0] - 1
    while True:
        candidates = np.flatnonzero(tab[-1, :n_cols] < -PIVOT_TOL)
        if candidates.size == 0:
            return LpStatus.OPTIMAL, iterations
        if iterations >= max_iter:
            raise IterationLimitError(
                "iteration limit of {} pivots reached".format(max_iter)
            )
        s = candidates[0]
        column = tab[:m, s]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return LpStatus.UNBOUNDED, iterations
        ratios = tab[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + RATIO_TOL * (1.0 + abs(best))]
        r = ties[np.argmin(basis[ties])]
        _pivot(tab, r, s)
        basis[r] = s
        iterations += 1


def solve(problem: LpProblem, max_iter: int = None) -> LpSolution:
    """Solves ``problem`` with the two-phase primal simplex method.

    Phase one minimizes the sum of artificial variables; artificials left in the
    basis at level zero are pivoted out or their (redundant) rows dropped.
    Entering and leaving variables follow Bland's smallest-index rule.

    :param problem: the LP to solve.
    :param max_iter: pivot budget over both phases. Default: ``50 * (rows + columns) + 1000``.
    :raises IterationLimitError: when the budget is exhausted.
    """
    form = _StandardForm(problem)
    m, n_total = form.A_full.shape
    if max_iter is None:
        max_iter = 50 * (m + n_total) + 1000

    tab = np.zeros((m + 1, n_total + 1))
    tab[:m, :n_total] = form.A_full
    tab[:m, -1] = form.b
    basis = form.basis.copy()
    iterations = 0

    # phase one
    art = basis >= form.art_start
    if np.any(art):
        tab[-1, form.art_start : n_total] = 1.0
        tab[-1] -= tab[:m][art].sum(axis=0)
        _, iterations = _bland(tab, basis, n_total, max_iter, iterations)
        infeasibility = -tab[-1, -1]
        if infeasibility > FEASIBILITY_TOL * (1.0 + np.abs(form.b).max(initial=0.0)):
            logger.debug(
                "LP infeasible: phase one residual {:.3e} after {} pivots".format(
                    infeasibility, iterations
                )
            )
            return LpSolution(status=LpStatus.INFEASIBLE, iterations=iterations)

    keep = np.ones(m, dtype=bool)
    for r in np.flatnonzero(basis >= form.art_start):
        row = tab[r, : form.art_start]
        nonzero = np.flatnonzero(np.abs(row) > PIVOT_TOL)
        if nonzero.size:
            _pivot(tab, r, nonzero[0])
            basis[r] = nonzero[0]
        else:
            keep[r] = False
    rows_kept = np.flatnonzero(keep)
    if rows_kept.size < m:
        logger.debug("Dropping {} redundant rows".format(m - rows_kept.size))
    n_cols = form.art_start
    tab = np.vstack([tab[rows_kept], tab[-1:]])
    tab = np.hstack([tab[:, :n_cols], tab[:, -1:]])
    basis = basis[rows_kept]

    # phase two
    cost = form.cost[:n_cols]
    c_basis = cost[basis]
    tab[-1, :n_cols] = cost - c_basis @ tab[:-1, :n_cols]
    tab[-1, -1] = -c_basis @ tab[:-1, -1]
    status, iterations = _bland(tab, basis, n_cols, max_iter, iterations)
    if status is LpStatus.UNBOUNDED:
        logger.debug("LP unbounded after {} pivots".format(iterations))
        return LpSolution(status=status, iterations=iterations)

    z = np.zeros(n_cols)
    z[basis] = tab[:-1, -1]
    x = form.shift + form.M @ z[: form.n_struct]

    # basis multipliers of the min-form problem
    y_std = np.zeros(m)
    if rows_kept.size:
        B = form.A_full[np.ix_(rows_kept, basis)]
        y_std[rows_kept] = np.linalg.solve(B.T, cost[basis])
    y_std *= form.row_sign
    y_min = y_std[: form.n_orig_rows]
    sign = 1.0 if problem.sense == "min" else -1.0
    y = sign * y_min
    reduced = problem.c - problem.A.T @ y
    dual_objective = problem.b @ y + _bound_terms(problem, sign * reduced, x) * sign
    objective = float(problem.c @ x)
    logger.debug(
        "LP optimal: objective {:.10g} after {} pivots".format(objective, iterations)
    )
    return LpSolution(
        status=LpStatus.OPTIMAL,
        x=x,
        y=y,
        objective=objective,
        dual_objective=float(dual_objective),
        reduced_costs=reduced,
        basis=tuple(int(j) for j in basis),
        iterations=iterations,
    )


def _bound_terms(problem: LpProblem, d_min: np.ndarray, x: np.ndarray) -> float:
    """Contribution of the variable bounds to the dual objective, min-form reduced costs."""
    total = 0.0
    for j, d in enumerate(d_min):
        if d > PIVOT_TOL and np.isfinite(problem.lower[j]):
            total += d * problem.lower[j]
        elif d < -PIVOT_TOL and np.isfinite(problem.upper[j]):
            total += d * problem.upper[j]
        else:
            total += d * x[j]
    return total


def row_slack(problem: LpProblem, x: np.ndarray) -> np.ndarray:
    """Signed slack of every row, non-negative when the row holds."""
    activity = problem.A @ x
    slack = np.empty(problem.n_rows)
    for r, s in enumerate(problem.senses):
        if s == LE:
            slack[r] = problem.b[r] - activity[r]
        elif s == GE:
            slack[r] = activity[r] - problem.b[r]
        else:
            slack[r] = -abs(activity[r] - problem.b[r])
    return slack


def primal_residual(problem: LpProblem, x: np.ndarray) -> float:
    """Largest violation of a row or a variable bound at ``x``."""
    violations = [
        np.max(-row_slack(problem, x), initial=0.0),
        np.max(problem.lower - x, initial=0.0),
        np.max(x - problem.upper, initial=0.0),
    ]
    return float(max(violations))


def complementary_slackness(problem: LpProblem, solution: LpSolution) -> np.ndarray:
    """``|y_r * slack_r|`` for every row of an optimal ``solution``."""
    if not solution.optimal:
        raise ValueError("Complementary slackness needs an optimal solution")
    return np.abs(solution.y * row_slack(problem, solution.x))


def duality_gap(solution: LpSolution) -> float:
    return abs(solution.objective - solution.dual_objective)


def solve_dense(
    c: Sequence[float],
    A: Sequence[Sequence[float]],
    senses: Sequence[str],
    b: Sequence[float],
    sense: str = "max",
    lower: Sequence[float] = None,
    upper: Sequence[float] = None,
) -> LpSolution:
    """Shortcut building the :class:`LpProblem` and solving it."""
    return solve(LpProblem(c=c, A=A, senses=senses, b=b, lower=lower, upper=upper, sense=sense))
