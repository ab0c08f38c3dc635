from .simplex import (
    EQ,
    GE,
    LE,
    IterationLimitError,
    LpProblem,
    LpSolution,
    LpStatus,
    complementary_slackness,
    duality_gap,
    primal_residual,
    row_slack,
    solve,
    solve_dense,
)

__all__ = [
    "EQ",
    "GE",
    "LE",
    "IterationLimitError",
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "complementary_slackness",
    "duality_gap",
    "primal_residual",
    "row_slack",
    "solve",
    "solve_dense",
]
