"""Configuration constants and defaults for sepmax."""

from __future__ import annotations

# Relative/absolute tolerance for value equality, e.g. v(S) = v(X).
VALUE_REL_TOL: float = 1e-9
VALUE_ABS_TOL: float = 1e-12

# Inequality slack: a constraint is violated only when broken by more than
# INEQUALITY_TOL * max(1, scale of the terms involved).
INEQUALITY_TOL: float = 1e-9

# Memoization is unbounded up to this many elements and disabled above.
CACHE_SIZE_LIMIT: int = 24

# Largest ground set the separability checks enumerate exhaustively.
EXHAUSTIVE_LIMIT: int = 14

# Maximum number of K-subsets a brute-force enumeration may visit.
ENUMERATION_BUDGET: int = 2_000_000

# Maximum number of single runs a randomized solver may perform.
RUN_BUDGET: int = 10_000_000

# Guards ceiling arithmetic against float noise (e.g. ln(e^3) = 3.0000000000000004).
CEIL_SLACK: float = 1e-9

# Version stamped into every instance, campaign and report file.
SCHEMA_VERSION: int = 1

# Largest ground set at which declared p values are re-certified before a solve.
RECERTIFY_LIMIT: int = 14

# Process exit codes.
EXIT_OK: int = 0
EXIT_VALIDATION: int = 2
EXIT_BUDGET: int = 3
EXIT_INFEASIBLE: int = 4

SOLVER_NAMES: list[str] = [
    "brute",
    "alg1",
    "greedy",
    "ptas",
    "alg3-min",
    "min-or-max",
    "best-subset",
]
