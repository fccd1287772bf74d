"""Multiple zeta values, T-values and the xi/eta/psi families.

Exact composition combinatorics, accelerated nested-series evaluators,
endpoint-aware quadrature and a harness that checks the explicit formulas
numerically.
"""

__version__ = "0.1.0"

from .compositions import (
    Composition,
    coarsenings,
    compositions_of,
    compositions_up_to,
    enumerate_weak,
    hoffman_dual,
    mzv_dual_index,
    parse_composition,
    refinements,
    reverse,
)
from .errors import CompositionError, ConvergenceError, DivergenceError, DomainError, MZVError
from .formulas import (
    Expansion,
    ExpansionTerm,
    expand_eta,
    expand_psi,
    expand_thm21_rhs,
    expand_thm23_rhs,
    expand_xi,
    kt_conjecture_sum,
)
from .quadrature import IntegrandSpec, QuadResult, eta_value_by_integral, integrate, psi_value_by_integral, xi_value_by_integral
from .series import EvalResult, eval_a, eval_li, eval_li_landen, eval_t, eval_zeta, eval_zeta_star
from .verify import IdentityCase, IdentityReport, default_grid, run_case, run_suite

__all__ = [
    "__version__",
    "Composition",
    "CompositionError",
    "ConvergenceError",
    "DivergenceError",
    "DomainError",
    "EvalResult",
    "Expansion",
    "ExpansionTerm",
    "IdentityCase",
    "IdentityReport",
    "IntegrandSpec",
    "MZVError",
    "QuadResult",
    "coarsenings",
    "compositions_of",
    "compositions_up_to",
    "default_grid",
    "enumerate_weak",
    "eta_value_by_integral",
    "eval_a",
    "eval_li",
    "eval_li_landen",
    "eval_t",
    "eval_zeta",
    "eval_zeta_star",
    "expand_eta",
    "expand_psi",
    "expand_thm21_rhs",
    "expand_thm23_rhs",
    "expand_xi",
    "hoffman_dual",
    "integrate",
    "kt_conjecture_sum",
    "mzv_dual_index",
    "parse_composition",
    "psi_value_by_integral",
    "refinements",
    "reverse",
    "run_case",
    "run_suite",
    "xi_value_by_integral",
]
