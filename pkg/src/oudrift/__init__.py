"""Drift estimation toolkit for the Ornstein-Uhlenbeck process: exact path
simulation, cumulant generating functions, large-deviation rate functions,
concentration bounds, and Monte Carlo verification."""

from .cgf import (
    CgfValue,
    domain_L,
    domain_Lambda,
    domain_status_L,
    domain_status_Lambda,
    finite_cgf,
    finite_cgf_W,
    limiting_cgf,
    phi,
)
from .concentration import (
    CiBoundReport,
    ci_bound,
    corollary_bound,
    h_T,
    laplace_upper_bound,
    log_laplace_upper_bound,
    optimal_y,
)
from .montecarlo import (
    EventSpec,
    SlopeReport,
    TailEstimate,
    estimate_tail,
    girsanov_log_weight,
    girsanov_weight,
    ldp_slope,
    mean_weight_check,
    supermartingale_check,
)
from .process import (
    CoupleStats,
    GridSpec,
    OuModel,
    PathSummary,
    couple_stats,
    default_grid,
    default_n_steps,
    exact_step,
    mle,
    path_stream,
    simulate_path,
    terminal_stats,
    transition_coeffs,
)
from .rates import (
    RateValue,
    contraction_infimum,
    exposed_member,
    joint_rate,
    mle_rate,
    numeric_legendre,
)

__version__ = "0.1.0"

__all__ = [
    "CgfValue",
    "CiBoundReport",
    "CoupleStats",
    "EventSpec",
    "GridSpec",
    "OuModel",
    "PathSummary",
    "RateValue",
    "SlopeReport",
    "TailEstimate",
    "ci_bound",
    "contraction_infimum",
    "corollary_bound",
    "couple_stats",
    "default_grid",
    "default_n_steps",
    "domain_L",
    "domain_Lambda",
    "domain_status_L",
    "domain_status_Lambda",
    "estimate_tail",
    "exact_step",
    "exposed_member",
    "finite_cgf",
    "finite_cgf_W",
    "girsanov_log_weight",
    "girsanov_weight",
    "h_T",
    "joint_rate",
    "laplace_upper_bound",
    "ldp_slope",
    "limiting_cgf",
    "log_laplace_upper_bound",
    "mean_weight_check",
    "mle",
    "mle_rate",
    "numeric_legendre",
    "optimal_y",
    "path_stream",
    "phi",
    "simulate_path",
    "supermartingale_check",
    "terminal_stats",
    "transition_coeffs",
]
