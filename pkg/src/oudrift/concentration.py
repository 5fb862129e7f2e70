"""Non-asymptotic tail bounds for the drift estimator.

The master bound is P(|estimate - theta| >= x) <= 2 exp(-x^2 h_T(y*) / 2)
with y* the maximizer of the regime-dependent function

  theta < 0:  h_T(y) = (-theta T y + log(y+2) - log(2(y+1))) / (x^2 + theta^2 y (y+2))
  theta = 0:  h_T(y) = (T y - log 2) / (x^2 + y^2)
  theta > 0:  h_T(y) = (theta T (y+2) + log y - log(2(y+1))) / (x^2 + theta^2 y (y+2))

over y > 0. The closed-form bounds plug a specific y into the same
exponent: the maximizer of a simpler minorant for theta < 0, the exact
stationary point for theta = 0, and y = log(2)/(theta T) for theta > 0.
Everything is computed in log-space; reported bounds are capped at 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .optimize import bracket_max_geometric, golden_max

LOG2 = math.log(2.0)

Y_MONOTONE_LIMIT = 1e12


@dataclass(frozen=True)
class CiBoundReport:
    """A tail bound evaluation: bound = min(1, 2 exp(-x^2 h_value / 2)).

    log_bound is the uncapped logarithm; capped marks bounds that exceeded 1;
    monotone marks a numeric search that was still climbing at the y limit;
    subcase names the x-range of the stable closed form when it applies.
    """

    bound: float
    log_bound: float
    y_star: float
    h_value: float
    method: str
    capped: bool = False
    monotone: bool = False
    subcase: str | None = None


def h_T(theta: float, horizon: float, x: float, y: float) -> float:
    """Regime-dependent exponent profile; defined for y > 0."""
    if y <= 0:
        raise ValueError(f"y must be positive, got {y}")
    if theta == 0:
        return (horizon * y - LOG2) / (x * x + y * y)
    denom = x * x + theta * theta * y * (y + 2.0)
    if theta < 0:
        num = -theta * horizon * y + math.log(y + 2.0) - math.log(2.0 * (y + 1.0))
    else:
        num = theta * horizon * (y + 2.0) + math.log(y) - math.log(2.0 * (y + 1.0))
    return num / denom


def _argmax_h(theta: float, horizon: float, x: float, tol: float = 1e-8):
    f = lambda y: h_T(theta, horizon, x, y)
    lo, hi, monotone = bracket_max_geometric(f, x0=1.0, factor=4.0, hi_limit=Y_MONOTONE_LIMIT)
    if monotone:
        return hi, True
    y = golden_max(f, lo, hi, tol=tol)
    return y, False


def optimal_y(theta: float, horizon: float, x: float, tol: float = 1e-8) -> float:
    """Numeric maximizer of h_T over y > 0 (tolerance in y)."""
    return _argmax_h(theta, horizon, x, tol)[0]


def _report(y: float, h_value: float, x: float, method: str, **kwargs) -> CiBoundReport:
    log_bound = LOG2 - x * x * h_value / 2.0
    if log_bound > 0.0:
        return CiBoundReport(1.0, log_bound, y, h_value, method, capped=True, **kwargs)
    return CiBoundReport(math.exp(log_bound), log_bound, y, h_value, method, **kwargs)


def ci_bound(theta: float, horizon: float, x: float) -> CiBoundReport:
    """Tail bound with the numerically maximized exponent."""
    if horizon <= 0 or x <= 0:
        raise ValueError("horizon and deviation x must be positive")
    y, monotone = _argmax_h(theta, horizon, x)
    return _report(y, h_T(theta, horizon, x, y), x, "numeric-argmax", monotone=monotone)


def corollary_bound(theta: float, horizon: float, x: float) -> CiBoundReport:
    """Regime-matching closed-form tail bound."""
    if horizon <= 0 or x <= 0:
        raise ValueError("horizon and deviation x must be positive")
    T = horizon
    if theta < 0:
        s = math.sqrt(T * T * x * x - 2.0 * theta * T * LOG2 + LOG2 * LOG2)
        h_value = T * T / (2.0 * (LOG2 - theta * T + s))
        y = -(LOG2 + s) / (theta * T)
        subcase = "x<=-theta" if x <= -theta else "x>-theta"
        return _report(y, h_value, x, "corollary-3.2", subcase=subcase)
    if theta == 0:
        s = math.sqrt(T * T * x * x + LOG2 * LOG2)
        h_value = T * T / (2.0 * (LOG2 + s))
        y = (LOG2 + s) / T
        return _report(y, h_value, x, "corollary-3.3")
    y = LOG2 / (theta * T)
    return _report(y, h_T(theta, T, x, y), x, "corollary-3.4")


def log_laplace_upper_bound(theta: float, horizon: float, b: float) -> float:
    """log of the energy Laplace-transform bound, valid for b < 0.

    E[exp(b S_T)] <= exp(-T (r + theta)/2) * sqrt(2r / (r - theta)) with
    r = sqrt(theta^2 - 2b); the same expression covers all regimes.
    """
    if b >= 0:
        raise ValueError(f"b must be negative, got {b}")
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    r = math.sqrt(theta * theta - 2.0 * b)
    return -horizon * (r + theta) / 2.0 - 0.5 * math.log((r - theta) / (2.0 * r))


def laplace_upper_bound(theta: float, horizon: float, b: float) -> float:
    """Upper bound for E[exp(b S_T)], b < 0.

    Returns inf when the exponent exceeds the floating range (theta > 0,
    b -> 0); use log_laplace_upper_bound for the exact exponent.
    """
    lb = log_laplace_upper_bound(theta, horizon, b)
    return math.exp(lb) if lb < 709.0 else math.inf
