"""Normalized cumulant generating functions of the terminal statistics.

For the couple (X_T / sqrt(T), S_T / T) the finite-horizon CGF is

    L_T(a, b) = (1/T) log E[exp(a sqrt(T) X_T + b S_T)]
              = (phi - theta)/2 + a^2 sigma^2 / (2 gamma) - log(gamma) / (2T)

with phi = sqrt(theta^2 - 2b) for theta <= 0 and -sqrt(theta^2 - 2b) for
theta > 0, sigma^2 = (exp(2 phi T) - 1) / (2 phi) and
gamma = 1 + (phi - theta) sigma^2. The T -> infinity limit is

    L(a, b) = -(theta + r)/2 + a^2 / (2 (r - theta)),  r = sqrt(theta^2 - 2b)

on its effective domain (b < theta^2/2 for theta <= 0, b < 0 for theta > 0)
and +infinity outside. The squared-terminal variant

    Lambda_T(a, b) = (1/T) log E[exp(a X_T^2 + b S_T)]
                   = (phi - theta)/2 - log(gamma - 2 a sigma^2) / (2T)

is finite when gamma - 2 a sigma^2 > 0.

All evaluations run in log-space once 2|phi|T is large enough that
exp(2 phi T) would overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SMALL_EXPONENT = 1e-6  # series switch for the removable singularity at phi = 0
LOG_SPACE_EXPONENT = 700.0  # 2|phi|T beyond which sigma^2, gamma overflow
BOUNDARY_EPS = 1e-12  # guard band around domain boundaries

STATUS_FINITE = "finite"
STATUS_BOUNDARY = "boundary"
STATUS_INFINITE = "infinite"


@dataclass(frozen=True)
class CgfValue:
    """A CGF evaluation: value is +inf unless status is "finite".

    phi is the tilt parameter, sigma2 and gamma the Gaussian bookkeeping
    quantities (reported as +inf when only their logarithms are
    representable). extrapolated marks the squared-terminal variant used
    outside its stated regime.
    """

    value: float
    phi: float
    sigma2: float
    gamma: float
    status: str
    extrapolated: bool = False

    @property
    def finite(self) -> bool:
        return self.status == STATUS_FINITE


def phi(theta: float, b: float) -> float:
    """Tilt parameter: +sqrt(theta^2 - 2b) for theta <= 0, -sqrt for theta > 0."""
    d = theta * theta - 2.0 * b
    if d <= 0:
        raise ValueError(f"theta^2 - 2b must be positive, got {d}")
    root = math.sqrt(d)
    return root if theta <= 0 else -root


def _sigma_gamma(phi_val: float, theta: float, horizon: float):
    """sigma^2, gamma and derived pieces, stable for large 2|phi|T.

    Returns (sigma2, gamma, ratio, log_sigma2) where ratio = gamma / sigma^2;
    sigma2/gamma are +inf when only log-space values are representable.
    """
    u = 2.0 * phi_val * horizon
    if abs(u) < SMALL_EXPONENT:
        sigma2 = horizon * (1.0 + u / 2.0 + u * u / 6.0)
    elif u > LOG_SPACE_EXPONENT:
        log_sigma2 = u + math.log1p(-math.exp(-u)) - math.log(2.0 * phi_val)
        ratio = (phi_val - theta) + math.exp(-log_sigma2)
        return math.inf, math.inf, ratio, log_sigma2
    else:
        sigma2 = math.expm1(u) / (2.0 * phi_val)
    gamma = 1.0 + (phi_val - theta) * sigma2
    return sigma2, gamma, gamma / sigma2, math.log(sigma2)


def _infinite(phi_val=math.nan, sigma2=math.nan, gamma=math.nan,
              status=STATUS_INFINITE, extrapolated=False) -> CgfValue:
    return CgfValue(math.inf, phi_val, sigma2, gamma, status, extrapolated)


def finite_cgf(theta: float, horizon: float, a: float, b: float) -> CgfValue:
    """Finite-horizon CGF of (a sqrt(T) X_T + b S_T), normalized by T."""
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    d = theta * theta - 2.0 * b
    if abs(d) < BOUNDARY_EPS:
        return _infinite(status=STATUS_BOUNDARY)
    if d < 0:
        return _infinite()
    phi_val = phi(theta, b)
    sigma2, gamma, ratio, log_sigma2 = _sigma_gamma(phi_val, theta, horizon)
    if abs(gamma) < BOUNDARY_EPS:
        return _infinite(phi_val, sigma2, gamma, STATUS_BOUNDARY)
    if gamma <= 0:
        return _infinite(phi_val, sigma2, gamma)
    # log gamma = log sigma^2 + log(gamma / sigma^2) stays representable when
    # gamma itself does not
    log_gamma = math.log(gamma) if math.isfinite(gamma) else log_sigma2 + math.log(ratio)
    value = (phi_val - theta) / 2.0 + a * a / (2.0 * ratio) - log_gamma / (2.0 * horizon)
    return CgfValue(value, phi_val, sigma2, gamma, STATUS_FINITE)


def finite_cgf_W(theta: float, horizon: float, a: float, b: float) -> CgfValue:
    """Finite-horizon CGF of (a X_T^2 + b S_T), normalized by T.

    Stated for theta >= 0; for theta < 0 the same Gaussian computation is
    returned with extrapolated=True.
    """
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    extrapolated = theta < 0
    d = theta * theta - 2.0 * b
    if abs(d) < BOUNDARY_EPS:
        return _infinite(status=STATUS_BOUNDARY, extrapolated=extrapolated)
    if d < 0:
        return _infinite(extrapolated=extrapolated)
    phi_val = phi(theta, b)
    sigma2, gamma, ratio, log_sigma2 = _sigma_gamma(phi_val, theta, horizon)
    # positivity condition: gamma - 2 a sigma^2 = sigma^2 * (ratio - 2a) > 0
    q_ratio = ratio - 2.0 * a
    q = gamma - 2.0 * a * sigma2 if math.isfinite(sigma2) else q_ratio
    if abs(q) < BOUNDARY_EPS:
        return _infinite(phi_val, sigma2, gamma, STATUS_BOUNDARY, extrapolated)
    if q_ratio <= 0:
        return _infinite(phi_val, sigma2, gamma, extrapolated=extrapolated)
    log_q = log_sigma2 + math.log(q_ratio)
    value = (phi_val - theta) / 2.0 - log_q / (2.0 * horizon)
    return CgfValue(value, phi_val, sigma2, gamma, STATUS_FINITE, extrapolated)


def limiting_cgf(theta: float, a: float, b: float) -> float:
    """Limiting normalized CGF of the couple; +inf outside its domain."""
    if not domain_L(theta, a, b):
        return math.inf
    r = math.sqrt(theta * theta - 2.0 * b)
    return -(theta + r) / 2.0 + a * a / (2.0 * (r - theta))


def domain_L(theta: float, a: float, b: float) -> bool:
    """Effective-domain predicate of the limiting couple CGF (strict)."""
    bound = theta * theta / 2.0 if theta <= 0 else 0.0
    return b < bound


def domain_status_L(theta: float, a: float, b: float, eps: float = BOUNDARY_EPS) -> str:
    """"interior", "boundary" (within eps), or "exterior"."""
    bound = theta * theta / 2.0 if theta <= 0 else 0.0
    if abs(b - bound) <= eps:
        return STATUS_BOUNDARY
    return "interior" if b < bound else "exterior"


def domain_Lambda(theta: float, a: float, b: float) -> bool:
    """Effective-domain predicate of the limiting squared-terminal CGF.

    Requires theta >= 0: theta^2 - 2b > 0 and 2a + theta < sqrt(theta^2 - 2b).
    """
    if theta < 0:
        raise ValueError("squared-terminal domain is defined for theta >= 0 only")
    d = theta * theta - 2.0 * b
    return d > 0 and 2.0 * a + theta < math.sqrt(d)


def domain_status_Lambda(theta: float, a: float, b: float, eps: float = BOUNDARY_EPS) -> str:
    if theta < 0:
        raise ValueError("squared-terminal domain is defined for theta >= 0 only")
    d = theta * theta - 2.0 * b
    if abs(d) <= eps:
        return STATUS_BOUNDARY
    if d < 0:
        return "exterior"
    margin = math.sqrt(d) - (2.0 * a + theta)
    if abs(margin) <= eps:
        return STATUS_BOUNDARY
    return "interior" if margin > 0 else "exterior"
