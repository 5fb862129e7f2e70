"""Large-deviation rate functions for the normalized couple and the drift
estimator, in all three regimes.

Closed forms (z is the estimator value, (x, y) the normalized couple):

  couple, theta <= 0:   theta(1 - x^2 + theta y)/2 + (1 + x^2)^2/(8y) for y > 0
  couple, theta > 0:    same for 0 < y < (1 + x^2)/(2 theta), then the
                        constant plateau theta; +inf for y <= 0
  estimator, theta < 0: -(z-theta)^2/(4z) for z <= theta/3, 2z - theta after
  estimator, theta = 0: -z/4 for z <= 0, 2z for z >= 0
  estimator, theta > 0: -(z-theta)^2/(4z) for z <= -theta, theta on |z| < theta,
                        0 at z = theta, 2z - theta for z > theta

The numeric transform maximizes a x + b y - L(a, b) over the limiting CGF
domain, reparametrized so the domain constraint is built in; the
contraction route minimizes h(y) = theta y (theta - 2z)/2 + (1 + yz)^2/(2y)
over {y > 0, 1 + 2yz >= 0}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .optimize import line_max

U_FLOOR = 1e-9  # lower barrier for the domain-distance coordinate


@dataclass(frozen=True)
class RateValue:
    """Extended nonnegative real: value is None when the rate is +infinity.

    branch names the piece of the piecewise definition (or of the search)
    that produced the value.
    """

    value: float | None
    branch: str

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def as_float(self) -> float:
        return math.inf if self.value is None else self.value


def joint_rate(theta: float, x: float, y: float) -> RateValue:
    """Closed-form rate of the normalized couple (x, y)."""
    if y <= 0:
        return RateValue(None, "infinite")
    w = 1.0 + x * x
    if theta > 0 and y >= w / (2.0 * theta):
        return RateValue(theta, "plateau")
    value = theta * (1.0 - x * x + theta * y) / 2.0 + w * w / (8.0 * y)
    return RateValue(value, "interior")


def mle_rate(theta: float, z: float) -> RateValue:
    """Closed-form rate of the drift estimator at z."""
    if theta < 0:
        if z <= theta / 3.0:
            v = -((z - theta) ** 2) / (4.0 * z)
            return RateValue(v if v != 0 else 0.0, "border")
        return RateValue(2.0 * z - theta, "interior")
    if theta == 0:
        if z <= 0:
            v = -z / 4.0
            return RateValue(v if v != 0 else 0.0, "border")
        return RateValue(2.0 * z, "interior")
    if z <= -theta:
        return RateValue(-((z - theta) ** 2) / (4.0 * z), "border")
    if z == theta:
        return RateValue(0.0, "truth")
    if abs(z) < theta:
        return RateValue(theta, "plateau")
    return RateValue(2.0 * z - theta, "interior")


def exposed_member(theta: float, x: float, y: float) -> bool:
    """Membership in the exposed set 0 < y < (1 + x^2)/(2 theta), theta > 0."""
    if theta <= 0:
        raise ValueError("exposed set is defined for theta > 0 only")
    return 0.0 < y < (1.0 + x * x) / (2.0 * theta)


def _legendre_objective(theta: float, x: float, y: float):
    """Objective g(a, u) = a x + b(u) y - L(a, b(u)) with the domain built in.

    For theta <= 0, b = theta^2/2 - u^2/2 so sqrt(theta^2 - 2b) = u; for
    theta > 0, b = -u^2/2 so sqrt(theta^2 - 2b) = sqrt(theta^2 + u^2).
    u > 0 sweeps the whole domain and u -> 0 approaches its boundary.
    """
    if theta <= 0:

        def g(a, u):
            b = (theta * theta - u * u) / 2.0
            lim = -(theta + u) / 2.0 + a * a / (2.0 * (u - theta))
            return a * x + b * y - lim

    else:

        def g(a, u):
            r = np.hypot(theta, u)
            b = -u * u / 2.0
            # r - theta = u^2 / (r + theta) avoids cancellation as u -> 0
            lim = -(theta + r) / 2.0 + a * a * (r + theta) / (2.0 * u * u)
            return a * x + b * y - lim

    return g


def _boundary_limit(theta: float, x: float, y: float) -> float:
    # limit of sup_a {a x + b y - L} as the domain boundary is approached
    if theta > 0:
        return theta
    return theta * (1.0 - x * x + theta * y) / 2.0


def numeric_legendre(
    theta: float,
    x: float,
    y: float,
    tol: float = 1e-6,
    max_rounds: int = 50,
    coarse_a: int = 41,
    coarse_u: int = 61,
) -> RateValue:
    """Fenchel-Legendre transform of the limiting CGF, computed numerically.

    Two stages: a coarse grid over the reparametrized domain, then
    coordinate golden-section refinement. When the supremum sits on the
    domain boundary (explosive plateau) the boundary-limit value is
    reported instead of the last iterate.
    """
    if y <= 0:
        return RateValue(None, "infinite")
    g = _legendre_objective(theta, x, y)

    a_span = 10.0 * (1.0 + abs(x))
    u_hi = max(1e2, 10.0 * (1.0 + x * x) / (2.0 * y))
    a_grid = np.linspace(-a_span, a_span, coarse_a)
    u_grid = np.geomspace(1e-6, u_hi, coarse_u)
    vals = g(a_grid[:, None], u_grid[None, :])
    i, j = np.unravel_index(np.argmax(vals), vals.shape)
    a, u = float(a_grid[i]), float(u_grid[j])
    # the objective is quadratic in a, so the conditional optimum
    # a*(u) = x (r(u) - theta) is exact; the supremum often sits on a ridge
    # along this curve that is too narrow for the rectangular grid and too
    # diagonal for plain coordinate steps, so maximize along it first
    def a_star(u_val):
        if theta <= 0:
            return x * (u_val - theta)
        return x * u_val * u_val / (np.hypot(theta, u_val) + theta)

    prof_vals = g(a_star(u_grid), u_grid)
    k = int(np.argmax(prof_vals))
    if prof_vals[k] > vals[i, j]:
        u = float(u_grid[k])
    log_floor = math.log(U_FLOOR)
    t = line_max(
        lambda tt: g(a_star(math.exp(tt)), math.exp(tt)),
        math.log(u), step=0.5, lo=log_floor, tol=tol * 1e-2,
    )
    u = math.exp(t)
    a = float(a_star(u))

    best = g(a, u)
    converged = False
    for _ in range(max_rounds):
        a = line_max(lambda aa: g(aa, u), a, step=0.5 * (1.0 + abs(a)), tol=tol * 1e-2)
        t = line_max(
            lambda tt: g(a, math.exp(tt)), math.log(u), step=0.5, lo=log_floor, tol=tol * 1e-2
        )
        u = math.exp(t)
        value = g(a, u)
        if value - best <= tol / 10.0:
            best = max(best, value)
            converged = True
            break
        best = value
    # supremum still climbing toward the domain boundary: report its limit
    if u <= 10.0 * U_FLOOR or g(a, max(u / 2.0, U_FLOOR)) > best:
        return RateValue(_boundary_limit(theta, x, y), "boundary-limit")
    if not converged:
        raise RuntimeError(
            f"Legendre search did not converge: last iterate a={a:.6g}, "
            f"u={u:.6g}, value={best:.6g}"
        )
    return RateValue(best, "interior")


def contraction_infimum(theta: float, z: float) -> RateValue:
    """Estimator rate via the constrained energy profile.

    Minimizes h(y) = theta y (theta - 2z)/2 + (1 + yz)^2/(2y) over
    {y > 0, 1 + 2yz >= 0}. Candidates are the critical point
    y = 1/|z - theta| and, for z < 0, the border point y = -1/(2z); both
    are evaluated when feasible and the smaller value wins. When neither
    exists (z = theta >= 0) h decreases to its infimum at y -> infinity.
    """

    def h(yv):
        return theta * yv * (theta - 2.0 * z) / 2.0 + (1.0 + yv * z) ** 2 / (2.0 * yv)

    candidates = []
    if z != theta:
        y_c = 1.0 / abs(z - theta)
        if 1.0 + 2.0 * y_c * z >= 0:
            candidates.append((h(y_c), "interior"))
    if z < 0:
        candidates.append((h(-1.0 / (2.0 * z)), "border"))
    if not candidates:
        return RateValue(float(theta), "limit")
    value, branch = min(candidates)
    return RateValue(max(value, 0.0), branch)
