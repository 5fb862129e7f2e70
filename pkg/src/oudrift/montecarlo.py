"""Monte Carlo estimation of estimator tail probabilities and the
stochastic identities behind the tail bounds.

Rare events can be sampled under a tilted drift and reweighted back with
the exact drift-change likelihood ratio

    log w = (theta_target - theta_sim) (x_T^2 - T) / 2
            - (theta_target^2 - theta_sim^2) s_T / 2

which uses only the path summary (x_T, s_T). Aggregations are
deterministic reductions over fixed path batches, so results do not
depend on the worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .process import GridSpec, OuModel, PathSummary, default_grid, terminal_stats
from .rates import mle_rate

MIN_TAIL_SAMPLES = 100
MIN_SLOPE_HITS = 50.0

EVENT_KINDS = ("mle_ge", "mle_le", "abs_dev_ge")


@dataclass(frozen=True)
class EventSpec:
    """A tail event on the drift estimate: kind in {mle_ge, mle_le, abs_dev_ge}."""

    kind: str
    threshold: float

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.kind == "abs_dev_ge" and not self.threshold > 0:
            raise ValueError("abs_dev_ge needs a positive threshold")
        if math.isnan(self.threshold):
            raise ValueError("threshold must not be NaN")

    def indicator(self, estimates: np.ndarray, theta: float) -> np.ndarray:
        if self.kind == "mle_ge":
            return estimates >= self.threshold
        if self.kind == "mle_le":
            return estimates <= self.threshold
        return np.abs(estimates - theta) >= self.threshold

    def default_tilt(self, theta: float) -> float:
        """Simulation drift that makes the event typical."""
        if self.kind == "abs_dev_ge":
            return theta + self.threshold
        return self.threshold


@dataclass(frozen=True)
class TailEstimate:
    """Probability estimate with its standard error and estimator kind."""

    p_hat: float
    se: float
    n: int
    estimator: str
    theta_sim: float | None = None


@dataclass(frozen=True)
class SlopeReport:
    """Per-horizon normalized log-probabilities and the fitted decay slope.

    target is the predicted slope -I(threshold) from the closed-form rate.
    extrapolated_slope is NaN when fewer than two horizons had enough hits;
    insufficient lists the horizons below the hit floor.
    """

    T_ladder: list[float]
    log_p_over_T: list[float]
    extrapolated_slope: float
    target: float
    p_hats: list[float] = field(default_factory=list)
    ses: list[float] = field(default_factory=list)
    n_per_T: int = 0
    insufficient: list[float] = field(default_factory=list)


def girsanov_log_weight(
    summary: PathSummary, horizon: float, theta_target: float, theta_sim: float
) -> float:
    """Log likelihood ratio of the target drift law against the simulated one."""
    return float(
        _log_weights(summary.x_T, summary.s_T, horizon, theta_target, theta_sim)
    )


def girsanov_weight(
    summary: PathSummary, horizon: float, theta_target: float, theta_sim: float
) -> float:
    """Likelihood-ratio weight; exactly 1 for the identity tilt."""
    if theta_target == theta_sim:
        return 1.0
    lw = girsanov_log_weight(summary, horizon, theta_target, theta_sim)
    if lw > 709.0:
        raise OverflowError(
            f"weight overflows (log weight {lw:.3g}); use girsanov_log_weight"
        )
    return math.exp(lw)


def _log_weights(x_T, s_T, horizon, theta_target, theta_sim):
    diff = theta_target - theta_sim
    sq_diff = theta_target**2 - theta_sim**2
    return diff * (x_T**2 - horizon) / 2.0 - sq_diff * s_T / 2.0


def estimate_tail(
    model: OuModel,
    grid: GridSpec | None,
    event: EventSpec,
    n: int,
    seed: int = 0,
    estimator: str = "plain",
    theta_sim: float | None = None,
    workers: int = 1,
) -> TailEstimate:
    """Monte Carlo tail probability of the event under the model.

    estimator "plain" simulates the model drift directly; "tilted"
    simulates under theta_sim (default: the event's threshold drift) and
    reweights. Deterministic given (model, grid, event, n, seed).
    """
    if n < MIN_TAIL_SAMPLES:
        raise ValueError(f"need at least {MIN_TAIL_SAMPLES} paths, got {n}")
    if estimator not in ("plain", "tilted"):
        raise ValueError(f"unknown estimator {estimator!r}")
    if grid is None:
        grid = default_grid(model)
    T = model.horizon
    if estimator == "plain":
        x_T, s_T = terminal_stats(model, grid, seed, n, workers=workers)
        hits = event.indicator((x_T**2 - T) / (2.0 * s_T), model.theta)
        p = hits.mean()
        se = math.sqrt(p * (1.0 - p) / n)
        return TailEstimate(float(p), se, n, "plain")
    t_sim = event.default_tilt(model.theta) if theta_sim is None else theta_sim
    sim_model = OuModel(theta=t_sim, horizon=T)
    x_T, s_T = terminal_stats(sim_model, grid, seed, n, workers=workers)
    hits = event.indicator((x_T**2 - T) / (2.0 * s_T), model.theta)
    weighted = np.where(
        hits, np.exp(_log_weights(x_T, s_T, T, model.theta, t_sim)), 0.0
    )
    p = weighted.mean()
    se = weighted.std(ddof=1) / math.sqrt(n)
    return TailEstimate(float(p), float(se), n, "tilted", theta_sim=t_sim)


def supermartingale_check(
    theta: float,
    horizon: float,
    a: float,
    n: int,
    seed: int = 0,
    grid: GridSpec | None = None,
    workers: int = 1,
) -> TailEstimate:
    """Sample mean of W_T(a) = exp(a M_T - a^2 S_T / 2), which is <= 1 in
    expectation; M_T = (X_T^2 - T)/2 - theta S_T."""
    if n < 1000:
        raise ValueError(f"need at least 1000 paths, got {n}")
    model = OuModel(theta=theta, horizon=horizon)
    if grid is None:
        grid = default_grid(model)
    if a == 0:
        return TailEstimate(1.0, 0.0, n, "plain")
    x_T, s_T = terminal_stats(model, grid, seed, n, workers=workers)
    m = (x_T**2 - horizon) / 2.0 - theta * s_T
    w = np.exp(a * m - a * a * s_T / 2.0)
    return TailEstimate(float(w.mean()), float(w.std(ddof=1) / math.sqrt(n)), n, "plain")


def mean_weight_check(
    theta_sim: float,
    theta_target: float,
    horizon: float,
    n: int,
    seed: int = 0,
    grid: GridSpec | None = None,
    workers: int = 1,
) -> TailEstimate:
    """Sample mean of the reweighting factor, which is exactly 1 in
    expectation under the simulated drift."""
    model = OuModel(theta=theta_sim, horizon=horizon)
    if grid is None:
        grid = default_grid(model)
    x_T, s_T = terminal_stats(model, grid, seed, n, workers=workers)
    w = np.exp(_log_weights(x_T, s_T, horizon, theta_target, theta_sim))
    return TailEstimate(float(w.mean()), float(w.std(ddof=1) / math.sqrt(n)), n, "tilted",
                        theta_sim=theta_sim)


def ldp_slope(
    theta: float,
    event: EventSpec,
    T_ladder: list[float],
    n_per_T: int,
    seed: int = 0,
    estimator: str = "plain",
    theta_sim: float | None = None,
    workers: int = 1,
    n_steps: int | None = None,
) -> SlopeReport:
    """Empirical decay slope of the event probability across horizons.

    Fits log p against T by least squares over the horizons whose hit
    count reaches the floor; horizons below it are listed and excluded
    rather than silently extrapolated.
    """
    if len(T_ladder) < 2:
        raise ValueError("need at least two horizons")
    p_hats, ses, log_p_over_T, insufficient = [], [], [], []
    for T in T_ladder:
        model = OuModel(theta=theta, horizon=T)
        grid = GridSpec(n_steps) if n_steps is not None else default_grid(model)
        est = estimate_tail(
            model, grid, event, n_per_T, seed=seed, estimator=estimator,
            theta_sim=theta_sim, workers=workers,
        )
        p_hats.append(est.p_hat)
        ses.append(est.se)
        log_p_over_T.append(math.log(est.p_hat) / T if est.p_hat > 0 else -math.inf)
        if est.p_hat * n_per_T < MIN_SLOPE_HITS:
            insufficient.append(T)
    usable = [i for i, T in enumerate(T_ladder) if T not in insufficient]
    if len(usable) >= 2:
        ts = np.array([T_ladder[i] for i in usable])
        logs = np.array([math.log(p_hats[i]) for i in usable])
        slope = float(np.polyfit(ts, logs, 1)[0])
    else:
        slope = math.nan
    rate = mle_rate(theta, event.threshold)
    target = -rate.as_float()
    return SlopeReport(
        T_ladder=list(T_ladder),
        log_p_over_T=log_p_over_T,
        extrapolated_slope=slope,
        target=target,
        p_hats=p_hats,
        ses=ses,
        n_per_T=n_per_T,
        insufficient=insufficient,
    )
