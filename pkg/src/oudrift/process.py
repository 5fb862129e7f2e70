"""Ornstein-Uhlenbeck process dX = theta*X dt + dB, exact grid simulation
and the drift estimator built from the terminal state and path energy.

Grid points are sampled from the exact Gaussian transition law, so terminal
marginals carry no discretization error; only the energy integral
int_0^T X_t^2 dt is approximated (trapezoidal rule on the grid).
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

# Below this value of |2*theta*delta| the step variance switches to a
# series expansion to avoid 0/0 at theta = 0.
SMALL_EXPONENT = 1e-6

# exp(theta*T) past this exponent would push path values toward 1e300.
MAX_DRIFT_EXPONENT = 690.0

_BATCH_PATHS = 4096


@dataclass(frozen=True)
class OuModel:
    """Drift theta (1/time), horizon T > 0, initial state fixed at 0."""

    theta: float
    horizon: float
    x0: float = 0.0

    def __post_init__(self):
        if self.horizon <= 0:
            raise ValueError(f"horizon must be positive, got {self.horizon}")
        if self.x0 != 0.0:
            raise ValueError("initial state is fixed at 0")

    @property
    def regime(self) -> str:
        if self.theta < 0:
            return "stable"
        if self.theta == 0:
            return "unstable"
        return "explosive"


@dataclass(frozen=True)
class GridSpec:
    """Uniform time grid with n_steps steps of size T / n_steps."""

    n_steps: int

    def __post_init__(self):
        if self.n_steps < 1:
            raise ValueError(f"n_steps must be >= 1, got {self.n_steps}")

    def delta(self, horizon: float) -> float:
        return horizon / self.n_steps


@dataclass(frozen=True)
class PathSummary:
    """Sufficient statistics of one simulated path.

    x_T is the terminal state, s_T the trapezoidal approximation of the
    energy int_0^T X_t^2 dt. (seed, path_index) identifies the random
    stream that produced the path.
    """

    x_T: float
    s_T: float
    n_steps: int
    seed: int
    path_index: int = 0


@dataclass(frozen=True)
class CoupleStats:
    """Normalized terminal statistics (X_T / sqrt(T), S_T / T)."""

    x: float
    y: float


def default_n_steps(theta: float, horizon: float) -> int:
    """Default grid resolution: max(1000, ceil(100 * |theta| * T))."""
    return max(1000, math.ceil(100.0 * abs(theta) * horizon))


def default_grid(model: OuModel) -> GridSpec:
    return GridSpec(default_n_steps(model.theta, model.horizon))


def transition_coeffs(theta: float, delta: float) -> tuple[float, float]:
    """Mean multiplier and noise std of the exact transition over delta.

    X_{t+delta} | X_t = x is N(m*x, v) with m = exp(theta*delta) and
    v = (exp(2*theta*delta) - 1) / (2*theta), v = delta at theta = 0.
    """
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    u = 2.0 * theta * delta
    if abs(u) < SMALL_EXPONENT:
        v = delta * (1.0 + u / 2.0 + u * u / 6.0)
    else:
        v = math.expm1(u) / (2.0 * theta)
    return math.exp(theta * delta), math.sqrt(v)


def exact_step(x: float, theta: float, delta: float, z: float) -> float:
    """Advance one exact transition step given a standard normal draw z."""
    m, sd = transition_coeffs(theta, delta)
    return m * x + sd * z


def path_stream(seed: int, path_index: int = 0) -> np.random.Generator:
    """Counter-based random stream keyed by (seed, path index).

    Streams for distinct (seed, index) pairs are independent, so path
    batches can be generated serially or in parallel with identical
    results.
    """
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be in [0, 2**64), got {seed}")
    if path_index < 0 or path_index >= 2**64:
        raise ValueError(f"path_index must be in [0, 2**64), got {path_index}")
    key = int(seed) + (int(path_index) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _check_overflow(model: OuModel, grid: GridSpec):
    if model.theta > 0 and model.theta * model.horizon > MAX_DRIFT_EXPONENT:
        delta = grid.delta(model.horizon)
        step = math.ceil(MAX_DRIFT_EXPONENT / (model.theta * delta))
        raise OverflowError(
            f"explosive horizon too long: exp(theta*t) exceeds the floating "
            f"range near step {step} of {grid.n_steps} "
            f"(theta={model.theta}, T={model.horizon})"
        )


def simulate_path(model: OuModel, grid: GridSpec, seed: int, path_index: int = 0) -> PathSummary:
    """Simulate one path; exact grid marginals, trapezoidal energy.

    Deterministic given (model, grid, seed, path_index).
    """
    _check_overflow(model, grid)
    delta = grid.delta(model.horizon)
    m, sd = transition_coeffs(model.theta, delta)
    z = path_stream(seed, path_index).standard_normal(grid.n_steps)
    x = model.x0
    s = 0.0
    for k in range(grid.n_steps):
        x_next = m * x + sd * z[k]
        s += x * x + x_next * x_next
        x = x_next
    s *= 0.5 * delta
    if not (math.isfinite(x) and math.isfinite(s)):
        raise OverflowError(
            f"path statistics overflowed (theta={model.theta}, T={model.horizon})"
        )
    return PathSummary(x_T=x, s_T=s, n_steps=grid.n_steps, seed=seed, path_index=path_index)


_tls = threading.local()
_MASK64 = 2**64 - 1


def _z_buffer(count: int, n_steps: int) -> np.ndarray:
    # reuse one per-thread buffer so batches do not refault fresh pages
    buf = getattr(_tls, "buf", None)
    if buf is None or buf.shape[0] < count or buf.shape[1] != n_steps:
        buf = np.empty((max(count, _BATCH_PATHS), n_steps))
        _tls.buf = buf
    return buf[:count]


def _fill_normals(seed: int, start: int, out: np.ndarray):
    """Fill row i of out from the stream keyed by (seed, start + i).

    Re-keys a single counter-based generator in place, which draws the
    exact same values as a fresh stream per path but much faster; falls
    back to fresh streams if the state layout is not the expected one.
    """
    count, n_steps = out.shape
    try:
        bg = np.random.Philox(key=0)
        gen = np.random.Generator(bg)
        st = bg.state
        key = st["state"]["key"]
        counter = st["state"]["counter"]
        for i in range(count):
            key[0] = seed
            key[1] = start + i
            counter[:] = 0
            st["buffer_pos"] = 4
            st["has_uint32"] = 0
            st["uinteger"] = 0
            bg.state = st
            gen.standard_normal(n_steps, out=out[i])
    except (KeyError, TypeError):
        for i in range(count):
            path_stream(seed, start + i).standard_normal(n_steps, out=out[i])


def _terminal_batch(model, grid, seed, start, count):
    delta = grid.delta(model.horizon)
    m, sd = transition_coeffs(model.theta, delta)
    n_steps = grid.n_steps
    z = _z_buffer(count, n_steps)
    _fill_normals(seed, start, z)
    x = np.full(count, model.x0)
    s = np.zeros(count)
    for k in range(n_steps):
        x_next = m * x + sd * z[:, k]
        s += x * x + x_next * x_next
        x = x_next
    s *= 0.5 * delta
    return x, s


def terminal_stats(
    model: OuModel,
    grid: GridSpec,
    seed: int,
    n_paths: int,
    workers: int = 1,
    first_index: int = 0,
) -> tuple[np.ndarray, np.ndarray]:
    """Terminal state and energy for paths first_index .. first_index+n_paths-1.

    Paths are generated in fixed-size batches from per-path streams and
    reassembled in index order, so the result is bit-identical for any
    worker count.
    """
    _check_overflow(model, grid)
    if n_paths < 1:
        raise ValueError(f"n_paths must be >= 1, got {n_paths}")
    starts = list(range(0, n_paths, _BATCH_PATHS))
    jobs = [(first_index + s, min(_BATCH_PATHS, n_paths - s)) for s in starts]
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda j: _terminal_batch(model, grid, seed, *j), jobs))
    else:
        parts = [_terminal_batch(model, grid, seed, *j) for j in jobs]
    x_T = np.concatenate([p[0] for p in parts])
    s_T = np.concatenate([p[1] for p in parts])
    if not (np.isfinite(x_T).all() and np.isfinite(s_T).all()):
        raise OverflowError(
            f"path statistics overflowed (theta={model.theta}, T={model.horizon})"
        )
    return x_T, s_T


def mle(summary: PathSummary, horizon: float) -> float:
    """Drift estimate (x_T^2 - T) / (2 s_T); requires positive energy."""
    if summary.s_T <= 0:
        raise ValueError("estimator undefined: path energy s_T must be positive")
    return (summary.x_T**2 - horizon) / (2.0 * summary.s_T)


def mle_from_stats(x_T: np.ndarray, s_T: np.ndarray, horizon: float) -> np.ndarray:
    return (x_T**2 - horizon) / (2.0 * s_T)


def couple_stats(summary: PathSummary, horizon: float) -> CoupleStats:
    """Normalized couple (x_T / sqrt(T), s_T / T)."""
    if horizon <= 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    return CoupleStats(x=summary.x_T / math.sqrt(horizon), y=summary.s_T / horizon)
