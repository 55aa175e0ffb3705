"""Noise schedules and inference time grids.

A schedule fixes the per-step retention factors ``alpha_t`` of the forward
noising process for ``t = 1..T`` together with their running product
``alpha_bar_t`` (stored for ``t = 0..T`` with ``alpha_bar_0 = 1`` so lookups
at ``t - 1`` never need a special case).  A time grid picks the subset of
timesteps an inference run actually visits, which is how few-step and
truncated denoising are expressed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

COSINE_OFFSET = 0.008
ALPHA_FLOOR = 1e-3  # keeps alpha_bar bounded away from 0 at large t
ALPHA_CEIL = 1.0 - 1e-12


@dataclass(frozen=True, eq=False)
class Schedule:
    """Discrete noise schedule over T training steps.

    ``alphas[i]`` is alpha at timestep ``i + 1``; ``alpha_bars[t]`` is the
    cumulative product up to ``t``, with ``alpha_bars[0] == 1``.
    """

    T: int
    alphas: np.ndarray
    alpha_bars: np.ndarray
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.alphas.setflags(write=False)
        self.alpha_bars.setflags(write=False)

    def alpha(self, t: int) -> float:
        if not 1 <= t <= self.T:
            raise ValueError(f"alpha defined for 1 <= t <= {self.T}, got {t}")
        return float(self.alphas[t - 1])

    def alpha_bar(self, t) -> np.ndarray:
        return self.alpha_bars[t]

    def to_record(self) -> str:
        """One-line text form sufficient to rebuild the schedule."""
        parts = [f"kind={self.kind}", f"T={self.T}"]
        parts += [f"{k}={v!r}" for k, v in sorted(self.params.items())]
        return " ".join(parts)


def _finish(T: int, alphas: np.ndarray, kind: str, params: dict) -> Schedule:
    alphas = np.clip(alphas, ALPHA_FLOOR, ALPHA_CEIL)
    alpha_bars = np.concatenate([[1.0], np.cumprod(alphas)])
    return Schedule(T=T, alphas=alphas, alpha_bars=alpha_bars, kind=kind, params=params)


def cosine_schedule(T: int) -> Schedule:
    """Squared-cosine schedule with offset, the default for all experiments.

    alpha_bar follows cos^2(((t/T + s)/(1 + s)) * pi/2) normalised to 1 at
    t = 0; per-step alphas are the consecutive ratios, clamped into
    (ALPHA_FLOOR, ALPHA_CEIL) before the cumulative product is rebuilt so the
    stored alpha_bars stay exactly consistent with the stored alphas.
    """
    if T < 1:
        raise ValueError(f"T must be a positive integer, got {T}")
    t = np.arange(T + 1, dtype=float)
    f = np.cos(((t / T + COSINE_OFFSET) / (1.0 + COSINE_OFFSET)) * np.pi / 2.0) ** 2
    raw_bars = f / f[0]
    alphas = raw_bars[1:] / raw_bars[:-1]
    return _finish(T, alphas, "cosine", {"s": COSINE_OFFSET})


def linear_schedule(T: int, beta_start: float = 1e-4, beta_end: float = 0.02) -> Schedule:
    """Linearly spaced beta_t = 1 - alpha_t from beta_start to beta_end."""
    if T < 1:
        raise ValueError(f"T must be a positive integer, got {T}")
    if not (0.0 < beta_start <= beta_end < 1.0):
        raise ValueError(
            f"need 0 < beta_start <= beta_end < 1, got ({beta_start}, {beta_end})"
        )
    betas = np.linspace(beta_start, beta_end, T)
    return _finish(T, 1.0 - betas, "linear", {"beta_start": beta_start, "beta_end": beta_end})


def schedule_from_record(record: str) -> Schedule:
    """Rebuild a schedule from its ``to_record`` line."""
    fields = dict(item.split("=", 1) for item in record.split())
    kind = fields.pop("kind")
    T = int(fields.pop("T"))
    if kind == "cosine":
        return cosine_schedule(T)
    if kind == "linear":
        return linear_schedule(
            T,
            beta_start=float(fields["beta_start"]),
            beta_end=float(fields["beta_end"]),
        )
    raise ValueError(f"unknown schedule kind {kind!r}")


@dataclass(frozen=True, eq=False)
class TimeGrid:
    """Strictly increasing timesteps t_0 < ... < t_delta visited at inference."""

    indices: np.ndarray
    delta: int

    def __post_init__(self):
        self.indices.setflags(write=False)

    def __len__(self) -> int:
        return len(self.indices)


def time_grid(schedule: Schedule, steps: int, t_min: int = 0, t_max: int | None = None) -> TimeGrid:
    """Evenly spaced grid of ``steps + 1`` integer timesteps from t_min to t_max.

    Rounding collisions are re-spread while keeping the endpoints pinned;
    the preconditions guarantee there is always room for a strictly
    increasing grid.
    """
    if t_max is None:
        t_max = schedule.T
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if not (0 <= t_min < t_max <= schedule.T):
        raise ValueError(f"need 0 <= t_min < t_max <= T, got ({t_min}, {t_max}, T={schedule.T})")
    if steps > t_max - t_min:
        raise ValueError(
            f"steps={steps} exceeds the {t_max - t_min} integer slots between t_min and t_max"
        )
    grid = np.rint(np.linspace(t_min, t_max, steps + 1)).astype(int)
    grid[0], grid[-1] = t_min, t_max
    # push duplicates up, then sweep back down so t_max is respected
    for i in range(1, len(grid)):
        grid[i] = max(grid[i], grid[i - 1] + 1)
    for i in range(len(grid) - 2, -1, -1):
        grid[i] = min(grid[i], grid[i + 1] - 1)
    return TimeGrid(indices=grid, delta=steps)
