"""Detrended fluctuation analysis.

Profile = cumulative sum of the mean-subtracted series.  For each
window size m the profile is cut into non-overlapping windows from the
front and again from the back (2 * floor(N/m) windows, so the remainder
is never discarded), each window is detrended by a degree-l polynomial,
and F(m) is the RMS of the residuals.  The scale exponent h comes from
a log-log fit of F(m) against m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateInputError

DEFAULT_MIN_WINDOW = 8
DEFAULT_MAX_FRACTION = 0.25
DEFAULT_NUM_WINDOWS = 16


@dataclass(frozen=True)
class DfaConfig:
    detrend_degree: int = 1
    window_sizes: tuple[int, ...] = ()
    fit_range: tuple[int, int] | None = None
    shuffle_seed: int = 0

    def validate(self, series_length: int) -> None:
        if self.detrend_degree < 1:
            raise ValueError("detrend degree must be >= 1")
        ws = self.window_sizes
        if len(ws) < 2:
            raise ValueError("need at least two window sizes")
        if list(ws) != sorted(set(ws)):
            raise ValueError("window sizes must be strictly ascending")
        if ws[0] < self.detrend_degree + 2:
            raise ValueError(
                f"smallest window {ws[0]} underdetermines a degree-"
                f"{self.detrend_degree} fit"
            )
        if series_length < 4 * ws[-1]:
            raise DegenerateInputError(
                f"series of length {series_length} too short for window "
                f"{ws[-1]} (need >= {4 * ws[-1]})"
            )


def log_spaced_windows(n: int, min_window: int = DEFAULT_MIN_WINDOW,
                       max_fraction: float = DEFAULT_MAX_FRACTION,
                       num: int = DEFAULT_NUM_WINDOWS) -> tuple[int, ...]:
    """Log-spaced integer window sizes from min_window up to n * max_fraction."""
    max_window = int(n * max_fraction)
    if max_window < min_window:
        raise DegenerateInputError(
            f"series of length {n} too short for DFA (max window {max_window})"
        )
    grid = np.geomspace(min_window, max_window, num)
    return tuple(sorted(set(int(round(m)) for m in grid)))


def default_config(n: int, detrend_degree: int = 1,
                   min_window: int = DEFAULT_MIN_WINDOW,
                   max_fraction: float = DEFAULT_MAX_FRACTION,
                   num: int = DEFAULT_NUM_WINDOWS,
                   shuffle_seed: int = 0) -> DfaConfig:
    windows = log_spaced_windows(n, max(min_window, detrend_degree + 2),
                                 max_fraction, num)
    return DfaConfig(detrend_degree=detrend_degree, window_sizes=windows,
                     shuffle_seed=shuffle_seed)


@dataclass(frozen=True)
class FluctuationCurve:
    points: tuple[tuple[int, float], ...]

    @property
    def window_sizes(self) -> np.ndarray:
        return np.array([m for m, _ in self.points])

    @property
    def fluctuations(self) -> np.ndarray:
        return np.array([f for _, f in self.points])


@dataclass(frozen=True)
class HurstEstimate:
    h: float
    intercept: float
    fit_r2: float
    h_shuffled: float = math.nan


def integrate_profile(series) -> np.ndarray:
    arr = np.asarray(series, dtype=float)
    if arr.size == 0:
        raise DegenerateInputError("empty series has no profile")
    return np.cumsum(arr - arr.mean())


def fluctuation(profile, m: int, detrend_degree: int = 1) -> float:
    """RMS residual after per-window polynomial detrending at window size m."""
    profile = np.asarray(profile, dtype=float)
    n = profile.size
    if m < detrend_degree + 2:
        raise ValueError(f"window {m} underdetermines a degree-{detrend_degree} fit")
    if m > n // 4:
        raise ValueError(f"window {m} exceeds a quarter of the series length {n}")
    s = n // m
    windows = np.concatenate([
        profile[:s * m].reshape(s, m),
        profile[n - s * m:].reshape(s, m),
    ])
    # centered abscissa keeps the Vandermonde well conditioned
    t = np.arange(m, dtype=float) - (m - 1) / 2.0
    vand = np.vander(t, detrend_degree + 1)
    coef, _, _, _ = np.linalg.lstsq(vand, windows.T, rcond=None)
    resid = windows.T - vand @ coef
    return float(np.sqrt(np.mean(resid ** 2)))


def dfa_curve(series, config: DfaConfig) -> FluctuationCurve:
    series = np.asarray(series, dtype=float)
    config.validate(series.size)
    profile = integrate_profile(series)
    points = tuple(
        (m, fluctuation(profile, m, config.detrend_degree))
        for m in config.window_sizes
    )
    return FluctuationCurve(points=points)


def estimate_hurst(curve: FluctuationCurve,
                   fit_range: tuple[int, int] | None = None) -> HurstEstimate:
    """Least-squares fit of log F against log m over fit_range."""
    m = curve.window_sizes
    f = curve.fluctuations
    mask = f > 0
    if fit_range is not None:
        lo, hi = fit_range
        mask &= (m >= lo) & (m <= hi)
    if int(mask.sum()) < 4:
        raise DegenerateInputError(
            "undefined exponent: fewer than 4 positive fluctuation points "
            "in the fit range"
        )
    lm = np.log(m[mask])
    lf = np.log(f[mask])
    slope, intercept = np.polyfit(lm, lf, 1)
    fitted = slope * lm + intercept
    ss_res = float(np.sum((lf - fitted) ** 2))
    ss_tot = float(np.sum((lf - lf.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return HurstEstimate(h=float(slope), intercept=float(intercept), fit_r2=r2)


def hurst_of_series(series, config: DfaConfig) -> HurstEstimate:
    return estimate_hurst(dfa_curve(series, config), config.fit_range)


def shuffled_hurst(series, config: DfaConfig) -> float:
    """Hurst exponent of a seeded uniform random permutation of the
    series; the expected value for any ordering-driven persistence is 0.5."""
    series = np.asarray(series, dtype=float)
    rng = np.random.default_rng(config.shuffle_seed)
    shuffled = rng.permutation(series)
    return hurst_of_series(shuffled, config).h
