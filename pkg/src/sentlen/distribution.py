"""Distribution comparison: empirical CDFs, the two-sample
Kolmogorov-Smirnov test, linear-map-then-KS, and the stretched
exponential tail fit."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateInputError


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous empirical CDF over a sorted sample."""

    sorted_samples: np.ndarray

    @classmethod
    def from_samples(cls, samples) -> "Ecdf":
        arr = np.sort(np.asarray(samples, dtype=float))
        if arr.size == 0:
            raise DegenerateInputError("ECDF requires at least one sample")
        return cls(sorted_samples=arr)

    @property
    def n(self) -> int:
        return self.sorted_samples.size

    def evaluate(self, x):
        """C(x) = (# samples <= x) / n, vectorized."""
        idx = np.searchsorted(self.sorted_samples, np.asarray(x, dtype=float),
                              side="right")
        return idx / self.n


@dataclass(frozen=True)
class KsResult:
    kappa: float
    p_value: float
    accepted: bool


@dataclass(frozen=True)
class LinearMap:
    alpha: float
    beta: float

    def apply(self, x):
        return self.alpha * np.asarray(x, dtype=float) + self.beta


@dataclass(frozen=True)
class StretchedExpFit:
    mu: float
    b: float
    fit_rmse: float


def mean_normalize(series) -> np.ndarray:
    arr = np.asarray(series, dtype=float)
    if arr.size == 0:
        raise DegenerateInputError("cannot normalize an empty series")
    mean = arr.mean()
    if mean == 0:
        raise DegenerateInputError("cannot normalize a zero-mean series")
    return arr / mean


def ks_distance(a: Ecdf, b: Ecdf) -> float:
    """sup_x |C1(x) - C2(x)|.

    Both CDFs are step functions, so the supremum is attained at a
    sample point; evaluating on the merged samples is exact.
    """
    grid = np.concatenate([a.sorted_samples, b.sorted_samples])
    return float(np.max(np.abs(a.evaluate(grid) - b.evaluate(grid))))


def kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function
    Q(lam) = 2 * sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lam^2),
    truncated once terms drop below 1e-12."""
    if lam <= 0:
        return 1.0
    total = 0.0
    sign = 1.0
    for k in range(1, 1000):
        term = 2.0 * math.exp(-2.0 * (k * lam) ** 2)
        if term < 1e-12:
            break
        total += sign * term
        sign = -sign
    return min(1.0, max(0.0, total))


def ks_two_sample(a, b, threshold: float = 0.01) -> KsResult:
    """Two-sample KS test with the asymptotic p-value at effective size
    n_e = n_a n_b / (n_a + n_b) and the usual small-sample correction."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size < 5 or b.size < 5:
        raise DegenerateInputError(
            f"KS test needs >= 5 samples per side, got {a.size} and {b.size}"
        )
    kappa = ks_distance(Ecdf.from_samples(a), Ecdf.from_samples(b))
    n_e = a.size * b.size / (a.size + b.size)
    lam = (math.sqrt(n_e) + 0.12 + 0.11 / math.sqrt(n_e)) * kappa
    p = kolmogorov_sf(lam)
    return KsResult(kappa=kappa, p_value=p, accepted=p >= threshold)


def ks_after_linear_map(x_series, y_series, threshold: float = 0.01) -> KsResult:
    """Fit y = alpha*x + beta by least squares, map x through it, then
    KS-compare the mapped values against y.  No mean normalization: the
    map already aligns location and scale."""
    from .correlation import fit_linear_map

    lm = fit_linear_map(x_series, y_series)
    mapped = lm.apply(x_series)
    return ks_two_sample(mapped, np.asarray(y_series, dtype=float), threshold)


def empirical_ccdf(series) -> tuple[np.ndarray, np.ndarray]:
    """Distinct values x with CCDF(x) = P(X > x), boundary points
    (CCDF of 0 or 1) excluded."""
    arr = np.asarray(series, dtype=float)
    values, counts = np.unique(arr, return_counts=True)
    tail = arr.size - np.cumsum(counts)
    ccdf = tail / arr.size
    keep = (ccdf > 0) & (ccdf < 1)
    return values[keep], ccdf[keep]


def fit_stretched_exponential(x, ccdf) -> StretchedExpFit:
    """Least-squares fit of ln(-ln CCDF) = ln(mu) + b * ln(x) for the
    model CCDF(x) = exp(-mu * x^b)."""
    x = np.asarray(x, dtype=float)
    ccdf = np.asarray(ccdf, dtype=float)
    if x.size < 5:
        raise DegenerateInputError(
            f"stretched-exponential fit needs >= 5 points, got {x.size}"
        )
    if np.any(x <= 0) or np.any(ccdf <= 0) or np.any(ccdf >= 1):
        raise DegenerateInputError("fit requires x > 0 and 0 < CCDF < 1")
    lx = np.log(x)
    ly = np.log(-np.log(ccdf))
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    rmse = float(np.sqrt(np.mean(resid ** 2)))
    return StretchedExpFit(mu=float(np.exp(intercept)), b=float(slope),
                           fit_rmse=rmse)


def fit_ccdf_stretched_exp(series) -> StretchedExpFit:
    arr = np.asarray(series)
    if arr.size < 50:
        raise DegenerateInputError(
            f"CCDF fit needs >= 50 samples, got {arr.size}"
        )
    if np.any(arr < 1):
        raise DegenerateInputError("CCDF fit requires values >= 1")
    x, ccdf = empirical_ccdf(arr)
    if x.size < 5:
        raise DegenerateInputError(
            f"too few distinct values for a CCDF fit ({x.size})"
        )
    return fit_stretched_exponential(x, ccdf)
