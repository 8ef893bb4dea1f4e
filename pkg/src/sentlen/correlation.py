"""Pairwise association between two aligned length series: Pearson's r,
Kendall's tau-b, Goodman-Kruskal gamma, Spearman's rho, and the
least-squares linear map between series.

Rank-test p-values use the standard large-sample normal (or t)
approximations; below n = 10 they switch to exact enumeration over all
permutations of one argument.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata
from scipy.stats import t as t_dist

from .distribution import LinearMap
from .exceptions import DegenerateInputError

EXACT_PVALUE_BELOW_N = 10


@dataclass(frozen=True)
class PearsonResult:
    r: float


@dataclass(frozen=True)
class RankTestResult:
    statistic: float
    p_value: float
    null_rejected_at: float

    @property
    def rejected(self) -> bool:
        return self.p_value < self.null_rejected_at


def _validate_pair(x, y, min_n=2):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("inputs must be one-dimensional")
    if x.size != y.size:
        raise ValueError(f"length mismatch: {x.size} vs {y.size}")
    if x.size < min_n:
        raise DegenerateInputError(f"need at least {min_n} points, got {x.size}")
    return x, y


def pearson(x, y) -> PearsonResult:
    """Sample Pearson correlation: covariance over the product of
    standard deviations (matching 1/N normalization on both sides)."""
    x, y = _validate_pair(x, y)
    dx = x - x.mean()
    dy = y - y.mean()
    sx = math.sqrt(float(np.dot(dx, dx)))
    sy = math.sqrt(float(np.dot(dy, dy)))
    if sx == 0 or sy == 0:
        raise DegenerateInputError("zero variance input to pearson")
    return PearsonResult(r=float(np.dot(dx, dy)) / (sx * sy))


def _count_inversions(values: list) -> int:
    """Strict inversions (i < j with values[i] > values[j]) by merge sort."""
    n = len(values)
    if n < 2:
        return 0
    mid = n // 2
    left = values[:mid]
    right = values[mid:]
    count = _count_inversions(left) + _count_inversions(right)
    i = j = k = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            values[k] = left[i]
            i += 1
        else:
            # left[i..] all exceed right[j]
            count += len(left) - i
            values[k] = right[j]
            j += 1
        k += 1
    values[k:] = left[i:] if i < len(left) else right[j:]
    return count


def _tie_pair_count(arr: np.ndarray) -> int:
    _, counts = np.unique(arr, return_counts=True)
    return int(np.sum(counts * (counts - 1)) // 2)


def concordance_counts(x, y) -> tuple[int, int, int, int, int]:
    """(C, D, n0, tx, ty): concordant and discordant pair counts plus
    total pairs and pairs tied in x and in y.

    D comes from Knight's algorithm: sort by (x, y) and count strict
    inversions of y, which skips pairs tied in either coordinate.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    n0 = n * (n - 1) // 2
    order = np.lexsort((y, x))
    d = _count_inversions(list(y[order]))
    tx = _tie_pair_count(x)
    ty = _tie_pair_count(y)
    txy = _tie_pair_count(x + 1j * y)
    c = n0 - tx - ty + txy - d
    return c, d, n0, tx, ty


def _exact_rank_pvalues(x, y):
    """Exact two-sided p-values for tau-b, gamma and rho by enumerating
    every permutation of y.  Only feasible for small n."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = x.size
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    yp = y[perms]
    conc = np.zeros(perms.shape[0], dtype=np.int64)
    disc = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n - 1):
        for j in range(i + 1, n):
            sx = np.sign(x[i] - x[j])
            if sx == 0:
                continue
            sy = np.sign(yp[:, i] - yp[:, j])
            prod = sx * sy
            conc += prod > 0
            disc += prod < 0
    n0 = n * (n - 1) // 2
    tx = _tie_pair_count(x)
    ty = _tie_pair_count(y)
    denom_tau = math.sqrt((n0 - tx) * (n0 - ty))
    taus = (conc - disc) / denom_tau
    cd = conc + disc
    with np.errstate(divide="ignore", invalid="ignore"):
        gammas = np.where(cd > 0, (conc - disc) / np.where(cd > 0, cd, 1), 0.0)

    rx = rankdata(x) - (n + 1) / 2
    ry = rankdata(y) - (n + 1) / 2
    norm = math.sqrt(float(np.dot(rx, rx)) * float(np.dot(ry, ry)))
    rhos = (ry[perms] @ rx) / norm

    def pval(stats):
        obs = stats[0]  # identity permutation comes first
        return float(np.mean(np.abs(stats) >= abs(obs) - 1e-12))

    return pval(taus), pval(gammas), pval(rhos)


def _tau_normal_pvalue(c, d, x, y) -> float:
    """Normal approximation with the tie-corrected variance of C - D."""
    n = len(x)

    def tie_sums(arr):
        _, counts = np.unique(arr, return_counts=True)
        t = counts.astype(np.int64)
        return (int(np.sum(t * (t - 1) * (2 * t + 5))),
                int(np.sum(t * (t - 1))),
                int(np.sum(t * (t - 1) * (t - 2))))

    vt, t1, t2 = tie_sums(np.asarray(x, dtype=float))
    vu, u1, u2 = tie_sums(np.asarray(y, dtype=float))
    v0 = n * (n - 1) * (2 * n + 5)
    var = (v0 - vt - vu) / 18.0
    var += t1 * u1 / (2.0 * n * (n - 1))
    if n > 2:
        var += t2 * u2 / (9.0 * n * (n - 1) * (n - 2))
    if var <= 0:
        return 0.0
    z = (c - d) / math.sqrt(var)
    return math.erfc(abs(z) / math.sqrt(2.0))


def kendall_tau(x, y, threshold: float = 0.01) -> RankTestResult:
    """Tie-corrected Kendall tau-b with two-sided p-value."""
    x, y = _validate_pair(x, y)
    c, d, n0, tx, ty = concordance_counts(x, y)
    if tx == n0 or ty == n0:
        raise DegenerateInputError("all-tied input to kendall_tau")
    tau = (c - d) / math.sqrt((n0 - tx) * (n0 - ty))
    if x.size < EXACT_PVALUE_BELOW_N:
        p, _, _ = _exact_rank_pvalues(x, y)
    else:
        p = _tau_normal_pvalue(c, d, x, y)
    return RankTestResult(statistic=tau, p_value=p, null_rejected_at=threshold)


def goodman_kruskal_gamma(x, y, threshold: float = 0.01) -> RankTestResult:
    """gamma = (C - D) / (C + D), ties excluded from both counts."""
    x, y = _validate_pair(x, y)
    c, d, _, _, _ = concordance_counts(x, y)
    if c + d == 0:
        raise DegenerateInputError("all pairs tied: gamma undefined")
    gamma = (c - d) / (c + d)
    n = x.size
    if n < EXACT_PVALUE_BELOW_N:
        _, p, _ = _exact_rank_pvalues(x, y)
    elif abs(gamma) >= 1.0:
        p = 0.0
    else:
        z = gamma * math.sqrt((c + d) / (n * (1.0 - gamma * gamma)))
        p = math.erfc(abs(z) / math.sqrt(2.0))
    return RankTestResult(statistic=float(gamma), p_value=p,
                          null_rejected_at=threshold)


def spearman(x, y, threshold: float = 0.01) -> RankTestResult:
    """Pearson correlation of mid-ranks; p-value from the t
    approximation with n - 2 degrees of freedom."""
    x, y = _validate_pair(x, y)
    rho = pearson(rankdata(x), rankdata(y)).r
    n = x.size
    if n < EXACT_PVALUE_BELOW_N:
        _, _, p = _exact_rank_pvalues(x, y)
    elif abs(rho) >= 1.0:
        p = 0.0
    else:
        t_stat = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
        p = 2.0 * float(t_dist.sf(abs(t_stat), n - 2))
    return RankTestResult(statistic=rho, p_value=p, null_rejected_at=threshold)


def fit_linear_map(x, y) -> LinearMap:
    """Ordinary least squares y ~ alpha * x + beta."""
    x, y = _validate_pair(x, y)
    dx = x - x.mean()
    sxx = float(np.dot(dx, dx))
    if sxx == 0:
        raise DegenerateInputError("constant x: linear map undefined")
    alpha = float(np.dot(dx, y - y.mean())) / sxx
    beta = float(y.mean() - alpha * x.mean())
    return LinearMap(alpha=alpha, beta=beta)
