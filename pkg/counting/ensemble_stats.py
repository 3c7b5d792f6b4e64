"""
Ensemble Statistics - Bethe constants, means, growth rates and fluctuation curves

This module turns per-graph exact counts into the quantities the experiments
report: the mean count per size, the per-vertex growth estimate
r_est = exp(ln(mean) / n), the empirical fluctuation curve f(epsilon) of
|ln Z - n ln r|, and the exponential fit of build cost against size.

Example usage:
    from counting.ensemble_stats import bethe_constants, rate_from_mean

    print(bethe_constants().w)          # 1.5456341...
    print(rate_from_mean(13.464, 6))    # 1.5423952668...
"""

import logging
import math
from bisect import bisect_right
from typing import TYPE_CHECKING, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from counting.constraints import ConstraintMode
from counting.reference_data import published_means

logger = logging.getLogger(__name__)

if TYPE_CHECKING:
    from counting.experiment import CountRecord


class ExperimentError(ValueError):
    """Base class for experiment and statistics errors."""
    pass


class EmptySample(ExperimentError):
    pass


class InsufficientData(ExperimentError):
    pass


# ============================================================================
# BETHE CONSTANTS
# ============================================================================

class BetheConstants:
    """
    Bethe growth constant for independent sets of 3-regular graphs.

    Attributes:
        z: The real root of z^3 + z - 1 = 0 (0 < z < 1)
        w: z^(-3/2) (2 - z)^(-1/2)
    """

    def __init__(self, z: float):
        self.z = z
        self.w = z ** -1.5 * (2.0 - z) ** -0.5

    @property
    def residual(self) -> float:
        return self.z ** 3 + self.z - 1.0

    @property
    def ln_w(self) -> float:
        return math.log(self.w)

    def to_dict(self) -> dict:
        return {'z': self.z, 'w': self.w, 'residual': self.residual}


def bethe_constants() -> BetheConstants:
    """
    Solve z^3 + z - 1 = 0 on [0, 1] and derive w.

    The cubic is strictly increasing with values -1 at 0 and 1 at 1, so the
    bracketed root is unique.
    """
    z = brentq(lambda t: t ** 3 + t - 1.0, 0.0, 1.0, xtol=1e-16, rtol=1e-15, maxiter=200)
    return BetheConstants(z)


# ============================================================================
# MEANS AND RATE ESTIMATES
# ============================================================================

def _records_of_size(records: Iterable['CountRecord'], n: int) -> List['CountRecord']:
    selected = [r for r in records if r.size == n]
    zeros = sum(1 for r in selected if r.count == 0)
    if zeros:
        logger.warning("Excluding %d zero-count record(s) of size %d", zeros, n)
        selected = [r for r in selected if r.count > 0]
    if not selected:
        raise EmptySample(f"No usable records of size {n}")
    return selected


def rate_from_mean(mean: float, n: int) -> float:
    """Per-vertex growth estimate exp(ln(mean) / n)."""
    if n <= 0 or mean <= 0:
        raise ValueError(f"Need n > 0 and mean > 0, got n={n}, mean={mean}")
    return math.exp(math.log(mean) / n)


def summarize(records: Sequence['CountRecord'], n: int) -> Tuple[float, float]:
    """
    Mean count and rate estimate for the records of size n.

    The mean is taken over Z itself (exact big-integer sum, one final
    division); the logarithm is applied to the mean.

    Returns:
        tuple: (mean, rate_estimate)

    Raises:
        EmptySample: If there are no records of size n
    """
    selected = _records_of_size(records, n)
    total = sum(r.count for r in selected)
    samples = len(selected)
    mean = total / samples
    ln_mean = math.log(total) - math.log(samples)
    return mean, math.exp(ln_mean / n)


def standard_error(records: Sequence['CountRecord'], n: int) -> float:
    """Standard error of the mean count for size n (0 for a single record)."""
    selected = _records_of_size(records, n)
    if len(selected) < 2:
        return 0.0
    counts = np.array([float(r.count) for r in selected])
    return float(counts.std(ddof=1) / math.sqrt(len(counts)))


def summary_rows(records: Sequence['CountRecord'], reference_rate: float) -> List[Dict]:
    """One summary row per size, sorted by size."""
    rows = []
    for n in sorted({r.size for r in records}):
        mean, rate = summarize(records, n)
        rows.append({
            'size': n,
            'samples': sum(1 for r in records if r.size == n),
            'mean': mean,
            'rate_estimate': rate,
            'reference_rate': reference_rate,
            'standard_error': standard_error(records, n),
        })
    return rows


def compare_with_reference(rows: Sequence[Dict], mode: ConstraintMode) -> List[Dict]:
    """
    Relative deviation of measured means from the published 3-regular table.

    Only sizes present in the table are returned (kernels start at n = 8).
    """
    table = published_means(mode)
    comparison = []
    for row in rows:
        if row['size'] not in table:
            continue
        published_mean, published_rate = table[row['size']]
        comparison.append({
            'size': row['size'],
            'mean': row['mean'],
            'published_mean': published_mean,
            'relative_deviation': (row['mean'] - published_mean) / published_mean,
            'rate_estimate': row['rate_estimate'],
            'published_rate': published_rate,
        })
    return comparison


# ============================================================================
# FLUCTUATION CURVES
# ============================================================================

class FluctuationCurve:
    """
    Empirical f(epsilon) for one size: the upper quantile function of the diffs.

    Points (epsilon_i, f_i) = ((i - 1) / M, d_(i)) with diffs sorted descending,
    so f(0) is the largest observed |ln Z - n ln r| and f never increases
    as epsilon grows.
    """

    def __init__(self, size: int, points: List[Tuple[float, float]]):
        self.size = size
        self.points = points

    @property
    def epsilons(self) -> List[float]:
        return [e for e, _ in self.points]

    @property
    def values(self) -> List[float]:
        return [f for _, f in self.points]

    @property
    def f0(self) -> float:
        """Largest observed difference."""
        return self.points[0][1]

    def f_at(self, epsilon: float) -> float:
        """Step-function value at epsilon in [0, 1)."""
        if not 0.0 <= epsilon < 1.0:
            raise ValueError(f"epsilon must lie in [0, 1), got {epsilon}")
        i = bisect_right(self.epsilons, epsilon) - 1
        return self.points[max(i, 0)][1]

    def levels(self, decimals: int = 9) -> List[float]:
        """Distinct f values, largest first (rounded to merge float noise)."""
        return sorted({round(f, decimals) for f in self.values}, reverse=True)

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"FluctuationCurve(size={self.size}, points={len(self.points)}, f0={self.f0:.6g})"


def fluctuation_curve(records: Sequence['CountRecord'], n: int) -> FluctuationCurve:
    """
    Empirical f(epsilon) from the diffs of the records of size n.

    Raises:
        EmptySample: If there are no records of size n
    """
    selected = _records_of_size(records, n)
    diffs = np.sort(np.array([r.diff for r in selected], dtype=float))[::-1]
    m = len(diffs)
    points = [(i / m, float(d)) for i, d in enumerate(diffs)]
    return FluctuationCurve(n, points)


def mean_diff(records: Sequence['CountRecord'], n: int) -> float:
    """Mean of |ln Z - n ln r| over the records of size n."""
    selected = _records_of_size(records, n)
    return float(np.mean([r.diff for r in selected]))


# ============================================================================
# COMPLEXITY FIT
# ============================================================================

def complexity_fit(access_counts: Sequence[Tuple[int, float]]) -> Tuple[float, float]:
    """
    Fit accesses ~ prefactor * base^n by least squares on (n, ln accesses).

    Args:
        access_counts: (n, accesses) pairs; several pairs per size are allowed

    Returns:
        tuple: (base, prefactor)

    Raises:
        InsufficientData: If fewer than 4 distinct sizes are given
    """
    if len({n for n, _ in access_counts}) < 4:
        raise InsufficientData("Need at least 4 distinct sizes for a growth fit")
    ns = np.array([n for n, _ in access_counts], dtype=float)
    ln_a = np.log(np.array([a for _, a in access_counts], dtype=float))
    slope, intercept = np.polyfit(ns, ln_a, 1)
    return float(np.exp(slope)), float(np.exp(intercept))


# ============================================================================
# REPORTS
# ============================================================================

def format_summary_report(
    rows: Sequence[Dict],
    mode: Optional[ConstraintMode] = None,
    title: str = "ENSEMBLE SUMMARY"
) -> str:
    """
    Format summary rows for display.

    Shows r^n for the reference rate, the measured mean with its standard
    error, the rate estimate, and the published mean when one exists.
    """
    table = published_means(mode) if mode is not None else {}
    lines = []
    lines.append("=" * 78)
    lines.append(title)
    lines.append("=" * 78)
    lines.append(f"{'n':>4}  {'r^n':>14}  {'mean':>16}  {'s.e.':>10}  {'r_est':>14}  {'published':>12}")
    lines.append("-" * 78)

    for row in rows:
        n = row['size']
        predicted = row['reference_rate'] ** n
        published = f"{table[n][0]:12.6g}" if n in table else f"{'-':>12}"
        lines.append(
            f"{n:4d}  {predicted:14.6g}  {row['mean']:16.6f}  {row.get('standard_error', 0.0):10.4g}"
            f"  {row['rate_estimate']:14.11f}  {published}"
        )

    lines.append("=" * 78)
    return '\n'.join(lines)
