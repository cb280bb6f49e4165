"""Distance statistics over the grid of target vectors.

For a whole grid (or a uniform sample of it) this module evaluates, per
target, either a quota heuristic's deviation or the unavoidable deviation
(the enumerated optimum over a game class), and reduces the deviations to
the reported statistics: median, average, and the 10/5/1 percent lower
empirical quantiles (the k-th smallest value with k = ceil(p*m)).

Heuristic decisions are taken in exact integer arithmetic on the grid's
common denominator (the quota thresholds for the irrational rules are
pre-rounded with 50-digit interval arithmetic), so no coalition is ever
misclassified by float rounding; only the final deviation statistics are
floats, quantized far above float error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .enumeration import class_swing_profiles
from .heuristics import HALF, QBAR, QSTAR
from .targets import D1, DINF, grid_count, grid_points, grid_sample

CHUNK_ROWS = 20_000


@lru_cache(maxsize=8)
def grid_matrix(n: int, step_den: int = 100) -> np.ndarray:
    """All grid targets as integer numerators over the step denominator."""
    s = Fraction(1, step_den)
    rows = np.empty((grid_count(n, s), n), dtype=np.int64)
    for r, tv in enumerate(grid_points(n, s)):
        for i, b in enumerate(tv.beta):
            rows[r, i] = b.numerator * (step_den // b.denominator)
    return rows


def sample_matrix(n: int, count: int, seed: int, step_den: int = 100) -> np.ndarray:
    s = Fraction(1, step_den)
    pts = grid_sample(n, s, count, seed)
    rows = np.empty((count, n), dtype=np.int64)
    for r, tv in enumerate(pts):
        for i, b in enumerate(tv.beta):
            rows[r, i] = b.numerator * (step_den // b.denominator)
    return rows


@lru_cache(maxsize=64)
def _qbar_threshold_int(n: int, step_den: int) -> int:
    """Smallest integer weight sum meeting the 1/2 + 1/sqrt(pi n) quota."""
    with mpmath.workdps(60):
        t = step_den * (mpmath.mpf(1) / 2 + 1 / mpmath.sqrt(mpmath.pi * n))
        ceil_t = int(mpmath.ceil(t))
        if abs(t - mpmath.nint(t)) < mpmath.mpf(10) ** -40:
            raise ArithmeticError("quota threshold ambiguous at 40 digits")
    return ceil_t


def _winning_chunk(c: np.ndarray, rule: str, step_den: int) -> np.ndarray:
    """Bool (rows, 2^n) winning table for weights = target rows."""
    n = c.shape[1]
    member = ((np.arange(1 << n)[None, :] >> np.arange(n)[:, None]) & 1).astype(np.int64)
    sums = c @ member  # (rows, 2^n) integer coalition weights (scaled)
    if rule == HALF:
        return 2 * sums >= step_den
    if rule == QSTAR:
        lhs = 2 * sums - step_den
        rsq = (c * c).sum(axis=1, keepdims=True)
        return (lhs >= 0) & (lhs * lhs >= rsq)
    if rule == QBAR:
        return sums >= _qbar_threshold_int(n, step_den)
    raise ValueError(f"unknown rule {rule!r}")


def _swings_chunk(win: np.ndarray, n: int) -> np.ndarray:
    masks = np.arange(win.shape[1])
    out = np.empty((win.shape[0], n), dtype=np.int64)
    for i in range(n):
        idx = masks[(masks >> i) & 1 == 0]
        out[:, i] = np.count_nonzero(win[:, idx | 1 << i] & ~win[:, idx], axis=1)
    return out


def heuristic_grid_distances(
    n: int, rule: str, targets: np.ndarray | None = None, step_den: int = 100
) -> dict[str, np.ndarray]:
    """Deviation of the rule's game from each target, both metrics."""
    c = grid_matrix(n, step_den) if targets is None else targets
    d1_parts, dinf_parts = [], []
    for start in range(0, c.shape[0], CHUNK_ROWS):
        chunk = c[start : start + CHUNK_ROWS]
        win = _winning_chunk(chunk, rule, step_den)
        s = _swings_chunk(win, n)
        tot = s.sum(axis=1, keepdims=True)
        dev = s / tot - chunk / step_den
        d1_parts.append(np.abs(dev).sum(axis=1))
        dinf_parts.append(np.abs(dev).max(axis=1))
    return {D1: np.concatenate(d1_parts), DINF: np.concatenate(dinf_parts)}


def optimal_grid_distances(
    n: int, cls: str, targets: np.ndarray | None = None, step_den: int = 100
) -> dict[str, np.ndarray]:
    """Unavoidable deviation per target: enumerated optimum over the class.

    Both the class power vectors and the targets are descending, so the
    row-wise minimum realizes the minimum over player relabelings.
    """
    c = grid_matrix(n, step_den) if targets is None else targets
    prof = class_swing_profiles(n, cls).astype(np.float64)
    rel = prof / prof.sum(axis=1, keepdims=True)  # (classes, n), descending
    d1_parts, dinf_parts = [], []
    chunk_rows = max(1, min(CHUNK_ROWS, 50_000_000 // max(1, rel.shape[0] * n)))
    for start in range(0, c.shape[0], chunk_rows):
        chunk = c[start : start + chunk_rows] / step_den
        diff = np.abs(rel[None, :, :] - chunk[:, None, :])
        d1_parts.append(diff.sum(axis=2).min(axis=1))
        dinf_parts.append(diff.max(axis=2).min(axis=1))
    return {D1: np.concatenate(d1_parts), DINF: np.concatenate(dinf_parts)}


@dataclass(frozen=True)
class DeviationStats:
    count: int
    median: float
    average: float
    q10: float
    q05: float
    q01: float

    def as_row(self) -> tuple:
        return (self.count, self.median, self.average, self.q10, self.q05, self.q01)


def lower_quantile(sorted_values: np.ndarray, p: float) -> float:
    """k-th smallest with k = ceil(p * m): the lower empirical quantile."""
    m = sorted_values.shape[0]
    k = int(np.ceil(p * m))
    return float(sorted_values[max(k, 1) - 1])


def deviation_stats(values: np.ndarray) -> DeviationStats:
    v = np.sort(np.asarray(values, dtype=float))
    return DeviationStats(
        count=v.shape[0],
        median=lower_quantile(v, 0.5),
        average=float(v.mean()),
        q10=lower_quantile(v, 0.10),
        q05=lower_quantile(v, 0.05),
        q01=lower_quantile(v, 0.01),
    )
