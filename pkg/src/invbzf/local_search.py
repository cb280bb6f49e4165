"""Hill climbing over integer-weighted games, with restart and stop rules.

The climber walks the space of integer representations (q; w) with
per-player weights capped at ``max_weight`` (default 4n, enough to
represent every weighted game at the sizes where exact enumerations are
known).  Moves are single-weight increments/decrements, quota steps, and
weight swaps; each step takes the strictly improving neighbor with the
largest improvement, breaking ties toward the lexicographically smallest
weight vector.  Restarts begin at roundings of a random multiple of the
target plus the inflection-quota rounding.

Swing counts are evaluated by a subset-sum dynamic program (all counts
stay below 2^53, so the float64 pipeline is exact); the reported distance
is recomputed in exact rationals.  The shipped unavoidable-deviation
quantiles provide principled stop thresholds: once a climb is below, say,
the 1%-quantile for its size, further search rarely pays.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import numpy as np

from .games import MAX_PLAYERS, SimpleGame, WeightedGame, realize
from .heuristics import qstar_value
from .solver import HEURISTIC_ONLY, SolveResult
from .targets import D1, DINF, Metric, TargetVector, distance


WEIGHT_STEP = "weight"
QUOTA_STEP = "quota"
WEIGHT_SWAP = "swap"
FULL_NEIGHBORHOOD = (WEIGHT_STEP, QUOTA_STEP, WEIGHT_SWAP)


@dataclass(frozen=True)
class SearchConfig:
    max_weight: int | None = None  # default 4n
    restarts: int = 20
    neighborhood: tuple[str, ...] = FULL_NEIGHBORHOOD
    seed: int = 0
    stop_threshold: Fraction | None = None

    def resolved_max_weight(self, n: int) -> int:
        return self.max_weight if self.max_weight is not None else 4 * n

    @classmethod
    def with_quantile_stop(cls, n: int, metric_kind: str, level: str = "q01", **kw):
        """Stop climbs once below the shipped unavoidable-deviation quantile."""
        row = termination_quantiles(n, metric_kind)
        threshold = Fraction(row[level]).limit_denominator(10**9)
        return cls(stop_threshold=threshold, **kw)


def swing_counts(quota: int, weights) -> tuple[int, ...]:
    """Exact per-player swing counts of (quota; weights) by subset-sum DP."""
    w = np.asarray(weights, dtype=np.int64)
    total = int(w.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for wi in w:
        if wi == 0:
            counts *= 2.0
        else:
            counts[wi:] = counts[wi:] + counts[:-wi]
    per = []
    for wi in w:
        if wi == 0:
            per.append(0)
            continue
        excl = _deconvolve(counts, int(wi))
        lo = max(0, quota - int(wi))
        per.append(int(round(excl[lo:quota].sum())))
    return tuple(per)


def _deconvolve(poly: np.ndarray, w: int) -> np.ndarray:
    """Coefficients of poly / (1 + x^w): alternating cumsums per residue."""
    out = np.empty_like(poly)
    for r in range(w):
        arr = poly[r::w]
        signs = np.ones(arr.shape[0])
        signs[1::2] = -1.0
        out[r::w] = signs * np.cumsum(signs * arr)
    return out


def _exact_distance(metric: Metric, per, beta) -> Fraction:
    total = sum(per)
    power = [Fraction(s, total) for s in per]
    d = distance(metric, power, beta)
    return d if isinstance(d, Fraction) else d  # d1w returns mpf; callers know


def _float_distance(metric_kind: str, per, beta_f) -> float:
    total = sum(per)
    if total == 0:
        return float("inf")
    dev = [s / total - b for s, b in zip(per, beta_f)]
    if metric_kind == D1:
        return sum(abs(x) for x in dev)
    return max(abs(x) for x in dev)


def _neighbors(quota: int, weights: tuple[int, ...], max_weight: int,
               moves: tuple[str, ...] = FULL_NEIGHBORHOOD):
    n = len(weights)
    total = sum(weights)
    if WEIGHT_STEP in moves:
        for i in range(n):
            if weights[i] < max_weight:
                yield quota, weights[:i] + (weights[i] + 1,) + weights[i + 1 :]
            if weights[i] > 0 and total - 1 >= quota:
                yield quota, weights[:i] + (weights[i] - 1,) + weights[i + 1 :]
    if QUOTA_STEP in moves:
        if quota > 1:
            yield quota - 1, weights
        if quota < total:
            yield quota + 1, weights
    if WEIGHT_SWAP in moves:
        for i in range(n):
            for j in range(i + 1, n):
                if weights[i] != weights[j]:
                    w = list(weights)
                    w[i], w[j] = w[j], w[i]
                    yield quota, tuple(w)


def _initial_point(beta, rng: random.Random, max_weight: int) -> tuple[int, tuple[int, ...]]:
    """Stochastic rounding of a random multiple of the target.

    Rounding each coordinate up or down independently breaks the symmetry
    between target-tied players, which plain rounding would preserve and
    strict-improvement climbs could never undo.
    """
    n = len(beta)
    top = max(float(b) for b in beta)
    scale = rng.uniform(1.0, max_weight / top if top > 0 else max_weight)
    weights = []
    for b in beta:
        x = scale * float(b)
        base = int(x)
        w = base + (1 if rng.random() < x - base else 0)
        weights.append(min(max_weight, w))
    weights = tuple(weights)
    if sum(weights) == 0:
        weights = (1,) + weights[1:]
    total = sum(weights)
    qstar = float(qstar_value(TargetVector(tuple(beta)))) if sum(beta) == 1 else 0.5
    quota = min(max(1, round(qstar * total)), total)
    return quota, weights


def hill_climb(beta, metric: Metric, config: SearchConfig = SearchConfig()) -> SolveResult:
    """Best weighted game found over all restarts (an upper bound only).

    Deterministic for a fixed (target, config) pair; the reported distance
    is exact and always realized by the reported integer representation.
    """
    beta_t = beta.beta if isinstance(beta, TargetVector) else tuple(Fraction(b) for b in beta)
    n = len(beta_t)
    if n > MAX_PLAYERS:
        raise ValueError(f"hill climbing supports n <= {MAX_PLAYERS}")
    max_weight = config.resolved_max_weight(n)
    beta_f = [float(b) for b in beta_t]
    rng = random.Random(config.seed)
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    steps = 0
    for _ in range(config.restarts):
        quota, weights = _initial_point(beta_t, rng, max_weight)
        cur_per = swing_counts(quota, weights)
        cur_d = _exact_distance(metric, cur_per, beta_t)
        while True:
            steps += 1
            if config.stop_threshold is not None and cur_d <= config.stop_threshold:
                break
            cand_list = []
            best_f = None
            for q2, w2 in _neighbors(quota, weights, max_weight, config.neighborhood):
                per = swing_counts(q2, w2)
                if sum(per) == 0:
                    continue
                f = _float_distance(metric.kind, per, beta_f)
                if best_f is None or f < best_f - 1e-12:
                    best_f = f
                    cand_list = [(q2, w2, per)]
                elif f <= best_f + 1e-12:
                    cand_list.append((q2, w2, per))
            if best_f is None or best_f >= float(cur_d) + 1e-12:
                break
            scored = []
            for q2, w2, per in cand_list:
                d = _exact_distance(metric, per, beta_t)
                scored.append((d, w2, q2, per))
            scored.sort(key=lambda t: (t[0], t[1], t[2]))
            d2, w2, q2, per2 = scored[0]
            if not d2 < cur_d:
                break
            quota, weights, cur_d = q2, w2, d2
        if best is None or cur_d < best[0]:
            best = (cur_d, quota, weights)
    dist, quota, weights = best
    witness = WeightedGame(n, quota, weights)
    game = realize(witness) if n <= MAX_PLAYERS else None
    return SolveResult(
        game, dist, HEURISTIC_ONLY, iterations=steps, witness_weights=witness
    )


def termination_quantiles(n: int, metric_kind: str) -> dict[str, float]:
    """Unavoidable-deviation quantiles for deciding when to stop searching.

    Rows for n <= 7 are full-grid exact statistics; larger sizes are
    sampled estimates.  Raises KeyError when no row is shipped.
    """
    if metric_kind not in (D1, DINF):
        raise KeyError(f"no quantile table for metric {metric_kind!r}")
    text = resources.files("invbzf.data").joinpath("unavoidable_grid.csv").read_text()
    for row in csv.DictReader(text.splitlines()):
        if int(row["n"]) == n and row["metric"] == metric_kind:
            return {
                "median": float(row["median"]),
                "average": float(row["average"]),
                "q10": float(row["q10"]),
                "q05": float(row["q05"]),
                "q01": float(row["q01"]),
                "sampled": bool(int(row["sampled"])),
            }
    raise KeyError(f"no shipped quantile row for n={n}, metric={metric_kind}")
