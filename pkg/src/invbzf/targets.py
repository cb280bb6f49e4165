"""Target power vectors, distance measures, and the simplex grid.

A target is a nonnegative rational vector summing to one: the power
distribution a designer would like a voting system to induce.  Three
deviation measures are supported: the sum of absolute deviations, the
maximum absolute deviation, and the population-weighted variant that
multiplies each voter's deviation by the square root of its relative
population (the natural yardstick for two-tier systems designed around
the square-root rule).

The grid of targets with step ``s`` consists of every non-increasing
vector whose first ``n-1`` entries are multiples of ``s`` and whose last
entry closes the sum to one; with ``s = 1/M`` these are exactly the
partitions of ``M`` into at most ``n`` parts.  Enumeration is in
lexicographically ascending order, and counting/unranking make uniform
sampling possible without materializing the grid.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import mpmath

DEFAULT_DPS = 50


class TargetError(ValueError):
    """Raised for malformed targets, metrics, or population data."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TargetError("floats are not accepted for exact targets; pass Fractions")
    return Fraction(x)


@dataclass(frozen=True)
class TargetVector:
    """Exact nonnegative rational vector summing to 1."""

    beta: tuple[Fraction, ...]

    def __post_init__(self):
        beta = tuple(_as_fraction(b) for b in self.beta)
        object.__setattr__(self, "beta", beta)
        if any(b < 0 for b in beta):
            raise TargetError("target entries must be nonnegative")
        if sum(beta) != 1:
            raise TargetError(f"target entries must sum to 1, got {sum(beta)}")

    @property
    def n(self) -> int:
        return len(self.beta)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self.beta)

    def to_json_obj(self) -> dict:
        return {"beta": [f"{b.numerator}/{b.denominator}" for b in self.beta]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "TargetVector":
        return cls(tuple(Fraction(s) for s in obj["beta"]))


@dataclass(frozen=True)
class PopulationVector:
    """Named constituencies with positive integer populations."""

    names: tuple[str, ...]
    populations: tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.populations):
            raise TargetError("one name per population")
        if len(set(self.names)) != len(self.names):
            raise TargetError("duplicate constituency name")
        if any(p < 1 for p in self.populations):
            raise TargetError("populations must be positive integers")

    @property
    def n(self) -> int:
        return len(self.populations)


D1 = "d1"
DINF = "dinf"
D1W = "d1w"


@dataclass(frozen=True)
class Metric:
    """One of the supported deviation measures.

    ``d1`` and ``dinf`` are exact on rational inputs; ``d1w`` weights each
    absolute deviation by sqrt(p_i / sum p_j) and is evaluated in
    high-precision arithmetic because the weights are irrational.
    """

    kind: str
    population: PopulationVector | None = None

    def __post_init__(self):
        if self.kind not in (D1, DINF, D1W):
            raise TargetError(f"unknown metric kind {self.kind!r}")
        if self.kind == D1W and self.population is None:
            raise TargetError("d1w requires a population vector")

    @classmethod
    def d1(cls) -> "Metric":
        return cls(D1)

    @classmethod
    def dinf(cls) -> "Metric":
        return cls(DINF)

    @classmethod
    def d1_weighted(cls, population: PopulationVector) -> "Metric":
        return cls(D1W, population)


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    man, exp = int(man), int(exp)  # gmpy2-backed mpmath hands out mpz
    if man == 0:
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


def _mpf_to_fraction(x) -> Fraction:
    # read the mantissa directly; mpmath.mpf(x) would re-round to the
    # *global* working precision and silently discard digits
    raw = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    return _raw_to_fraction(raw)


def _interval_to_fractions(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath interval number."""
    lo_raw, hi_raw = x._mpi_
    return _raw_to_fraction(lo_raw), _raw_to_fraction(hi_raw)


def _fraction_to_mpf(f: Fraction):
    return mpmath.mpf(f.numerator) / f.denominator


def _sqrt_weights(p: PopulationVector, dps: int):
    total = sum(p.populations)
    with mpmath.workdps(dps):
        return [mpmath.sqrt(mpmath.mpf(pi) / total) for pi in p.populations]


def distance(metric: Metric, x: Sequence, y: Sequence, dps: int = DEFAULT_DPS):
    """Deviation between two power vectors under the given metric.

    Returns an exact Fraction for d1/dinf and an mpmath float for d1w.
    """
    if len(x) != len(y):
        raise TargetError(f"length mismatch: {len(x)} vs {len(y)}")
    if metric.kind == D1:
        return sum(abs(_as_fraction(a) - _as_fraction(b)) for a, b in zip(x, y))
    if metric.kind == DINF:
        return max(abs(_as_fraction(a) - _as_fraction(b)) for a, b in zip(x, y))
    pop = metric.population
    if pop.n != len(x):
        raise TargetError("population length must match the vectors")
    weights = _sqrt_weights(pop, dps)
    with mpmath.workdps(dps):
        return sum(
            w * abs(_fraction_to_mpf(Fraction(a) - Fraction(b)))
            for w, a, b in zip(weights, x, y)
        )


@dataclass(frozen=True)
class SqrtRuleTarget:
    """Square-root-rule target with a certified approximation bound.

    ``vector`` holds rational approximations (renormalized to sum to 1
    exactly); every entry is within ``error_bound`` of the true value
    sqrt(p_i) / sum_j sqrt(p_j).
    """

    vector: TargetVector
    error_bound: Fraction
    dps: int


def sqrt_rule_target(p: PopulationVector, dps: int = DEFAULT_DPS) -> SqrtRuleTarget:
    """Target beta_i = sqrt(p_i) / sum_j sqrt(p_j) to ``dps`` digits.

    Uses interval arithmetic for a certified enclosure.  If every
    population is a perfect square the result is exact.
    """
    roots = [_isqrt_exact(pi) for pi in p.populations]
    if all(r is not None for r in roots):
        total = sum(roots)
        beta = tuple(Fraction(r, total) for r in roots)
        return SqrtRuleTarget(TargetVector(beta), Fraction(0), dps)

    iv = mpmath.iv
    old_prec = iv.prec
    try:
        iv.prec = int(dps * 3.33) + 30
        rts = [iv.sqrt(pi) for pi in p.populations]
        total = sum(rts)
        bounds = [_interval_to_fractions(r / total) for r in rts]
        lo = [b[0] for b in bounds]
        hi = [b[1] for b in bounds]
    finally:
        iv.prec = old_prec
    quant = Fraction(1, 10 ** (dps + 5))
    approx = [((l + h) / 2).limit_denominator(quant.denominator) for l, h in zip(lo, hi)]
    width = max(h - l for l, h in zip(lo, hi))
    per_entry = width / 2 + quant
    # close the sum exactly on the largest coordinate
    deficit = 1 - sum(approx)
    k = max(range(p.n), key=lambda i: approx[i])
    approx[k] += deficit
    bound = per_entry * (p.n + 1)
    return SqrtRuleTarget(TargetVector(tuple(approx)), bound, dps)


def _isqrt_exact(x: int):
    r = int(x) ** 0.5
    for cand in (int(r) - 1, int(r), int(r) + 1):
        if cand >= 0 and cand * cand == x:
            return cand
    return None


@lru_cache(maxsize=None)
def _partition_count(m: int, parts: int, cap: int) -> int:
    """Partitions of m into at most ``parts`` parts, each at most ``cap``."""
    if m == 0:
        return 1
    if parts == 0 or cap == 0:
        return 0
    first_max = min(m, cap)
    first_min = -(-m // parts)  # smallest feasible largest part
    return sum(
        _partition_count(m - c, parts - 1, c) for c in range(first_min, first_max + 1)
    )


def _step_resolution(s) -> int:
    s = _as_fraction(s)
    if s.numerator != 1:
        raise TargetError("step must be 1/M for an integer M")
    return s.denominator


def grid_count(n: int, s=Fraction(1, 100)) -> int:
    """Number of grid targets for n voters at step s."""
    if n < 2:
        raise TargetError("grid needs n >= 2")
    m = _step_resolution(s)
    return _partition_count(m, n, m)


def grid_points(n: int, s=Fraction(1, 100)) -> Iterator[TargetVector]:
    """All grid targets in lexicographically ascending order."""
    if n < 2:
        raise TargetError("grid needs n >= 2")
    m = _step_resolution(s)

    def rec(prefix: list[int], remaining: int, parts_left: int, cap: int):
        if parts_left == 1:
            yield prefix + [remaining]
            return
        lo = -(-remaining // parts_left)
        for c in range(lo, min(cap, remaining) + 1):
            yield from rec(prefix + [c], remaining - c, parts_left - 1, c)

    for parts in rec([], m, n, m):
        yield TargetVector(tuple(Fraction(c, m) for c in parts))


def grid_unrank(n: int, s, rank: int) -> TargetVector:
    """The grid target at the given lexicographic rank (0-based)."""
    m = _step_resolution(s)
    total = _partition_count(m, n, m)
    if not 0 <= rank < total:
        raise TargetError(f"rank {rank} outside 0..{total - 1}")
    parts: list[int] = []
    remaining, parts_left, cap = m, n, m
    while parts_left > 1:
        lo = -(-remaining // parts_left)
        for c in range(lo, min(cap, remaining) + 1):
            block = _partition_count(remaining - c, parts_left - 1, c)
            if rank < block:
                parts.append(c)
                remaining -= c
                parts_left -= 1
                cap = c
                break
            rank -= block
    parts.append(remaining)
    return TargetVector(tuple(Fraction(c, m) for c in parts))


def grid_sample(n: int, s, count: int, seed: int) -> list[TargetVector]:
    """Uniform i.i.d. draws from the grid (with replacement), seeded.

    Sampling unranks random indices, so no part of the grid is ever
    materialized and memory stays O(n).
    """
    if count < 1:
        raise TargetError("count must be >= 1")
    total = grid_count(n, s)
    rng = random.Random(seed)
    return [grid_unrank(n, s, rng.randrange(total)) for _ in range(count)]


def load_population_csv(path) -> PopulationVector:
    """Read a ``name,population`` CSV into a PopulationVector (file order)."""
    names: list[str] = []
    pops: list[int] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip().lower() for h in header] != ["name", "population"]:
            raise TargetError("expected header 'name,population'")
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 2:
                raise TargetError(f"line {lineno}: expected 2 fields, got {len(row)}")
            name = row[0].strip()
            try:
                population = int(row[1])
            except ValueError as exc:
                raise TargetError(f"line {lineno}: population must be an integer") from exc
            if population <= 0:
                raise TargetError(f"line {lineno}: population must be positive")
            names.append(name)
            pops.append(population)
    if not names:
        raise TargetError("no data rows in population file")
    return PopulationVector(tuple(names), tuple(pops))
