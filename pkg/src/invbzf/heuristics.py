"""Quota heuristics: weights equal to the target, quota by a fixed rule.

All three rules take the voting weights verbatim from the desired power
vector and differ only in the decision quota:

* ``HALF``     -- simple majority, q = 1/2;
* ``QSTAR``    -- q = (1 + sqrt(sum w_i^2)) / 2, the quota at the
  inflection point of the normal approximation to the random coalition
  weight, which makes weight and power approximately proportional;
* ``QBAR``     -- q = 1/2 + 1/sqrt(pi*n), the average of the former over
  square-root targets drawn from a flat population prior.

Rounding the quota carelessly can flip coalitions and change the game, so
coalition decisions are taken exactly: rationally for HALF and (after
squaring) for QSTAR, and with high-precision interval arithmetic plus an
explicit ambiguity flag for the irrational QBAR quota.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .games import SimpleGame, pbi
from .targets import (
    DEFAULT_DPS,
    Metric,
    TargetVector,
    _mpf_to_fraction,
    distance,
)

HALF = "half"
QSTAR = "qstar"
QBAR = "qbar"
RULES = (HALF, QSTAR, QBAR)

AMBIGUITY_MARGIN = Fraction(1, 10**40)


class AmbiguousAtPrecision(ValueError):
    """A coalition's winning status cannot be decided at the configured precision."""


@dataclass(frozen=True)
class HeuristicResult:
    game: SimpleGame
    rule: str
    quota_value: Fraction  # high-precision rational approximation of the quota
    distances: dict = field(default_factory=dict)
    ambiguous: bool = False


def qbar_value(n: int, dps: int = DEFAULT_DPS) -> Fraction:
    """1/2 + 1/sqrt(pi*n) as a rational accurate to ``dps`` digits."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = _qbar_enclosure(n, dps)
    return ((lo + hi) / 2).limit_denominator(10 ** (dps + 5))


def _qbar_enclosure(n: int, dps: int) -> tuple[Fraction, Fraction]:
    from .targets import _interval_to_fractions

    iv = mpmath.iv
    old = iv.prec
    try:
        iv.prec = int(dps * 3.33) + 30
        q = mpmath.iv.mpf(1) / 2 + 1 / iv.sqrt(iv.pi * n)
        return _interval_to_fractions(q)
    finally:
        iv.prec = old


def qstar_value(beta: TargetVector, dps: int = DEFAULT_DPS) -> Fraction:
    """(1 + sqrt(sum beta_i^2)) / 2 as a rational accurate to ``dps`` digits."""
    r = sum(b * b for b in beta.beta)
    with mpmath.workdps(dps + 10):
        val = (1 + mpmath.sqrt(mpmath.mpf(r.numerator) / r.denominator)) / 2
    return _mpf_to_fraction(val).limit_denominator(10 ** (dps + 5))


def heuristic_game(
    beta: TargetVector, rule: str, dps: int = DEFAULT_DPS
) -> HeuristicResult:
    """Realize the weighted game (quota(rule); beta) with exact decisions."""
    if rule not in RULES:
        raise ValueError(f"unknown quota rule {rule!r}")
    n = beta.n
    if n == 1:
        # single player is a dictator under every rule
        game = SimpleGame(1, np.array([False, True]))
        return HeuristicResult(game, rule, Fraction(1, 2))

    sums = _coalition_sums(beta)
    ambiguous = False
    if rule == HALF:
        win = [2 * s >= 1 for s in sums]
        quota = Fraction(1, 2)
    elif rule == QSTAR:
        r = sum(b * b for b in beta.beta)
        # w(S) >= (1 + sqrt(r))/2  iff  2w(S)-1 >= 0 and (2w(S)-1)^2 >= r
        win = [(2 * s - 1 >= 0) and (2 * s - 1) ** 2 >= r for s in sums]
        quota = qstar_value(beta, dps)
    else:
        lo, hi = _qbar_enclosure(n, dps)
        win = []
        for s in sums:
            if s >= hi:
                win.append(True)
            elif s < lo:
                win.append(False)
            else:
                raise AmbiguousAtPrecision(
                    f"coalition weight {s} within the quota enclosure at {dps} digits"
                )
            if abs(s - (lo + hi) / 2) < AMBIGUITY_MARGIN:
                ambiguous = True
        quota = ((lo + hi) / 2).limit_denominator(10 ** (dps + 5))
    game = SimpleGame(n, np.array(win, dtype=bool))
    return HeuristicResult(game, rule, quota, ambiguous=ambiguous)


def _coalition_sums(beta: TargetVector) -> list[Fraction]:
    n = beta.n
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + beta.beta[low.bit_length() - 1]
    return sums


def evaluate_heuristic(
    beta: TargetVector,
    rule: str,
    metrics: tuple[Metric, ...],
    dps: int = DEFAULT_DPS,
) -> HeuristicResult:
    """Heuristic game plus its distances to the target in each metric."""
    result = heuristic_game(beta, rule, dps)
    power = pbi(result.game).values
    dists = {m.kind: distance(m, power, beta.beta, dps) for m in metrics}
    return HeuristicResult(
        result.game, rule, result.quota_value, dists, result.ambiguous
    )
