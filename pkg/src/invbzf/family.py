"""The near-uniform parametric family with one half-weight voter.

For ``n`` voters the target is ``beta = (2, ..., 2, 1) / (2n-1)``.  When
all three quota heuristics copy the weights from ``beta``, the realized
game only depends on which subinterval of (0, 1] the quota falls into:

* quota in ``((2j-1)/(2n-1), 2j/(2n-1)]``  -> the light voter is null and
  the power vector is ``(1/(n-1), ..., 1/(n-1), 0)``;
* quota in ``(2j/(2n-1), (2j+1)/(2n-1)]``  -> power is uniform ``1/n``.

Either way the heuristic misses ``beta`` by about ``2/(2n-1)`` in the sum
metric, while the three-weight games

    v(n, a) = [2n + a - 4;  3 x a,  2 x (n-a-1),  1]

get within about ``1/(2n)`` (sum metric, ``a`` near ``6n/7``) or ``1/n^2``
(max metric, ``a`` near ``2n/3``).  This module provides those games,
their closed-form swing counts (weight-3 voters: 2n-a-2, weight-2:
2n-a-4, the light voter: a), and the closed-form deviations per residue
of ``n``, all in exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .games import SwingProfile, WeightedGame, PowerVector
from .targets import TargetVector

INTERVAL_NULL = "I1"  # light voter becomes a null player
INTERVAL_UNIFORM = "I2"  # uniform power


def family_target(n: int) -> TargetVector:
    """beta = (2, ..., 2, 1) / (2n-1)."""
    if n < 2:
        raise ValueError("family needs n >= 2")
    d = 2 * n - 1
    return TargetVector(tuple([Fraction(2, d)] * (n - 1) + [Fraction(1, d)]))


def family_game(n: int, interval: str, j: int) -> WeightedGame:
    """The weighted game (q; 2,...,2,1) with q in the j-th subinterval.

    Weights are scaled by 2n-1, so interval membership of the quota
    becomes an integer threshold: 2j for the null-voter intervals and
    2j+1 for the uniform intervals.
    """
    if interval == INTERVAL_NULL:
        if not 1 <= j <= n - 1:
            raise ValueError("I1 needs 1 <= j <= n-1")
        quota = 2 * j
    elif interval == INTERVAL_UNIFORM:
        if not 0 <= j <= n - 1:
            raise ValueError("I2 needs 0 <= j <= n-1")
        quota = 2 * j + 1
    else:
        raise ValueError(f"unknown interval {interval!r}")
    return WeightedGame(n, quota, tuple([2] * (n - 1) + [1]))


def family_pbi(n: int, interval: str) -> PowerVector:
    """Closed-form power vector for either quota interval."""
    if interval == INTERVAL_NULL:
        vals = [Fraction(1, n - 1)] * (n - 1) + [Fraction(0)]
    elif interval == INTERVAL_UNIFORM:
        vals = [Fraction(1, n)] * n
    else:
        raise ValueError(f"unknown interval {interval!r}")
    return PowerVector(tuple(vals))


def family_heuristic_distances(n: int) -> dict:
    """Exact distances of both interval outcomes to the family target."""
    d = 2 * n - 1
    return {
        (INTERVAL_NULL, "d1"): Fraction(2, d),
        (INTERVAL_UNIFORM, "d1"): Fraction(2, d) * Fraction(n - 1, n),
        (INTERVAL_NULL, "dinf"): Fraction(1, d),
        (INTERVAL_UNIFORM, "dinf"): Fraction(1, d) * Fraction(n - 1, n),
    }


@dataclass(frozen=True)
class VnGame:
    """Member of the three-weight family approximating the target."""

    n: int
    a: int

    def __post_init__(self):
        if not 1 <= self.a <= self.n - 2:
            raise ValueError("need 1 <= a <= n-2")

    @property
    def weighted(self) -> WeightedGame:
        w = tuple([3] * self.a + [2] * (self.n - self.a - 1) + [1])
        return WeightedGame(self.n, 2 * self.n + self.a - 4, w)


def vn_swings(n: int, a: int) -> SwingProfile:
    """Closed-form swings of the three-weight family game."""
    VnGame(n, a)  # validate
    per = [2 * n - a - 2] * a + [2 * n - a - 4] * (n - a - 1) + [a]
    return SwingProfile(tuple(per), sum(per))


def a_for_d1(n: int) -> int:
    """Weight-3 head count minimizing the sum-metric deviation."""
    if n < 8:
        raise ValueError("closed forms stated for n >= 8")
    base = 6 * n // 7
    return base if n % 7 in (1, 2, 3) else base - 1


def table8_deviation(n: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Signed deviations (B - beta) per weight type and the total d1.

    The closed forms are per residue of n mod 7 with k = n // 7; they
    equal the exact deviations of v(n, a_for_d1(n)) from the family
    target.
    """
    a = a_for_d1(n)
    k, r = divmod(n, 7)
    if r == 0:
        den = (14 * k - 1) * k * (56 * k - 11)
        dev3, dev2 = Fraction(1, den), Fraction(-(28 * k - 3), den)
        dev1 = Fraction(28 * k * k - 9 * k + 1, den)
        total = Fraction(2 * (28 * k - 3), (14 * k - 1) * (56 * k - 11))
    elif r == 1:
        dev3 = Fraction(0)
        dev2 = Fraction(-1, 2 * k * (14 * k + 1))
        dev1 = Fraction(1, 2 * (14 * k + 1))
        total = Fraction(1, 14 * k + 1)
    elif r == 2:
        den = (14 * k + 3) * (56 * k * k + 19 * k + 2)
        dev3, dev2 = Fraction(-1, den), Fraction(-7 * (4 * k + 1), den)
        dev1 = Fraction(28 * k * k + 13 * k + 1, den)
        total = Fraction(2 * (28 * k * k + 13 * k + 1), den)
    elif r == 3:
        den = (14 * k + 5) * (28 * k * k + 17 * k + 3)
        dev3, dev2 = Fraction(-1, den), Fraction(-2 * (7 * k + 3), den)
        dev1 = Fraction(2 * (7 * k * k + 6 * k + 1), den)
        total = Fraction(4 * (7 * k * k + 6 * k + 1), den)
    elif r == 4:
        den = 14 * (2 * k + 1) * (14 * k * k + 14 * k + 3)
        dev3, dev2 = Fraction(2, den), Fraction(-(14 * k + 5), den)
        dev1 = Fraction(14 * k * k + 7 * k + 1, den)
        total = Fraction(2 * (14 * k * k + 19 * k + 5), den)
    elif r == 5:
        den = (14 * k + 9) * (56 * k * k + 71 * k + 21)
        dev3, dev2 = Fraction(3, den), Fraction(-(28 * k + 15), den)
        dev1 = Fraction(28 * k * k + 25 * k + 6, den)
        total = Fraction(2 * (28 * k * k + 43 * k + 15), den)
    else:
        den = (14 * k + 11) * (28 * k * k + 43 * k + 16)
        dev3, dev2 = Fraction(1, den), Fraction(-2 * (7 * k + 5), den)
        dev1 = Fraction(2 * (7 * k * k + 9 * k + 3), den)
        total = Fraction(4 * (7 * k * k + 12 * k + 5), den)
    return dev3, dev2, dev1, total


def a_for_dinf(n: int) -> int:
    """Weight-3 head count minimizing the max-metric deviation."""
    if n < 8:
        raise ValueError("closed forms stated for n >= 8")
    return (n + 1) // 3 + n // 3 - 1


def b_bound(n: int) -> Fraction:
    """Upper bound on the best weighted-game max-metric deviation.

    Equals the exact max deviation of v(n, a_for_dinf(n)); n^2 * b(n)
    tends to 1.
    """
    if n < 8:
        raise ValueError("bound stated for n >= 8")
    r = n % 3
    if r == 0:
        return Fraction(8 * n - 9, n * (4 * n - 7) * (2 * n - 1))
    if r == 1:
        return Fraction(8 * n - 23, (4 * n * n - 5 * n - 8) * (2 * n - 1))
    return Fraction(4, 4 * n * n - 1)
