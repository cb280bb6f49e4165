"""Lower bounds for the inverse problem via major-player reduction.

If all but ``epsilon`` of the normalized power in a game ``v`` sits on
the first ``k`` players, there is a game depending on those players only
whose power vector is within

    rhs(k, epsilon) = (2k+1) * epsilon / (1 - (k+1) * epsilon) + epsilon

of ``B(v)`` in the sum metric (requires 0 < epsilon < 1/(k+1)).  For a
target ``beta`` this yields a two-case lower bound on the best achievable
deviation over *all* n-player games, each case handling one range of the
minor players' combined power:

* ``l1``: if the minor players of the optimum carry at least ``epsilon``,
  their deviation alone is bounded below by a piecewise-linear
  expression minimized over that range;
* ``l2``: otherwise the reduction applies, and the exactly solved
  k-player subproblem (against the unnormalized head of ``beta``) gives
  ``l2 = eps_prime - rhs(k, epsilon)`` by the triangle inequality.

``min(l1, l2)`` is then a valid bound; the best ``epsilon`` balances the
two cases, which reduces to a rational quadratic equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .games import GameError, SimpleGame


@dataclass(frozen=True)
class AEParameters:
    """Major-player count and concentration slack, 0 < eps < 1/(k+1)."""

    k: int
    epsilon: Fraction

    def __post_init__(self):
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 < eps < Fraction(1, self.k + 1):
            raise ValueError(f"epsilon must lie strictly in (0, 1/{self.k + 1})")


def ae_rhs(params: AEParameters) -> Fraction:
    """(2k+1)eps / (1 - (k+1)eps) + eps."""
    k, eps = params.k, params.epsilon
    return (2 * k + 1) * eps / (1 - (k + 1) * eps) + eps


def reduce_major_players(v: SimpleGame, k: int) -> SimpleGame:
    """Quotient game in which only the first k players matter.

    A coalition wins iff the majority of its extensions by minor-player
    sets win in ``v``.  Raises GameError when the construction degenerates
    (possible when the minor players hold too much power, outside the
    theorem's hypothesis).
    """
    if not 1 <= k < v.n:
        raise ValueError("need 1 <= k < n")
    n = v.n
    minors = n - k
    # winning[U * 2^k + T] reshapes so each column T collects its extensions
    table = v.winning.reshape(1 << minors, 1 << k)
    wins_per_head = table.sum(axis=0)
    quotient = wins_per_head >= (1 << minors) // 2
    if quotient[0] or not quotient[-1]:
        raise GameError(
            "reduction degenerates: minor players decide too much of the game"
        )
    win = quotient[np.arange(1 << n) & ((1 << k) - 1)]
    return SimpleGame(n, win)


def l1_bound(beta, k: int, epsilon: Fraction) -> Fraction:
    """min over x in [eps, 1] of |1 - x - head| + |x - tail|."""
    beta = tuple(Fraction(b) for b in beta)
    eps = Fraction(epsilon)
    head = sum(beta[:k])
    tail = sum(beta[k:])

    def f(x: Fraction) -> Fraction:
        return abs(1 - x - head) + abs(x - tail)

    candidates = [eps, Fraction(1)]
    for bp in (tail, 1 - head):
        if eps <= bp <= 1:
            candidates.append(bp)
    return min(f(x) for x in candidates)


def lower_bound(beta, k: int, epsilon: Fraction, k_solver=None) -> Fraction:
    """min(l1, l2): a valid lower bound on the best d1 deviation from beta.

    ``k_solver(head)`` must return the exact minimum, over all k-player
    simple games, of the d1 distance between the game's power vector and
    the (typically unnormalized) head of ``beta``; by default the
    enumeration solver is used.
    """
    params = AEParameters(k, Fraction(epsilon))
    beta = tuple(Fraction(b) for b in beta)
    if k_solver is None:
        from .solver import head_distance_minimum

        k_solver = head_distance_minimum
    eps_prime = k_solver(beta[:k]) + sum(beta[k:])
    l1 = l1_bound(beta, k, params.epsilon)
    l2 = eps_prime - ae_rhs(params)
    return min(l1, l2)


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    rn, rd = isqrt(x.numerator), isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


def best_epsilon_candidates(beta, k: int, eps_prime: Fraction) -> list[Fraction]:
    """Candidate eps values: a default sweep plus the exact l1 = l2 crossing.

    Balancing 2(eps - tail) with eps' - rhs(k, eps) gives the quadratic
    3K e^2 - (eps'K + 2 tail K + 2k + 4) e + (eps' + 2 tail) = 0, K = k+1.
    """
    beta = tuple(Fraction(b) for b in beta)
    tail = sum(beta[k:])
    kk = k + 1
    cap = Fraction(1, kk)
    cands = [cap / (1 << t) for t in range(1, 12)]
    a = Fraction(3 * kk)
    b = -(eps_prime * kk + 2 * tail * kk + 2 * k + 4)
    c = eps_prime + 2 * tail
    disc = b * b - 4 * a * c
    root = _rational_sqrt(disc)
    if root is None and disc > 0:
        approx = Fraction(float(disc) ** 0.5).limit_denominator(10**12)
        root = approx
    if root is not None:
        for sign in (1, -1):
            e = (-b + sign * root) / (2 * a)
            if 0 < e < cap:
                cands.append(e)
    return [e for e in cands if 0 < e < cap]


def lower_bound_best(beta, k: int, k_solver=None) -> tuple[Fraction, Fraction]:
    """Best (largest) bound over the eps sweep; returns (bound, eps)."""
    beta = tuple(Fraction(b) for b in beta)
    if k_solver is None:
        from .solver import head_distance_minimum

        k_solver = head_distance_minimum
    eps_prime = k_solver(beta[:k]) + sum(beta[k:])

    def bound_at(eps: Fraction) -> Fraction:
        l1 = l1_bound(beta, k, eps)
        l2 = eps_prime - ae_rhs(AEParameters(k, eps))
        return min(l1, l2)

    best = None
    for eps in best_epsilon_candidates(beta, k, eps_prime):
        val = bound_at(eps)
        if best is None or val > best[0]:
            best = (val, eps)
    return best
