"""Exact weighted-representation certificates.

A complete game with voters sorted by desirability is weighted iff some
sorted nonnegative weight vector separates the shift-minimal winning
coalitions from the shift-maximal losing ones with margin one:

    w(T) >= q               for every shift-minimal winning T,
    w(S) <= q - 1           for every shift-maximal losing S,
    w_1 >= ... >= w_n >= 0.

The separation LP is tiny, so it is solved in floats first (HiGHS) and
then certified exactly: a feasible point is rounded to rationals and
checked with integer arithmetic (and the scaled integer game is realized
and compared coalition by coalition); an infeasible verdict is certified
by a rounded Farkas ray.  A two-phase simplex over Fractions is the
fallback when rounding fails, so every answer is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np
from scipy.optimize import linprog

from .games import (
    EQUAL,
    INCOMPARABLE,
    LESS,
    SimpleGame,
    WeightedGame,
    desirability,
    realize,
    relabel,
)


def shift_minimal_winning(win: np.ndarray, n: int) -> list[int]:
    """Winning coalitions whose every removal or down-shift loses."""
    out = []
    for m in range(1 << n):
        if not win[m]:
            continue
        ok = True
        for j in range(n):
            if not m >> j & 1:
                continue
            if win[m ^ (1 << j)]:
                ok = False
                break
            if j + 1 < n and not m >> (j + 1) & 1:
                if win[m ^ (1 << j) | 1 << (j + 1)]:
                    ok = False
                    break
        if ok:
            out.append(m)
    return out


def shift_maximal_losing(win: np.ndarray, n: int) -> list[int]:
    """Losing coalitions whose every addition or up-shift wins."""
    out = []
    for m in range(1 << n):
        if win[m]:
            continue
        ok = True
        for j in range(n):
            if not m >> j & 1:
                if not win[m | 1 << j]:
                    ok = False
                    break
            elif j >= 1 and not m >> (j - 1) & 1:
                if not win[m ^ (1 << j) | 1 << (j - 1)]:
                    ok = False
                    break
        if ok:
            out.append(m)
    return out


def _separation_system(n: int, smw: list[int], sml: list[int]):
    """Rows of A x <= b over variables (w_1..w_n, q), x >= 0."""
    rows, rhs = [], []
    for t in smw:  # q - w(T) <= 0
        row = [-1 if t >> i & 1 else 0 for i in range(n)] + [1]
        rows.append(row)
        rhs.append(0)
    for s in sml:  # w(S) - q <= -1
        row = [1 if s >> i & 1 else 0 for i in range(n)] + [-1]
        rows.append(row)
        rhs.append(-1)
    for i in range(n - 1):  # w_{i+1} - w_i <= 0
        row = [0] * (n + 1)
        row[i], row[i + 1] = -1, 1
        rows.append(row)
        rhs.append(0)
    return rows, rhs


def _verify_point(n, smw, sml, point) -> WeightedGame | None:
    w, q = point[:n], point[n]
    if any(x < 0 for x in point) or any(w[i] < w[i + 1] for i in range(n - 1)):
        return None
    for t in smw:
        if sum(w[i] for i in range(n) if t >> i & 1) < q:
            return None
    for s in sml:
        if sum(w[i] for i in range(n) if s >> i & 1) > q - 1:
            return None
    scale = lcm(*(f.denominator for f in point)) if point else 1
    weights = tuple(int(f * scale) for f in w)
    quota = -((-q.numerator * scale) // q.denominator)  # ceil(q * scale)
    quota = max(int(quota), 1)
    return WeightedGame(n, quota, weights)


def _rationalize(values, denominators=(1, 2, 6, 12, 60, 840, 2520, 27720, 10**6, 10**9)):
    for d in denominators:
        yield [Fraction(float(v)).limit_denominator(d) for v in values]


def separating_weights(n: int, smw: list[int], sml: list[int]) -> WeightedGame | None:
    """Exact solution of the separation system, or None if provably infeasible."""
    rows, rhs = _separation_system(n, smw, sml)
    a = np.array(rows, dtype=float)
    b = np.array(rhs, dtype=float)
    cost = np.ones(n + 1)
    res = linprog(cost, A_ub=a, b_ub=b, bounds=(0, None), method="highs")
    if res.status == 0:
        for cand in _rationalize(res.x):
            game = _verify_point(n, smw, sml, cand)
            if game is not None:
                return game
    elif res.status == 2:
        if _farkas_certificate(rows, rhs):
            return None
    # float path inconclusive: decide exactly
    exact = _exact_feasible([[Fraction(v) for v in row] for row in rows],
                            [Fraction(v) for v in rhs])
    if exact is None:
        return None
    game = _verify_point(n, smw, sml, exact)
    if game is None:
        raise AssertionError("exact simplex returned an infeasible point")
    return game


def _farkas_certificate(rows, rhs) -> bool:
    """Confirm infeasibility: find y >= 0 with yA >= 0 and yb < 0, exactly."""
    a = np.array(rows, dtype=float)
    b = np.array(rhs, dtype=float)
    m, k = a.shape
    # minimize y.b  s.t.  -yA <= 0, sum y = 1, y >= 0
    res = linprog(
        b,
        A_ub=-a.T,
        b_ub=np.zeros(k),
        A_eq=np.ones((1, m)),
        b_eq=[1.0],
        bounds=(0, None),
        method="highs",
    )
    if res.status != 0 or res.fun > -1e-9:
        return False
    for ys in _rationalize(res.x):
        if all(y >= 0 for y in ys) and any(y > 0 for y in ys):
            col_ok = all(
                sum(y * Fraction(rows[r][j]) for r, y in enumerate(ys)) >= 0
                for j in range(k)
            )
            if col_ok and sum(y * Fraction(rhs[r]) for r, y in enumerate(ys)) < 0:
                return True
    return False


def _exact_feasible(a, b):
    """Feasibility of A x <= b, x >= 0 over Fractions (two-phase simplex).

    Returns a feasible point or None.  Bland's rule, so it terminates.
    """
    m = len(a)
    k = len(a[0]) if m else 0
    # rows with negative rhs get an artificial variable
    art_rows = [i for i in range(m) if b[i] < 0]
    n_art = len(art_rows)
    width = k + m + n_art + 1
    tab = [[Fraction(0)] * width for _ in range(m + 1)]
    basis = [0] * m
    for i in range(m):
        sign = -1 if b[i] < 0 else 1
        for j in range(k):
            tab[i][j] = sign * a[i][j]
        tab[i][k + i] = Fraction(sign)
        tab[i][-1] = sign * b[i]
        if b[i] < 0:
            col = k + m + art_rows.index(i)
            tab[i][col] = Fraction(1)
            basis[i] = col
        else:
            basis[i] = k + i
    obj = tab[m]
    for i in art_rows:  # phase-1 objective: sum of artificials
        for j in range(width):
            obj[j] -= tab[i][j]

    def pivot(row, col):
        piv = tab[row][col]
        tab[row] = [v / piv for v in tab[row]]
        for r in range(m + 1):
            if r != row and tab[r][col] != 0:
                f = tab[r][col]
                tab[r] = [v - f * p for v, p in zip(tab[r], tab[row])]
        basis[row] = col

    def run(ncols):
        while True:
            col = next((j for j in range(ncols) if tab[m][j] < 0), None)
            if col is None:
                return
            best, row = None, None
            for r in range(m):
                if tab[r][col] > 0:
                    ratio = tab[r][-1] / tab[r][col]
                    if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                        best, row = ratio, r
            if row is None:
                return  # unbounded; cannot happen in phase 1
            pivot(row, col)

    if n_art:
        run(k + m + n_art)
        if tab[m][-1] < 0:
            return None
        # drive any residual artificial out of the basis
        for r in range(m):
            if basis[r] >= k + m and tab[r][-1] == 0:
                col = next((j for j in range(k + m) if tab[r][j] != 0), None)
                if col is not None:
                    pivot(r, col)
    x = [Fraction(0)] * k
    for r in range(m):
        if basis[r] < k:
            x[basis[r]] = tab[r][-1]
    return x


def weighted_representation(v: SimpleGame, assume_sorted: bool = False) -> WeightedGame | None:
    """Integer quota/weights realizing ``v`` exactly, or None if not weighted.

    When ``assume_sorted`` the voters are taken to be already ordered by
    desirability (as the complete-game enumeration produces them);
    otherwise the order is established first (a game with an incomparable
    pair cannot be weighted).
    """
    n = v.n
    if assume_sorted:
        perm = list(range(n))
        sorted_game = v
    else:
        stronger = [0] * n
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                rel = desirability(v, i, j)
                if rel == INCOMPARABLE:
                    return None
                if rel == LESS:
                    stronger[i - 1] += 1
                elif rel != EQUAL:
                    stronger[j - 1] += 1
        perm = sorted(range(n), key=lambda p: stronger[p])
        sorted_game = relabel(v, perm)
    smw = shift_minimal_winning(sorted_game.winning, n)
    sml = shift_maximal_losing(sorted_game.winning, n)
    rep = separating_weights(n, smw, sml)
    if rep is None:
        return None
    if not np.array_equal(realize(rep).winning, sorted_game.winning):
        raise AssertionError("certificate does not realize the game")
    weights = [0] * n
    for pos, player in enumerate(perm):
        weights[player] = rep.weights[pos]
    out = WeightedGame(n, rep.quota, tuple(weights))
    assert np.array_equal(realize(out).winning, v.winning)
    return out
