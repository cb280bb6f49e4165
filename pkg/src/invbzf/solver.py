"""Exact solution of the inverse power index problem.

Two routes to the global optimum over a class (simple / complete /
weighted) of n-player games:

* ``solve_by_enumeration`` scans every isomorphism class (desk-scale n)
  using cached swing profiles; distances are taken after sorting both the
  power vector and the target descending, which realizes the minimum over
  relabelings.
* ``bisection_solve`` maintains an interval [l, u] bracketing the optimal
  deviation, repeatedly asking a feasibility oracle whether any game in
  the class comes within alpha of the target.  The oracle is a
  depth-first search over coalition winning bits in cardinality order:
  monotonicity propagates forced wins upward, partial swing counts yield
  per-player power intervals whose induced distance bound prunes the
  tree, and for the complete/weighted classes the search runs directly
  over desirability-sorted up-sets (with an exact weighted-representation
  certificate at the leaves for the weighted class).

Distances of distinct attainable power vectors to a rational target with
common denominator Q are multiples of 1/(s s' Q), so once the bracket is
narrower than that quantum and one more query below the incumbent fails,
the incumbent is provably optimal.  The bisection queries the simplest
rational near the midpoint, keeping all certificates in small integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

import numpy as np

from .enumeration import (
    CLASS_COMPLETE,
    CLASS_SIMPLE,
    CLASS_WEIGHTED,
    class_swing_profiles,
    complete_games_matrix,
    enumerate_class,
    simple_games_packed,
    swings_batch_u64,
    unpack_game,
    weighted_games_list,
)
from .certify import weighted_representation
from .games import SimpleGame, WeightedGame, pbi, relabel, swings
from .targets import D1, D1W, DINF, Metric, TargetVector

PROVED_OPTIMAL = "proved-optimal"
BRACKETED = "bracketed"
HEURISTIC_ONLY = "heuristic-only"

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNKNOWN = "unknown"

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class FeasibilityProblem:
    """Is some game of the class within alpha of the target?"""

    beta: tuple[Fraction, ...]
    cls: str
    metric: Metric
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(Fraction(b) for b in self.beta))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.cls not in (CLASS_SIMPLE, CLASS_COMPLETE, CLASS_WEIGHTED):
            raise ValueError(f"unknown class {self.cls!r}")
        hi = Fraction(2) if self.metric.kind != DINF else Fraction(1)
        if not 0 <= self.alpha <= hi:
            raise ValueError(f"alpha outside [0, {hi}] for {self.metric.kind}")


@dataclass(frozen=True)
class SolveResult:
    best_game: SimpleGame | None
    distance: Fraction
    status: str
    iterations: int = 0
    bracket: tuple[Fraction, Fraction] | None = None
    witness_weights: WeightedGame | None = None

    def to_json_obj(self) -> dict:
        out = {
            "status": self.status,
            "distance": f"{Fraction(self.distance).numerator}/{Fraction(self.distance).denominator}",
            "distance_float": float(self.distance),
            "iterations": self.iterations,
        }
        if self.bracket is not None:
            out["bracket"] = [
                f"{Fraction(x).numerator}/{Fraction(x).denominator}" for x in self.bracket
            ]
        if self.best_game is not None:
            from .games import game_to_json
            import json

            out["witness"] = json.loads(
                game_to_json(
                    self.witness_weights if self.witness_weights is not None else self.best_game
                )
            )
        return out


def epsilon_floor(n: int) -> Fraction:
    """(1/(n 2^n))^2: distinct power vectors are at least this far apart."""
    return Fraction(1, (n << n) ** 2)


def max_total_swings(n: int) -> int:
    m = n // 2 + 1
    return m * comb(n, m)


def _sorted_target(beta: Sequence[Fraction]):
    beta = tuple(Fraction(b) for b in beta)
    order = sorted(range(len(beta)), key=lambda i: beta[i], reverse=True)
    return tuple(beta[i] for i in order), order


def _distance_sorted_profile(
    metric_kind: str, profile: Sequence[int], total: int, beta_sorted: Sequence[Fraction]
) -> Fraction:
    total = int(total)
    if metric_kind == D1:
        return sum(abs(Fraction(int(s), total) - b) for s, b in zip(profile, beta_sorted))
    if metric_kind == DINF:
        return max(abs(Fraction(int(s), total) - b) for s, b in zip(profile, beta_sorted))
    raise ValueError("profile distances support d1 and dinf")


def _beta_of(beta) -> tuple[Fraction, ...]:
    if isinstance(beta, TargetVector):
        return beta.beta
    return tuple(Fraction(b) for b in beta)


def solve_by_enumeration(beta, cls: str, metric: Metric) -> SolveResult:
    """Provably optimal solution by scanning the whole class."""
    beta_raw = _beta_of(beta)
    n = len(beta_raw)
    beta_sorted, order = _sorted_target(beta_raw)
    profiles = class_swing_profiles(n, cls)
    totals = profiles.sum(axis=1)

    # cheap float pass to shortlist candidates, exact pass to decide
    bf = np.array([float(b) for b in beta_sorted])
    rel = profiles / totals[:, None].astype(float)
    if metric.kind == D1:
        approx = np.abs(rel - bf).sum(axis=1)
    elif metric.kind == DINF:
        approx = np.abs(rel - bf).max(axis=1)
    else:
        raise ValueError("enumeration solving supports d1 and dinf")
    cutoff = approx.min() + 1e-9
    candidates = np.nonzero(approx <= cutoff)[0]
    best_row, best_dist = None, None
    for row in candidates:
        d = _distance_sorted_profile(
            metric.kind, profiles[row], int(totals[row]), beta_sorted
        )
        if best_dist is None or d < best_dist:
            best_row, best_dist = int(row), d
    game = _class_member(n, cls, best_row)
    game = _relabel_for_target(game, order)
    weights = weighted_representation(game) if cls == CLASS_WEIGHTED else None
    return SolveResult(game, best_dist, PROVED_OPTIMAL, witness_weights=weights)


def _class_member(n: int, cls: str, row: int) -> SimpleGame:
    if cls == CLASS_SIMPLE:
        return unpack_game(int(simple_games_packed(n)[row]), n)
    mat = complete_games_matrix(n)
    if cls == CLASS_WEIGHTED:
        row = weighted_games_list(n)[row][0]
    return SimpleGame(n, mat[row], validate=False)


def _relabel_for_target(game: SimpleGame, order: list[int]) -> SimpleGame:
    """Place the game's strongest players at the target's largest entries."""
    prof = swings(game).per_player
    by_strength = sorted(range(game.n), key=lambda i: prof[i], reverse=True)
    perm = [0] * game.n
    for rank, original_pos in enumerate(order):
        perm[original_pos] = by_strength[rank]
    return relabel(game, perm)


@lru_cache(maxsize=None)
def _head_profiles(k: int):
    return class_swing_profiles(k, CLASS_SIMPLE)


def head_distance_minimum(head: tuple) -> Fraction:
    """Exact min over k-player simple games of sum_i |B_i - head_i|.

    ``head`` need not be normalized (it is the leading slice of a larger
    target); both sides are compared sorted descending.
    """
    head = tuple(Fraction(h) for h in head)
    k = len(head)
    head_sorted = tuple(sorted(head, reverse=True))
    profiles = _head_profiles(k)
    best = None
    for row in range(profiles.shape[0]):
        total = int(profiles[row].sum())
        d = sum(abs(Fraction(int(s), total) - h) for s, h in zip(profiles[row], head_sorted))
        if best is None or d < best:
            best = d
    return best


# ---------------------------------------------------------------------------
# feasibility search (exact reference engine)
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int):
        self.nodes = 0
        self.limit = limit

    def tick(self):
        self.nodes += 1
        if self.nodes > self.limit:
            raise _BudgetExceeded


class _BudgetExceeded(Exception):
    pass


class _Found(Exception):
    def __init__(self, winning):
        self.winning = winning


class _SearchState:
    """Coalition states plus incremental swing-count intervals.

    ``lo[i]`` counts pairs already forced to be swings for player i;
    ``poss[i]`` counts pairs that could still become swings.  Both are
    maintained exactly under assignment/closure events and undone via a
    trail, so every node prunes on exact integer interval bounds.
    """

    def __init__(self, n: int):
        self.n = n
        size = 1 << n
        self.state = np.zeros(size, dtype=np.int8)  # 0 undecided, 1 win, -1 lose
        self.lo = [0] * n
        self.poss = [1 << (n - 1)] * n
        self.trail: list = []

    def mark(self):
        return len(self.trail)

    def undo(self, mark: int):
        while len(self.trail) > mark:
            kind, a, b = self.trail.pop()
            if kind == 0:  # state change
                self.state[a] = 0
            elif kind == 1:  # lo delta
                self.lo[a] -= b
            else:  # poss delta
                self.poss[a] += b

    def _set_state(self, mask: int, value: int):
        self.state[mask] = value
        self.trail.append((0, mask, 0))

    def _add_lo(self, i: int, d: int = 1):
        self.lo[i] += d
        self.trail.append((1, i, d))

    def _sub_poss(self, i: int, d: int = 1):
        self.poss[i] -= d
        self.trail.append((2, i, d))

    def assign_win(self, mask: int):
        st = self.state
        self._set_state(mask, 1)
        m = mask
        i = 0
        while m:
            if m & 1:
                s = st[mask ^ (1 << i)]
                if s == -1:
                    self._add_lo(i)
                    self._sub_poss(i)
            m >>= 1
            i += 1
        for j in range(self.n):
            if not mask >> j & 1:
                self._sub_poss(j)

    def assign_lose(self, mask: int):
        st = self.state
        self._set_state(mask, -1)
        m = mask
        i = 0
        while m:
            if m & 1:
                if st[mask ^ (1 << i)] == -1:
                    self._sub_poss(i)
            m >>= 1
            i += 1
        for j in range(self.n):
            if not mask >> j & 1:
                if st[mask | 1 << j] == 1:
                    self._add_lo(j)
                    self._sub_poss(j)

    def close_upward(self, mask: int):
        """Mark every undecided superset of a newly winning mask as winning."""
        n = self.n
        full = (1 << n) - 1
        free = full ^ mask
        sub = free
        while True:
            sup = mask | sub
            if self.state[sup] == 0:
                self.assign_win(sup)
            if sub == 0:
                return
            sub = (sub - 1) & free


def _shift_ups(n: int):
    table: list[list[int]] = []
    for mask in range(1 << n):
        ups = []
        for j in range(1, n):
            if (mask >> j & 1) and not mask >> (j - 1) & 1:
                ups.append(mask ^ (1 << j) | 1 << (j - 1))
        table.append(ups)
    return table


def _search_order(n: int):
    return sorted(range(1 << n), key=lambda m: (bin(m).count("1"), m))


def feasible(
    problem: FeasibilityProblem,
    node_budget: int = DEFAULT_NODE_BUDGET,
    engine: str = "auto",
) -> tuple[str, SimpleGame | None]:
    """Search for a game of the class within alpha of the target.

    Returns (status, witness): ``feasible`` with a witness game,
    ``infeasible`` after exhausting the (pruned) tree, or ``unknown`` when
    the node budget ran out.  Answers are exact; the compiled kernel is
    used for the simple-game class whenever its int64 guards allow.
    """
    n = len(problem.beta)
    if problem.metric.kind == D1W:
        # the weighted metric is not relabeling-invariant: search in the
        # original order, without the swing-sorted symmetry reduction
        beta_search, order = tuple(problem.beta), list(range(n))
        weights = _d1w_weight_fractions(problem.metric, n)
    else:
        beta_search, order = _sorted_target(problem.beta)
        weights = None
    if (
        engine != "python"
        and problem.cls == CLASS_SIMPLE
        and problem.metric.kind in (D1, DINF)
        and 3 <= n <= 12
    ):
        hit = _kernel_feasible(problem, beta_search, node_budget)
        if hit is not None:
            status, winning = hit
            if status == FEASIBLE:
                game = SimpleGame(n, winning, validate=False)
                return FEASIBLE, _unsort_game(game, order)
            return status, None
        if engine == "numba":
            raise ValueError("kernel guards reject this instance")
    eng = _FeasibilityEngine(
        n, beta_search, problem.metric.kind, problem.alpha, problem.cls, weights
    )
    try:
        eng.run(_Budget(node_budget))
    except _Found as hit:
        game = SimpleGame(n, hit.winning, validate=False)
        return FEASIBLE, _unsort_game(game, order)
    except _BudgetExceeded:
        return UNKNOWN, None
    return INFEASIBLE, None


def _unsort_game(game: SimpleGame, order: list[int]) -> SimpleGame:
    inv = [0] * game.n
    for pos, orig in enumerate(order):
        inv[orig] = pos
    return relabel(game, inv)


def _kernel_feasible(problem, beta_sorted, node_budget):
    """Run the compiled search when int64 magnitudes are safe, else None."""
    from math import lcm

    from . import _search

    n = len(beta_sorted)
    q = 1
    for b in beta_sorted:
        q = lcm(q, b.denominator)
    alpha = problem.alpha
    mt = max_total_swings(n)
    if q > 10**6:
        return None
    if alpha.denominator * 2 * mt * q >= 1 << 62:
        return None
    if alpha.numerator * mt * q >= 1 << 62:
        return None
    beta_num = np.array([int(b * q) for b in beta_sorted], dtype=np.int64)
    order = np.array(_search_order(n), dtype=np.int64)
    boundary = np.array(
        [beta_sorted[i] != beta_sorted[i + 1] for i in range(n - 1)], dtype=np.bool_
    )
    early_parts, late_parts, offsets = [], [], [0]
    for i in range(n - 1):
        if boundary[i]:
            continue
        pairs = [
            m
            for m in range(1 << n)
            if (m >> i & 1) and not (m >> (i + 1) & 1)
        ]
        pairs.sort(key=lambda m: (bin(m).count("1"), m))
        early_parts.extend(pairs)
        late_parts.extend(m ^ (1 << i) ^ (1 << (i + 1)) for m in pairs)
        offsets.append(len(early_parts))
    lex_early = np.array(early_parts, dtype=np.int64)
    lex_late = np.array(late_parts, dtype=np.int64)
    lex_off = np.array(offsets, dtype=np.int64)
    out_winning = np.zeros(1 << n, dtype=np.bool_)
    metric_code = _search.METRIC_D1 if problem.metric.kind == D1 else _search.METRIC_DINF
    status, _nodes = _search._run_search(
        n,
        order,
        beta_num,
        np.int64(q),
        np.int64(alpha.numerator),
        np.int64(alpha.denominator),
        metric_code,
        boundary,
        lex_early,
        lex_late,
        lex_off,
        np.int64(mt),
        np.int64(node_budget),
        out_winning,
    )
    if status == _search.STATUS_FEASIBLE:
        return FEASIBLE, out_winning
    if status == _search.STATUS_BUDGET:
        return UNKNOWN, None
    return INFEASIBLE, None


def _d1w_weight_fractions(metric: Metric, n: int) -> tuple[Fraction, ...]:
    from .targets import _sqrt_weights, _mpf_to_fraction, DEFAULT_DPS

    ws = _sqrt_weights(metric.population, DEFAULT_DPS)
    return tuple(_mpf_to_fraction(w) for w in ws)


class _FeasibilityEngine:
    # float pruning margin: bounds are only trusted beyond this slack, so a
    # node is pruned only when its exact bound provably exceeds alpha
    PRUNE_MARGIN = 1e-9

    def __init__(self, n, beta_sorted, metric_kind, alpha, cls, d1w_weights=None):
        self.n = n
        self.beta = beta_sorted
        self.beta_f = [float(b) for b in beta_sorted]
        self.beta_desc_f = sorted(self.beta_f, reverse=True)
        self.kind = metric_kind
        self.alpha = Fraction(alpha)
        self.alpha_f = float(alpha)
        self.cls = cls
        self.d1w_weights = d1w_weights
        self.d1w_weights_f = (
            [float(w) for w in d1w_weights] if d1w_weights is not None else None
        )
        self.d1w_min_weight = (
            min(self.d1w_weights_f) if d1w_weights is not None else None
        )
        self.order = _search_order(n)
        self.shift_ups = _shift_ups(n) if cls in (CLASS_COMPLETE, CLASS_WEIGHTED) else None
        self.state = _SearchState(n)
        self.max_total = max_total_swings(n)
        self.cert_cache: dict[bytes, WeightedGame | None] = {}

    def run(self, budget: _Budget):
        st = self.state
        st.assign_lose(0)
        self._descend(1, budget)

    def _descend(self, pos: int, budget: _Budget):
        budget.tick()
        st = self.state
        size = 1 << self.n
        while pos < size and st.state[self.order[pos]] != 0:
            pos += 1
        if pos == size:
            self._leaf()
            return
        mask = self.order[pos]
        forced_lose = False
        if self.shift_ups is not None:
            forced_lose = any(st.state[u] == -1 for u in self.shift_ups[mask])
        grand = mask == size - 1
        for value in (-1, 1):
            if value == -1 and grand:
                continue
            if value == 1 and forced_lose:
                continue
            mark = st.mark()
            if value == 1:
                st.assign_win(mask)
                st.close_upward(mask)
            else:
                st.assign_lose(mask)
            if not self._prune():
                self._descend(pos + 1, budget)
            st.undo(mark)

    def _leaf(self):
        st = self.state
        if st.state[-1] != 1:
            return
        total = sum(st.lo)
        if total == 0:
            return
        if self.kind == D1W and self.cls != CLASS_SIMPLE:
            # up-sets carry one labeling per class, but the weighted metric
            # is position-dependent: scan the relabelings at the leaf
            self._leaf_d1w_relabelings(total)
            return
        d = self._exact_distance(st.lo, total)
        if d <= self.alpha:
            winning = st.state == 1
            if not self._weighted_ok(winning):
                return
            raise _Found(winning.copy())

    def _weighted_ok(self, winning) -> bool:
        if self.cls != CLASS_WEIGHTED:
            return True
        game = SimpleGame(self.n, winning.copy(), validate=False)
        key = game.key()
        if key not in self.cert_cache:
            self.cert_cache[key] = weighted_representation(game, assume_sorted=True)
        return self.cert_cache[key] is not None

    def _leaf_d1w_relabelings(self, total):
        import itertools

        st = self.state
        base = [Fraction(si, total) for si in st.lo]
        winning = st.state == 1
        cert_checked = False
        for perm in itertools.permutations(range(self.n)):
            d = sum(
                w * abs(base[perm[i]] - b)
                for i, (w, b) in enumerate(zip(self.d1w_weights, self.beta))
            )
            if d <= self.alpha:
                if not cert_checked:
                    if not self._weighted_ok(winning):
                        return
                    cert_checked = True
                hit = relabel(SimpleGame(self.n, winning.copy(), validate=False), list(perm))
                raise _Found(hit.winning.copy())

    def _exact_distance(self, s, total):
        if self.kind == D1:
            return sum(abs(Fraction(si, total) - b) for si, b in zip(s, self.beta))
        if self.kind == DINF:
            return max(abs(Fraction(si, total) - b) for si, b in zip(s, self.beta))
        return sum(
            w * abs(Fraction(si, total) - b)
            for w, si, b in zip(self.d1w_weights, s, self.beta)
        )

    def _prune(self) -> bool:
        st = self.state
        n = self.n
        lo, poss = st.lo, st.poss
        lo_sum = sum(lo)
        hi_sum = lo_sum + sum(poss)
        if hi_sum == 0:
            return True
        s_hi_cap = min(hi_sum, self.max_total)
        s_lo_cap = max(lo_sum, n)
        if self.kind != D1W:
            # swing-sorted symmetry: some optimal relabeling is descending
            # (invalid for the weighted metric, which is position-dependent)
            for i in range(n - 1):
                if lo[i] + poss[i] < lo[i + 1]:
                    return True
        under = 0.0
        over = 0.0
        gap_sum = 0.0
        gap_max = 0.0
        wsum = 0.0
        lbs = [0.0] * n
        ubs = [0.0] * n
        beta_f = self.beta_f
        for i in range(n):
            b = beta_f[i]
            hi_i = lo[i] + poss[i]
            den_hi = lo[i] + (hi_sum - hi_i)
            if den_hi > s_hi_cap:
                den_hi = s_hi_cap
            lb = lo[i] / den_hi if den_hi > 0 else 0.0
            den_lo = hi_i + (lo_sum - lo[i])
            if den_lo < s_lo_cap:
                den_lo = s_lo_cap
            ub = hi_i / den_lo
            if ub > 1.0:
                ub = 1.0
            lbs[i] = lb
            ubs[i] = ub
            if b > ub:
                g = b - ub
                under += g
            elif lb > b:
                g = lb - b
                over += g
            else:
                g = 0.0
            gap_sum += g
            if g > gap_max:
                gap_max = g
            if self.d1w_weights_f is not None:
                wsum += self.d1w_weights_f[i] * g
        limit = self.alpha_f + self.PRUNE_MARGIN
        if self.kind == D1:
            twice = 2.0 * (under if under > over else over)
            return (gap_sum if gap_sum > twice else twice) > limit
        if self.kind == DINF:
            return gap_max > limit
        if self.cls == CLASS_SIMPLE:
            return wsum > limit
        # class leaves are re-evaluated under every relabeling, so prune
        # only on a permutation-invariant bound: the k-th largest power is
        # sandwiched between the k-th largest interval endpoints
        lbs.sort(reverse=True)
        ubs.sort(reverse=True)
        perm_free = 0.0
        for bk, lbk, ubk in zip(self.beta_desc_f, lbs, ubs):
            if bk > ubk:
                perm_free += bk - ubk
            elif lbk > bk:
                perm_free += lbk - bk
        return self.d1w_min_weight * perm_free > limit


# ---------------------------------------------------------------------------
# bisection
# ---------------------------------------------------------------------------


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator strictly inside (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    m = lo.numerator // lo.denominator  # floor
    if Fraction(m + 1) < hi:
        return Fraction(m + 1)
    a, b = lo - m, hi - m  # 0 <= a < b <= 1
    if a == 0:
        q = b.denominator // b.numerator + 1  # smallest q with 1/q < b
        return m + Fraction(1, q)
    return m + 1 / simplest_rational_between(1 / b, 1 / a)


def quantum(beta_sorted, n: int) -> Fraction:
    """Distances of attainable power vectors to beta are multiples of this."""
    from math import lcm

    q = 1
    for b in beta_sorted:
        q = lcm(q, Fraction(b).denominator)
    s_cap = max_total_swings(n)
    return Fraction(1, s_cap * s_cap * q)


def bisection_solve(
    beta,
    cls: str,
    metric: Metric,
    node_budget: int = DEFAULT_NODE_BUDGET,
    tol: Fraction | None = None,
) -> SolveResult:
    """Bracket-and-halve on the feasibility oracle until provably optimal.

    The bracket [l, u] starts at [0, 2]; each round queries (nearly) the
    midpoint, lowering u to the exact distance of the witness on success
    and raising l otherwise.  Once u - l is below the distance quantum, a
    final query just under u either improves it or proves optimality.
    """
    beta_raw = _beta_of(beta)
    n = len(beta_raw)
    beta_sorted, _ = _sorted_target(beta_raw)
    gap = quantum(beta_sorted, n)
    target_gap = max(gap, Fraction(tol)) if tol is not None else gap
    lo = Fraction(0)
    hi = Fraction(2)
    best: SimpleGame | None = None
    iterations = 0
    while hi - lo > target_gap:
        mid = lo + (hi - lo) / 2
        radius = (hi - lo) / 8
        alpha = simplest_rational_between(mid - radius, mid + radius)
        problem = FeasibilityProblem(beta_raw, cls, metric, min(alpha, Fraction(2)))
        status, witness = feasible(problem, node_budget)
        iterations += 1
        if status == FEASIBLE:
            best = witness
            hi = _witness_distance(witness, beta_raw, metric)
        elif status == INFEASIBLE:
            lo = alpha
        else:
            return SolveResult(
                best,
                hi if best is not None else Fraction(2),
                BRACKETED,
                iterations,
                bracket=(lo, hi),
            )
    if tol is not None and hi - lo > gap:
        return SolveResult(best, hi, BRACKETED, iterations, bracket=(lo, hi))
    # confirm: nothing strictly better than the incumbent
    while True:
        alpha = hi - gap / 2
        if alpha < lo:
            break
        problem = FeasibilityProblem(beta_raw, cls, metric, max(alpha, Fraction(0)))
        status, witness = feasible(problem, node_budget)
        iterations += 1
        if status == INFEASIBLE:
            break
        if status == UNKNOWN:
            return SolveResult(best, hi, BRACKETED, iterations, bracket=(lo, hi))
        best = witness
        hi = _witness_distance(witness, beta_raw, metric)
    weights = None
    if cls == CLASS_WEIGHTED and best is not None:
        weights = weighted_representation(best)
    return SolveResult(best, hi, PROVED_OPTIMAL, iterations, bracket=(lo, hi), witness_weights=weights)


def _witness_distance(game: SimpleGame, beta_raw, metric: Metric) -> Fraction:
    from .targets import _mpf_to_fraction, distance

    power = pbi(game).values
    d = distance(metric, power, beta_raw)
    return d if isinstance(d, Fraction) else _mpf_to_fraction(d)
