"""Accelerated feasibility search over simple games (compiled kernel).

Mirrors the reference engine in :mod:`invbzf.solver`: depth-first over
coalition bits in cardinality order, upward closure of wins, incremental
per-player swing intervals, and interval-induced distance pruning.  Two
additions make the larger instances tractable:

* players tied in the target are interchangeable, so the search is
  restricted to games that are lexicographically maximal under each
  adjacent tied transposition (classic lex-leader symmetry breaking);
* across tie blocks the representative can be assumed swing-sorted.

Pruning uses floats with a safety margin (a node is cut only when the
exact bound provably exceeds alpha); leaf acceptance is exact 64-bit
integer arithmetic, so the kernel's answers are exact.  The wrapper in
:mod:`invbzf.solver` enforces the magnitude guards that make int64 safe.
"""

from __future__ import annotations

import numpy as np
from numba import njit

STATUS_INFEASIBLE = 0
STATUS_FEASIBLE = 1
STATUS_BUDGET = 2

METRIC_D1 = 0
METRIC_DINF = 1

PRUNE_MARGIN = 1e-9


@njit(cache=True)
def _assign_lose(n, mask, state, lo, poss, trail_kind, trail_a, trail_b, tlen):
    trail_kind[tlen] = 0
    trail_a[tlen] = mask
    tlen += 1
    state[mask] = -1
    mm = mask
    i = 0
    while mm:
        if mm & 1:
            if state[mask ^ (1 << i)] == -1:
                trail_kind[tlen] = 2
                trail_a[tlen] = i
                tlen += 1
                poss[i] -= 1
        mm >>= 1
        i += 1
    for j in range(n):
        if not (mask >> j) & 1:
            if state[mask | (1 << j)] == 1:
                trail_kind[tlen] = 1
                trail_a[tlen] = j
                tlen += 1
                lo[j] += 1
                trail_kind[tlen] = 2
                trail_a[tlen] = j
                tlen += 1
                poss[j] -= 1
    return tlen


@njit(cache=True)
def _assign_win_closure(n, mask, state, lo, poss, trail_kind, trail_a, trail_b, tlen, full):
    free = full ^ mask
    sub = free
    while True:
        sup = mask | sub
        if state[sup] == 0:
            trail_kind[tlen] = 0
            trail_a[tlen] = sup
            tlen += 1
            state[sup] = 1
            mm = sup
            i = 0
            while mm:
                if mm & 1:
                    if state[sup ^ (1 << i)] == -1:
                        trail_kind[tlen] = 1
                        trail_a[tlen] = i
                        tlen += 1
                        lo[i] += 1
                        trail_kind[tlen] = 2
                        trail_a[tlen] = i
                        tlen += 1
                        poss[i] -= 1
                mm >>= 1
                i += 1
            for j in range(n):
                if not (sup >> j) & 1:
                    trail_kind[tlen] = 2
                    trail_a[tlen] = j
                    tlen += 1
                    poss[j] -= 1
        if sub == 0:
            break
        sub = (sub - 1) & free
    return tlen


@njit(cache=True)
def _undo(state, lo, poss, lex_ptr, lex_resolved, trail_kind, trail_a, trail_b, tlen, mark):
    while tlen > mark:
        tlen -= 1
        k = trail_kind[tlen]
        a = trail_a[tlen]
        if k == 0:
            state[a] = 0
        elif k == 1:
            lo[a] -= 1
        elif k == 2:
            poss[a] += 1
        else:
            lex_ptr[a] = trail_b[tlen] >> 1
            lex_resolved[a] = trail_b[tlen] & 1
    return tlen


@njit(cache=True)
def _prune_and_lex(
    n, state, lo, poss, beta_f, limit_f, metric,
    boundary, lex_early, lex_late, lex_off, lex_ptr, lex_resolved,
    trail_kind, trail_a, trail_b, tlen, max_total,
):
    """Returns the new trail length, or -1 - new_length when pruned."""
    t_count = lex_off.shape[0] - 1
    for t in range(t_count):
        if lex_resolved[t]:
            continue
        start = lex_ptr[t]
        ptr = start
        end = lex_off[t + 1] - lex_off[t]
        resolved = np.int8(0)
        while ptr < end:
            m = lex_early[lex_off[t] + ptr]
            mp = lex_late[lex_off[t] + ptr]
            sm = state[m]
            smp = state[mp]
            if sm == 0 or smp == 0:
                break
            if sm == 1 and smp == -1:
                resolved = np.int8(1)
                break
            if sm == -1 and smp == 1:
                return -1 - tlen
            ptr += 1
        if ptr != start or resolved:
            trail_kind[tlen] = 3
            trail_a[tlen] = t
            trail_b[tlen] = (start << 1) | lex_resolved[t]
            tlen += 1
            lex_ptr[t] = ptr
            lex_resolved[t] = resolved

    lo_sum = np.int64(0)
    hi_sum = np.int64(0)
    for i in range(n):
        lo_sum += lo[i]
        hi_sum += lo[i] + poss[i]
    if hi_sum == 0:
        return -1 - tlen
    s_hi_cap = hi_sum if hi_sum < max_total else max_total
    s_lo_cap = lo_sum if lo_sum > n else n
    for i in range(n - 1):
        if boundary[i] and lo[i] + poss[i] < lo[i + 1]:
            return -1 - tlen
    under = 0.0
    over = 0.0
    gap_sum = 0.0
    gap_max = 0.0
    for i in range(n):
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
        b = beta_f[i]
        g = 0.0
        if b > ub:
            g = b - ub
            under += g
        elif lb > b:
            g = lb - b
            over += g
        gap_sum += g
        if g > gap_max:
            gap_max = g
    if metric == METRIC_D1:
        twice = 2.0 * (under if under > over else over)
        bound = gap_sum if gap_sum > twice else twice
        if bound > limit_f:
            return -1 - tlen
    else:
        if gap_max > limit_f:
            return -1 - tlen
    return tlen


@njit(cache=True)
def _leaf_ok(n, lo, beta_num, q_den, alpha_num, alpha_den, metric):
    total = np.int64(0)
    for i in range(n):
        total += lo[i]
    if total <= 0:
        return False
    if metric == METRIC_D1:
        acc = np.int64(0)
        for i in range(n):
            d = lo[i] * q_den - beta_num[i] * total
            if d < 0:
                d = -d
            acc += d
        return alpha_den * acc <= alpha_num * total * q_den
    for i in range(n):
        d = lo[i] * q_den - beta_num[i] * total
        if d < 0:
            d = -d
        if alpha_den * d > alpha_num * total * q_den:
            return False
    return True


@njit(cache=True)
def _run_search(
    n,
    order,
    beta_num,
    q_den,
    alpha_num,
    alpha_den,
    metric,
    boundary,
    lex_early,
    lex_late,
    lex_off,
    max_total,
    budget,
    out_winning,
):
    size = 1 << n
    full = size - 1
    t_count = lex_off.shape[0] - 1

    state = np.zeros(size, dtype=np.int8)
    lo = np.zeros(n, dtype=np.int64)
    poss = np.full(n, 1 << (n - 1), dtype=np.int64)
    lex_ptr = np.zeros(t_count, dtype=np.int64)
    lex_resolved = np.zeros(t_count, dtype=np.int8)

    # per assigned mask: 1 state + at most 2n counter events; plus one lex
    # record per transposition per node on the path
    cap = size * (3 * n + 4) + 64
    trail_kind = np.empty(cap, dtype=np.int8)
    trail_a = np.empty(cap, dtype=np.int64)
    trail_b = np.empty(cap, dtype=np.int64)
    tlen = 0

    beta_f = beta_num.astype(np.float64) / q_den
    limit_f = alpha_num / alpha_den + PRUNE_MARGIN

    stack_pos = np.empty(size + 2, dtype=np.int64)
    stack_stage = np.empty(size + 2, dtype=np.int64)
    stack_mark = np.empty(size + 2, dtype=np.int64)

    nodes = np.int64(0)
    state[0] = -1  # empty coalition loses; kills no swing pairs

    depth = 0
    stack_pos[0] = 0
    stack_stage[0] = 0
    stack_mark[0] = tlen

    while depth >= 0:
        stage = stack_stage[depth]

        if stage == 0:
            nodes += 1
            if nodes > budget:
                return STATUS_BUDGET, nodes
            p = stack_pos[depth]
            while p < size and state[order[p]] != 0:
                p += 1
            stack_pos[depth] = p
            if p == size:
                if state[full] == 1 and _leaf_ok(
                    n, lo, beta_num, q_den, alpha_num, alpha_den, metric
                ):
                    for m in range(size):
                        out_winning[m] = state[m] == 1
                    return STATUS_FEASIBLE, nodes
                stack_stage[depth] = 2
                continue
            stack_stage[depth] = 1
            mask = order[p]
            if mask == full:
                continue  # the grand coalition cannot lose
            stack_mark[depth] = tlen
            tlen = _assign_lose(
                n, mask, state, lo, poss, trail_kind, trail_a, trail_b, tlen
            )
            res = _prune_and_lex(
                n, state, lo, poss, beta_f, limit_f, metric,
                boundary, lex_early, lex_late, lex_off, lex_ptr, lex_resolved,
                trail_kind, trail_a, trail_b, tlen, max_total,
            )
            if res >= 0:
                tlen = res
                depth += 1
                stack_pos[depth] = p + 1
                stack_stage[depth] = 0
                stack_mark[depth] = tlen
            else:
                tlen = _undo(
                    state, lo, poss, lex_ptr, lex_resolved,
                    trail_kind, trail_a, trail_b, -1 - res, stack_mark[depth],
                )
            continue

        if stage == 1:
            tlen = _undo(
                state, lo, poss, lex_ptr, lex_resolved,
                trail_kind, trail_a, trail_b, tlen, stack_mark[depth],
            )
            stack_stage[depth] = 2
            p = stack_pos[depth]
            mask = order[p]
            tlen = _assign_win_closure(
                n, mask, state, lo, poss, trail_kind, trail_a, trail_b, tlen, full
            )
            res = _prune_and_lex(
                n, state, lo, poss, beta_f, limit_f, metric,
                boundary, lex_early, lex_late, lex_off, lex_ptr, lex_resolved,
                trail_kind, trail_a, trail_b, tlen, max_total,
            )
            if res >= 0:
                tlen = res
                depth += 1
                stack_pos[depth] = p + 1
                stack_stage[depth] = 0
                stack_mark[depth] = tlen
            else:
                tlen = _undo(
                    state, lo, poss, lex_ptr, lex_resolved,
                    trail_kind, trail_a, trail_b, -1 - res, stack_mark[depth],
                )
            continue

        tlen = _undo(
            state, lo, poss, lex_ptr, lex_resolved,
            trail_kind, trail_a, trail_b, tlen, stack_mark[depth],
        )
        depth -= 1

    return STATUS_INFEASIBLE, nodes
