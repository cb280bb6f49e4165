"""Numba kernels for bulk work on games packed as 64-bit words.

A game on n <= 6 players fits in one uint64: bit ``mask`` holds the
winning status of the coalition ``mask``.  The canonical form of a game
is the minimal such integer over all player relabelings; the scan is cut
down by ordering players on a relabeling-invariant key (swing count plus
winning-membership counts per coalition size) and permuting only inside
key ties.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit, prange


def _perm_tables(max_size: int = 6):
    """All permutations of sizes 1..max_size, concatenated row-wise."""
    import itertools

    rows = []
    offsets = np.zeros(max_size + 2, dtype=np.int64)
    lengths = np.zeros(max_size + 1, dtype=np.int64)
    flat: list[int] = []
    for m in range(1, max_size + 1):
        offsets[m] = len(flat)
        count = 0
        for p in itertools.permutations(range(m)):
            flat.extend(p)
            count += 1
        lengths[m] = count
    offsets[max_size + 1] = len(flat)
    return np.array(flat, dtype=np.int8), offsets, lengths


_PERM_FLAT, _PERM_OFF, _PERM_COUNT = _perm_tables()
_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.int8)


@njit(cache=True)
def _player_keys(game: np.uint64, n: int, keys: np.ndarray, pop: np.ndarray):
    size = 1 << n
    for i in range(n):
        bit = 1 << i
        sw = 0
        for mask in range(size):
            if mask & bit:
                continue
            hi = (game >> np.uint64(mask | bit)) & np.uint64(1)
            lo = (game >> np.uint64(mask)) & np.uint64(1)
            if hi and not lo:
                sw += 1
        key = np.int64(sw)
        for card in range(n + 1):
            cnt = 0
            for mask in range(size):
                if (mask & bit) and pop[mask] == card:
                    if (game >> np.uint64(mask)) & np.uint64(1):
                        cnt += 1
            key = (key << 6) | cnt
        keys[i] = key


@njit(cache=True)
def _relabel_u64(game: np.uint64, n: int, perm: np.ndarray) -> np.uint64:
    out = np.uint64(0)
    size = 1 << n
    for mask in range(size):
        if (game >> np.uint64(mask)) & np.uint64(1):
            new = 0
            for j in range(n):
                new |= ((mask >> perm[j]) & 1) << j
            out |= np.uint64(1) << np.uint64(new)
    return out


@njit(cache=True)
def _canonical_one(
    game: np.uint64,
    n: int,
    pop: np.ndarray,
    perm_flat: np.ndarray,
    perm_off: np.ndarray,
    perm_count: np.ndarray,
) -> np.uint64:
    keys = np.empty(n, dtype=np.int64)
    _player_keys(game, n, keys, pop)
    order = np.empty(n, dtype=np.int8)
    for i in range(n):
        order[i] = i
    for i in range(1, n):  # insertion sort, descending keys
        j = i
        while j > 0 and keys[order[j - 1]] < keys[order[j]]:
            order[j - 1], order[j] = order[j], order[j - 1]
            j -= 1
    # tie blocks over the sorted order
    starts = np.empty(n + 1, dtype=np.int8)
    nblocks = 0
    starts[0] = 0
    for i in range(1, n):
        if keys[order[i]] != keys[order[i - 1]]:
            nblocks += 1
            starts[nblocks] = i
    nblocks += 1
    starts[nblocks] = n

    idx = np.zeros(nblocks, dtype=np.int64)
    perm = np.empty(n, dtype=np.int8)
    best = np.uint64(0xFFFFFFFFFFFFFFFF)
    while True:
        for b in range(nblocks):
            s = starts[b]
            m = starts[b + 1] - s
            row = perm_off[m] + idx[b] * m
            for t in range(m):
                perm[s + t] = order[s + perm_flat[row + t]]
        cand = _relabel_u64(game, n, perm)
        if cand < best:
            best = cand
        # advance odometer
        b = 0
        while b < nblocks:
            m = starts[b + 1] - starts[b]
            idx[b] += 1
            if idx[b] < perm_count[m]:
                break
            idx[b] = 0
            b += 1
        if b == nblocks:
            return best


@njit(parallel=True, cache=True)
def canonical_batch(
    games: np.ndarray,
    n: int,
    pop: np.ndarray,
    perm_flat: np.ndarray,
    perm_off: np.ndarray,
    perm_count: np.ndarray,
) -> np.ndarray:
    out = np.empty(games.shape[0], dtype=np.uint64)
    for g in prange(games.shape[0]):
        out[g] = _canonical_one(games[g], n, pop, perm_flat, perm_off, perm_count)
    return out


@njit(parallel=True, cache=True)
def swings_batch_u64(games: np.ndarray, n: int) -> np.ndarray:
    out = np.empty((games.shape[0], n), dtype=np.int32)
    size = 1 << n
    for g in prange(games.shape[0]):
        game = games[g]
        for i in range(n):
            bit = 1 << i
            sw = 0
            for mask in range(size):
                if mask & bit:
                    continue
                hi = (game >> np.uint64(mask | bit)) & np.uint64(1)
                lo = (game >> np.uint64(mask)) & np.uint64(1)
                if hi and not lo:
                    sw += 1
            out[g, i] = sw
    return out


def canonicalize_u64(games: np.ndarray, n: int) -> np.ndarray:
    """Canonical form of each packed game (vectorized driver)."""
    if n > 6:
        raise ValueError("packed canonicalization supports n <= 6")
    pop = np.array([bin(i).count("1") for i in range(1 << n)], dtype=np.int8)
    return canonical_batch(
        np.ascontiguousarray(games, dtype=np.uint64),
        n,
        pop,
        _PERM_FLAT,
        _PERM_OFF,
        _PERM_COUNT,
    )
