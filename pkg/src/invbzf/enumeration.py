"""Exhaustive enumeration of voting-system classes up to isomorphism.

Three nested classes are enumerated:

* simple games (all monotone Boolean functions with the boundary
  conditions), built by composing the monotone functions on n-1 players
  in ordered pairs ``g <= h`` and deduplicating canonical forms;
* complete simple games, generated directly as the up-sets of the
  prefix-dominance order on coalitions (with voters sorted by
  desirability, a coalition weakly improves when a member is swapped for
  a stronger voter or a voter joins) -- each isomorphism class appears
  exactly once;
* weighted voting games, the complete games passing an exact
  weighted-representation certificate.

Feasible sizes (a couple of minutes on a laptop): simple games to n = 6,
complete and weighted games to n = 7.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

from ._kernels import canonicalize_u64, swings_batch_u64
from .certify import weighted_representation
from .games import SimpleGame, WeightedGame

CLASS_SIMPLE = "S"
CLASS_COMPLETE = "C"
CLASS_WEIGHTED = "W"

SIMPLE_LIMIT = 6
COMPLETE_LIMIT = 7


class ResourceLimit(ValueError):
    """Enumeration requested beyond the supported desk-scale sizes."""


@lru_cache(maxsize=None)
def monotone_functions_packed(n: int) -> np.ndarray:
    """All monotone Boolean functions on n variables, one uint64 each.

    Built recursively: a function on n variables is an ordered pair
    (g, h) of functions on n-1 variables with g <= h pointwise; g fills
    the masks without variable n, h those with it.
    """
    if n > 6:
        raise ResourceLimit("packed representation holds at most 6 variables")
    if n == 0:
        return np.array([0, 1], dtype=np.uint64)
    prev = monotone_functions_packed(n - 1)
    shift = np.uint64(1 << (n - 1))
    parts = []
    for g in prev:
        le = (prev & g) == g  # h >= g pointwise
        parts.append(g | (prev[le] << shift))
    return np.concatenate(parts)


@lru_cache(maxsize=None)
def simple_games_packed(n: int) -> np.ndarray:
    """Sorted canonical representatives of all simple games, packed."""
    if n > SIMPLE_LIMIT:
        raise ResourceLimit(f"simple-game enumeration supports n <= {SIMPLE_LIMIT}")
    funcs = monotone_functions_packed(n)
    top = np.uint64(1 << n) - np.uint64(1)
    is_simple = (funcs & np.uint64(1)) == 0
    is_simple &= (funcs >> top) & np.uint64(1) == 1
    games = funcs[is_simple]
    canon = canonicalize_u64(games, n)
    return np.unique(canon)


def unpack_game(word: int, n: int) -> SimpleGame:
    w = int(word)
    bits = np.fromiter(((w >> m) & 1 for m in range(1 << n)), dtype=bool, count=1 << n)
    return SimpleGame(n, bits, validate=False)


def pack_game(game: SimpleGame) -> int:
    return int(np.sum(game.winning.astype(object) << np.arange(1 << game.n, dtype=object)))


def _shift_order_positions(n: int) -> list[int]:
    """Masks ordered so every dominating coalition precedes the dominated."""
    def idxsum(mask: int) -> int:
        return sum(i + 1 for i in range(n) if mask >> i & 1)

    return sorted(range(1 << n), key=lambda m: (-bin(m).count("1"), idxsum(m), m))


def _upper_neighbors(mask: int, n: int) -> list[int]:
    """One-step dominating coalitions: add a voter, or shift one up."""
    out = []
    for j in range(n):
        if not mask >> j & 1:
            out.append(mask | 1 << j)
    for j in range(1, n):
        if (mask >> j & 1) and not (mask >> (j - 1) & 1):
            out.append(mask ^ (1 << j) | 1 << (j - 1))
    return out


@lru_cache(maxsize=None)
def complete_games_matrix(n: int) -> np.ndarray:
    """All complete simple games (one per isomorphism class) as bool rows.

    Voters are sorted by desirability, so each game is an up-set of the
    dominance order; distinct up-sets are never isomorphic.
    """
    if n > COMPLETE_LIMIT:
        raise ResourceLimit(f"complete-game enumeration supports n <= {COMPLETE_LIMIT}")
    size = 1 << n
    order = _shift_order_positions(n)
    ups = [_upper_neighbors(m, n) for m in range(size)]
    state = np.zeros(size, dtype=np.int8)  # 0 undecided, 1 win, -1 lose
    results: list[np.ndarray] = []

    def rec(pos: int):
        if pos == size:
            results.append((state == 1).copy())
            return
        mask = order[pos]
        if mask == size - 1:  # grand coalition must win
            state[mask] = 1
            rec(pos + 1)
            state[mask] = 0
            return
        if mask == 0 or any(state[u] == -1 for u in ups[mask]):
            state[mask] = -1
            rec(pos + 1)
            state[mask] = 0
            return
        for val in (1, -1):
            state[mask] = val
            rec(pos + 1)
        state[mask] = 0

    rec(0)
    return np.array(results)


@lru_cache(maxsize=None)
def weighted_games_list(n: int) -> tuple[tuple[int, WeightedGame], ...]:
    """(row index into the complete matrix, certificate) per weighted class."""
    mat = complete_games_matrix(n)
    out = []
    for row in range(mat.shape[0]):
        game = SimpleGame(n, mat[row], validate=False)
        rep = weighted_representation(game, assume_sorted=True)
        if rep is not None:
            out.append((row, rep))
    return tuple(out)


def count_class(n: int, cls: str) -> int:
    """Number of isomorphism classes (the published enumeration counts)."""
    if cls == CLASS_SIMPLE:
        return int(simple_games_packed(n).shape[0])
    if cls == CLASS_COMPLETE:
        return int(complete_games_matrix(n).shape[0])
    if cls == CLASS_WEIGHTED:
        return len(weighted_games_list(n))
    raise ValueError(f"unknown class {cls!r}")


def enumerate_class(n: int, cls: str) -> Iterator[SimpleGame]:
    """Stream every isomorphism class of the given kind exactly once."""
    if cls == CLASS_SIMPLE:
        for word in simple_games_packed(n):
            yield unpack_game(int(word), n)
    elif cls == CLASS_COMPLETE:
        mat = complete_games_matrix(n)
        for row in range(mat.shape[0]):
            yield SimpleGame(n, mat[row], validate=False)
    elif cls == CLASS_WEIGHTED:
        mat = complete_games_matrix(n)
        for row, _rep in weighted_games_list(n):
            yield SimpleGame(n, mat[row], validate=False)
    else:
        raise ValueError(f"unknown class {cls!r}")


@lru_cache(maxsize=None)
def class_swing_profiles(n: int, cls: str) -> np.ndarray:
    """Per-class swing counts, one row per game, sorted descending per row."""
    if cls == CLASS_SIMPLE:
        games = simple_games_packed(n)
        prof = swings_batch_u64(games, n)
    else:
        mat = complete_games_matrix(n)
        if cls == CLASS_WEIGHTED:
            rows = [row for row, _ in weighted_games_list(n)]
            mat = mat[rows]
        prof = _swings_matrix(mat, n)
    prof = np.sort(prof, axis=1)[:, ::-1]
    return prof


def _swings_matrix(mat: np.ndarray, n: int) -> np.ndarray:
    masks = np.arange(1 << n)
    out = np.empty((mat.shape[0], n), dtype=np.int32)
    for i in range(n):
        idx = masks[(masks >> i) & 1 == 0]
        out[:, i] = np.count_nonzero(mat[:, idx | 1 << i] & ~mat[:, idx], axis=1)
    return out
