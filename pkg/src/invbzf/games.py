"""Binary voting systems and the Penrose-Banzhaf index.

A binary voting system with voters ``{1, ..., n}`` is a monotone Boolean
function on coalitions: a coalition either wins (the motion passes) or
loses.  This module provides

* :class:`SimpleGame` -- the universal representation: one winning bit per
  coalition, the coalition ``S`` encoded as the bitmask with bit ``i-1``
  set for every voter ``i`` in ``S``;
* :class:`WeightedGame` -- integer quota/weight representations, realized
  into a :class:`SimpleGame` or evaluated directly by dynamic programming
  over weight sums;
* swing counting, the absolute and normalized Penrose-Banzhaf index (PBI),
  duality, Isbell's desirability relation and completeness, and a
  canonical form under voter relabelings.

Voter ``i``'s swings are the coalitions ``S`` not containing ``i`` that
lose while ``S + i`` wins.  The absolute PBI is ``s_i / 2**(n-1)`` and the
normalized PBI is ``s_i / sum(s)``.  All index arithmetic is exact
(integers and :class:`fractions.Fraction`); floats never enter the power
computations.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_PLAYERS = 24


class GameError(ValueError):
    """Raised for structurally invalid games or coalitions."""


def mask_of(players: Iterable[int], n: int) -> int:
    """Bitmask of a coalition given 1-based voter indices."""
    m = 0
    for p in players:
        if not 1 <= p <= n:
            raise GameError(f"player {p} outside 1..{n}")
        m |= 1 << (p - 1)
    return m


def players_of(mask: int) -> tuple[int, ...]:
    """1-based voter indices of a coalition bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Coalition:
    """A subset of the voters ``{1, ..., n}``, stored as an n-bit mask."""

    n: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_PLAYERS:
            raise GameError(f"n={self.n} outside 1..{MAX_PLAYERS}")
        if not 0 <= self.mask < (1 << self.n):
            raise GameError(f"mask {self.mask} outside 0..2^{self.n}-1")

    @classmethod
    def from_players(cls, players: Iterable[int], n: int) -> "Coalition":
        return cls(n, mask_of(players, n))

    @property
    def members(self) -> tuple[int, ...]:
        return players_of(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, player: int) -> bool:
        return bool(self.mask >> (player - 1) & 1)

    def subsets(self):
        """All subsets of this coalition (2^|S| masks, including 0)."""
        sub = self.mask
        while True:
            yield Coalition(self.n, sub)
            if sub == 0:
                return
            sub = (sub - 1) & self.mask


@lru_cache(maxsize=32)
def _all_masks(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)

@lru_cache(maxsize=128)
def _masks_without(n: int, bit: int) -> np.ndarray:
    m = _all_masks(n)
    return m[(m >> bit) & 1 == 0]


class SimpleGame:
    """A monotone Boolean function v with v(empty) = 0 and v(N) = 1.

    ``winning`` is a bool array of length ``2**n`` indexed by coalition
    mask.  Instances are immutable; operations on them are pure functions.
    """

    __slots__ = ("n", "winning")

    def __init__(self, n: int, winning: np.ndarray, validate: bool = True):
        if not 1 <= n <= MAX_PLAYERS:
            raise GameError(f"n={n} outside 1..{MAX_PLAYERS}")
        w = np.ascontiguousarray(winning, dtype=bool)
        if w.shape != (1 << n,):
            raise GameError(f"winning array must have length 2^{n}")
        w.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "winning", w)
        if validate:
            self.validate()

    def __setattr__(self, *a):
        raise AttributeError("SimpleGame is immutable")

    def validate(self) -> None:
        """Check v(empty)=0, v(N)=1 and monotonicity on all covers."""
        w = self.winning
        if w[0]:
            raise GameError("empty coalition must lose")
        if not w[-1]:
            raise GameError("grand coalition must win")
        for i in range(self.n):
            idx = _masks_without(self.n, i)
            if np.any(w[idx] & ~w[idx | (1 << i)]):
                raise GameError(f"not monotone at player {i + 1}")

    def wins(self, coalition: "Coalition | int") -> bool:
        mask = coalition.mask if isinstance(coalition, Coalition) else coalition
        return bool(self.winning[mask])

    def key(self) -> bytes:
        """Bytes encoding of the winning bitset (lexicographic order key)."""
        return np.packbits(self.winning).tobytes()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimpleGame)
            and self.n == other.n
            and np.array_equal(self.winning, other.winning)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.key()))

    def __repr__(self) -> str:
        mwc = [players_of(m) for m in minimal_winning(self)]
        return f"SimpleGame(n={self.n}, minimal_winning={mwc})"


@dataclass(frozen=True)
class WeightedGame:
    """Integer quota and nonnegative integer weights; S wins iff w(S) >= q."""

    n: int
    quota: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) != self.n:
            raise GameError("need one weight per player")
        if self.quota < 1:
            raise GameError("quota must be >= 1")
        if any(w < 0 for w in self.weights):
            raise GameError("weights must be nonnegative")
        if sum(self.weights) < self.quota:
            raise GameError("grand coalition must meet the quota")

    def weight(self, mask: int) -> int:
        return sum(w for i, w in enumerate(self.weights) if mask >> i & 1)

    def __repr__(self) -> str:
        return f"[{self.quota}; {', '.join(map(str, self.weights))}]"


@dataclass(frozen=True)
class SwingProfile:
    """Per-player swing counts and their total."""

    per_player: tuple[int, ...]
    total: int

    @property
    def n(self) -> int:
        return len(self.per_player)


@dataclass(frozen=True)
class PowerVector:
    """Exact rational power values; normalized entries sum to 1."""

    values: tuple[Fraction, ...]
    normalized: bool = True

    @property
    def n(self) -> int:
        return len(self.values)

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(v) for v in self.values)


def realize(w: WeightedGame) -> SimpleGame:
    """The simple game of a weighted representation (ties at the quota win)."""
    sums = coalition_weights(w.n, w.weights)
    return SimpleGame(w.n, sums >= w.quota, validate=False)


def coalition_weights(n: int, weights: Sequence[int]) -> np.ndarray:
    """Array of w(S) over all 2^n coalition masks."""
    sums = np.zeros(1 << n, dtype=np.int64)
    for i, wi in enumerate(weights):
        idx = _masks_without(n, i)
        sums[idx | (1 << i)] = sums[idx] + wi
    return sums


def from_minimal_winning(n: int, mwc: Iterable[Iterable[int] | Coalition]) -> SimpleGame:
    """Game whose winning coalitions are the supersets of the given ones.

    The given coalitions must form an antichain (no one contains another)
    and be non-empty as a family.
    """
    masks = []
    for c in mwc:
        masks.append(c.mask if isinstance(c, Coalition) else mask_of(c, n))
    if not masks:
        raise GameError("need at least one minimal winning coalition")
    for a, b in itertools.combinations(masks, 2):
        if a & b == a or a & b == b:
            raise GameError("coalitions are not an antichain, hence not all minimal")
    win = np.zeros(1 << n, dtype=bool)
    all_masks = _all_masks(n)
    for m in masks:
        win |= (all_masks & m) == m
    return SimpleGame(n, win)


def minimal_winning(v: SimpleGame) -> list[int]:
    """Masks of the minimal winning coalitions."""
    w = v.winning
    minimal = w.copy()
    for i in range(v.n):
        idx = _masks_without(v.n, i)
        # a winning S+i with S winning is not minimal
        minimal[idx | (1 << i)] &= ~w[idx]
    return [int(m) for m in np.nonzero(minimal)[0]]


def maximal_losing(v: SimpleGame) -> list[int]:
    """Masks of the maximal losing coalitions."""
    w = v.winning
    maximal = ~w
    for i in range(v.n):
        idx = _masks_without(v.n, i)
        maximal[idx] &= w[idx | (1 << i)]
    return [int(m) for m in np.nonzero(maximal)[0]]


def swings(v: SimpleGame) -> SwingProfile:
    """Swing counts s_i = |{S without i : S loses, S+i wins}|."""
    w = v.winning
    per = []
    for i in range(v.n):
        idx = _masks_without(v.n, i)
        per.append(int(np.count_nonzero(~w[idx] & w[idx | (1 << i)])))
    return SwingProfile(tuple(per), sum(per))


def swings_weighted(w: WeightedGame) -> SwingProfile:
    """Swing counts by dynamic programming over weight sums.

    Runs in O(n * sum(w)) and never materializes the 2^n coalition table,
    so it stays usable far beyond the bit-array player limit.
    """
    total_w = sum(w.weights)
    counts = [0] * (total_w + 1)
    counts[0] = 1
    for wi in w.weights:
        if wi == 0:
            for t in range(total_w + 1):
                counts[t] *= 2
        else:
            for t in range(total_w, wi - 1, -1):
                counts[t] += counts[t - wi]
    per = []
    for wi in w.weights:
        if wi == 0:
            per.append(0)
            continue
        # deconvolve the factor (1 + x^wi) to count subsets excluding i
        excl = [0] * (total_w + 1)
        for t in range(total_w + 1):
            excl[t] = counts[t] - (excl[t - wi] if t >= wi else 0)
        lo = max(0, w.quota - wi)
        per.append(sum(excl[lo : w.quota]))
    return SwingProfile(tuple(per), sum(per))


def pbi_weighted(w: WeightedGame) -> PowerVector:
    """Normalized PBI of a weighted game, choosing the cheaper backend."""
    if w.n <= MAX_PLAYERS and (1 << w.n) <= w.n * (sum(w.weights) + 1):
        prof = swings(realize(w))
    else:
        prof = swings_weighted(w)
    return PowerVector(tuple(Fraction(s, prof.total) for s in prof.per_player))


def pbi(v: SimpleGame) -> PowerVector:
    """Normalized Penrose-Banzhaf index B_i = s_i / sum_j s_j."""
    prof = swings(v)
    return PowerVector(tuple(Fraction(s, prof.total) for s in prof.per_player))


def pbi_absolute(v: SimpleGame) -> PowerVector:
    """Absolute Penrose-Banzhaf index B'_i = s_i / 2^(n-1)."""
    prof = swings(v)
    den = 1 << (v.n - 1)
    return PowerVector(
        tuple(Fraction(s, den) for s in prof.per_player), normalized=False
    )


def null_players(v: SimpleGame) -> tuple[int, ...]:
    """1-based indices of players with zero swings."""
    prof = swings(v)
    return tuple(i + 1 for i, s in enumerate(prof.per_player) if s == 0)


def dual(v: SimpleGame) -> SimpleGame:
    """The dual game v'(S) = 1 - v(N minus S); swing counts are preserved."""
    full = (1 << v.n) - 1
    idx = full - _all_masks(v.n)
    return SimpleGame(v.n, ~v.winning[idx], validate=False)


MORE, LESS, EQUAL, INCOMPARABLE = "more", "less", "equal", "incomparable"


def desirability(v: SimpleGame, i: int, j: int) -> str:
    """Isbell comparison of voters i and j (1-based).

    ``i >= j`` holds iff replacing j by i never turns a winning coalition
    losing: v(S - j + i) >= v(S) for every S containing j but not i.
    """
    if i == j:
        return EQUAL
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    m = _all_masks(v.n)
    with_j = m[((m & bj) != 0) & ((m & bi) == 0)]
    swapped = (with_j ^ bj) | bi
    ge = bool(np.all(v.winning[swapped] >= v.winning[with_j]))
    with_i = m[((m & bi) != 0) & ((m & bj) == 0)]
    swapped_i = (with_i ^ bi) | bj
    le = bool(np.all(v.winning[swapped_i] >= v.winning[with_i]))
    if ge and le:
        return EQUAL
    if ge:
        return MORE
    if le:
        return LESS
    return INCOMPARABLE


def is_complete(v: SimpleGame) -> bool:
    """True iff the desirability relation is total (every pair comparable)."""
    for i in range(1, v.n + 1):
        for j in range(i + 1, v.n + 1):
            if desirability(v, i, j) == INCOMPARABLE:
                return False
    return True


def _player_signatures(v: SimpleGame) -> list[tuple]:
    """Relabeling-invariant per-player keys used to prune the canonical scan."""
    w = v.winning
    n = v.n
    sizes = np.array([m.bit_count() for m in range(1 << n)])
    sigs = []
    for i in range(n):
        idx = _masks_without(n, i)
        sw = int(np.count_nonzero(~w[idx] & w[idx | (1 << i)]))
        per_card = tuple(
            int(np.count_nonzero(w[idx | (1 << i)] & (sizes[idx] == c)))
            for c in range(n)
        )
        sigs.append((sw, per_card))
    return sigs


def relabel(v: SimpleGame, perm: Sequence[int]) -> SimpleGame:
    """Game with new player j+1 acting as old player perm[j]+1 (0-based perm)."""
    m = _all_masks(v.n)
    new_index = np.zeros_like(m)
    for j, p in enumerate(perm):
        new_index |= ((m >> p) & 1) << j
    out = np.empty_like(v.winning)
    out[new_index] = v.winning
    return SimpleGame(v.n, out, validate=False)


def canonical_key(v: SimpleGame) -> int:
    """The winning bitset as an integer: coalition mask = bit position."""
    packed = np.packbits(v.winning, bitorder="little").tobytes()
    return int.from_bytes(packed, "little")


def canonical_form(v: SimpleGame) -> SimpleGame:
    """Minimal winning bitset over all player relabelings.

    Minimality is in the fixed integer encoding of canonical_key; two
    games are isomorphic iff their canonical forms are equal.  The scan is
    restricted to permutations ordering players by an invariant signature,
    so only ties (automorphism candidates) are enumerated.
    """
    sigs = _player_signatures(v)
    order = sorted(range(v.n), key=lambda i: sigs[i], reverse=True)
    blocks = []
    for i in order:
        if blocks and sigs[blocks[-1][-1]] == sigs[i]:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    best_key = None
    best = None
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [p for part in parts for p in part]
        cand = relabel(v, perm)
        k = canonical_key(cand)
        if best_key is None or k < best_key:
            best_key, best = k, cand
    return best


def game_to_json(game: "SimpleGame | WeightedGame") -> str:
    """JSON text in the documented interchange format."""
    if isinstance(game, WeightedGame):
        payload = {"n": game.n, "quota": game.quota, "weights": list(game.weights)}
    else:
        payload = {
            "n": game.n,
            "minimal_winning": [list(players_of(m)) for m in minimal_winning(game)],
        }
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)


def game_from_json(text: str) -> "SimpleGame | WeightedGame":
    payload = json.loads(text)
    n = payload["n"]
    if "quota" in payload:
        return WeightedGame(n, payload["quota"], tuple(payload["weights"]))
    return from_minimal_winning(n, payload["minimal_winning"])
