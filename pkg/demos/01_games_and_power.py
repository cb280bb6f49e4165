"""Binary voting systems and the Penrose-Banzhaf index, from scratch.

A walkthrough of the core objects: weighted games, the universal
simple-game representation, swing counting, duality, and Isbell's
desirability ordering.
"""

from fractions import Fraction

from invbzf import (
    WeightedGame,
    desirability,
    dual,
    from_minimal_winning,
    is_complete,
    pbi,
    pbi_absolute,
    realize,
    swings,
)

# The running three-voter example: quota 2, weights (2, 1, 1).
game = realize(WeightedGame(3, 2, (2, 1, 1)))
print("weighted game [2; 2,1,1]")
print("  swings:        ", swings(game).per_player)        # (3, 1, 1)
print("  absolute PBI:  ", pbi_absolute(game).values)      # (3/4, 1/4, 1/4)
print("  normalized PBI:", pbi(game).values)               # (3/5, 1/5, 1/5)

# Weight is not power: a big weight change that moves no coalition across
# the quota changes nothing.
same = realize(WeightedGame(3, 51, (49, 48, 3)))
print("\n[51; 49,48,3] has PBI", pbi(same).values, "- every pair wins")

# ... while a tiny change can create a dictator.
dictator = realize(WeightedGame(3, 51, (51, 46, 3)))
print("[51; 51,46,3] has PBI", pbi(dictator).values)

# Games are closed under duality, and swings are preserved.
print("\ndual of [2; 2,1,1] has swings", swings(dual(game)).per_player)

# Simple games beyond weighted ones: give the minimal winning coalitions.
vetoes = from_minimal_winning(4, [(1, 2), (3, 4)])
print("\ngame with minimal winning {1,2}, {3,4}:")
print("  1 vs 3:", desirability(vetoes, 1, 3))
print("  complete?", is_complete(vetoes))  # False: not a weighted game
