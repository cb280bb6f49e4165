"""Exact inverse solutions: enumeration, feasibility bisection, LP export.

The inverse problem asks for the game whose power vector is closest to a
target.  At desk sizes every isomorphism class can be enumerated; the
bisection oracle scales further by searching coalition-by-coalition with
swing-interval pruning, and proves optimality via the distance quantum.
"""

import tempfile
from fractions import Fraction
from pathlib import Path

from invbzf import (
    FeasibilityProblem,
    Metric,
    TargetVector,
    bisection_solve,
    count_class,
    epsilon_floor,
    export_ilp,
    feasible,
    pbi,
    solve_by_enumeration,
)

F = Fraction
d1 = Metric.d1()

print("class sizes (simple / complete / weighted):")
for n in range(1, 6):
    print(f"  n={n}: {count_class(n, 'S'):4d} {count_class(n, 'C'):4d} {count_class(n, 'W'):4d}")

beta = TargetVector((F(3, 5), F(1, 5), F(1, 5)))
res = solve_by_enumeration(beta, "W", d1)
print(f"\ntarget {beta.as_floats()}: optimal weighted game {res.witness_weights}, "
      f"distance {res.distance}")

# A target no game can approximate well: 3:1 power split plus null players.
beta2 = TargetVector((F(3, 4), F(1, 4), F(0), F(0), F(0)))
res2 = bisection_solve(beta2, "S", d1)
print(f"\n(0.75, 0.25, 0, 0, 0): best simple game distance {res2.distance} "
      f"({res2.status}, {res2.iterations} oracle calls)")
print("PBI of the witness:", [float(x) for x in pbi(res2.best_game).values])

# The oracle itself: is any 5-player game within 0.35 of that target?
problem = FeasibilityProblem(beta2.beta, "S", d1, F(35, 100))
print("feasible at alpha=0.35?", feasible(problem)[0])
print("distance quantum floor (n=5):", epsilon_floor(5))

# Exporting the same feasibility question for an external ILP solver.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "feasibility.lp"
    export_ilp(problem, path)
    print(f"\nLP export: {len(path.read_text().splitlines())} lines, starts with:")
    for line in path.read_text().splitlines()[:4]:
        print("  ", line)
