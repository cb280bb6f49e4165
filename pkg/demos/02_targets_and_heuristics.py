"""Target power vectors and the three quota heuristics.

Builds square-root-rule targets from population data, walks the target
grid, and realizes the three weights-equal-target heuristics with exact
coalition decisions.
"""

from fractions import Fraction

from invbzf import (
    HALF,
    QBAR,
    QSTAR,
    Metric,
    PopulationVector,
    TargetVector,
    evaluate_heuristic,
    grid_count,
    grid_points,
    qbar_value,
    sqrt_rule_target,
)

# Square-root rule: power proportional to sqrt(population) equalizes the
# influence of individual citizens in a two-tier system.
pop = PopulationVector(("A", "B", "C"), (16, 4, 1))
target = sqrt_rule_target(pop)
print("sqrt-rule target for populations (16, 4, 1):", target.vector.beta)
print("certified error bound:", float(target.error_bound))

# The grid of conceivable targets at step 1/4 (step 1/100 in the studies).
print("\ngrid n=3, step 1/4:")
for tv in grid_points(3, Fraction(1, 4)):
    print("  ", tv.as_floats())
print("grid n=5, step 1/100 has", grid_count(5), "targets")

# The three heuristics on a concrete target.
beta = TargetVector((Fraction(1, 2), Fraction(3, 10), Fraction(1, 5)))
metrics = (Metric.d1(), Metric.dinf())
print("\nheuristic deviations for beta =", beta.as_floats())
for rule in (HALF, QSTAR, QBAR):
    res = evaluate_heuristic(beta, rule, metrics)
    print(f"  {rule:5s} quota~{float(res.quota_value):.4f} "
          f"d1={float(res.distances['d1']):.4f} dinf={float(res.distances['dinf']):.4f}")

print("\naveraged quota 1/2 + 1/sqrt(pi n) falls toward 1/2:")
for n in (1, 4, 9, 25, 100):
    print(f"  n={n:3d}: {float(qbar_value(n)):.6f}")
