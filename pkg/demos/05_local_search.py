"""Hill climbing with principled stop thresholds.

For sizes beyond exact enumeration, restarts of a steepest-descent climb
over integer weight representations give upper bounds; the shipped
unavoidable-deviation quantiles say when further restarts stop paying.
"""

from fractions import Fraction

from invbzf import (
    Metric,
    SearchConfig,
    TargetVector,
    hill_climb,
    termination_quantiles,
)

F = Fraction
d1 = Metric.d1()

beta = TargetVector((F(9, 25), F(6, 25), F(1, 5), F(3, 25), F(2, 25)))
res = hill_climb(beta, d1, SearchConfig(restarts=25, seed=7))
print("target:", beta.as_floats())
print("best found:", res.witness_weights, "distance", float(res.distance))

row = termination_quantiles(5, "d1")
print("\nunavoidable-deviation quantiles at n=5:", row)
if float(res.distance) <= row["q01"]:
    print("already below the 1% quantile: further search rarely pays")
else:
    print(f"distance {float(res.distance):.4f} vs median {row['median']}: "
          "odds of improvement depend on where we sit between the quantiles")

# The same table drives in-climb termination:
res2 = hill_climb(beta, d1, SearchConfig(restarts=25, seed=7,
                                         stop_threshold=F(1, 10)))
print("\nwith a stop threshold of 0.1 the climb halts early:",
      float(res2.distance))
