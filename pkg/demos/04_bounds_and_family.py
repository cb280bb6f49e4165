"""Lower bounds from major-player reduction, and the analytic family.

Concentrating nearly all power on k players lets an n-player game be
replaced by a k-player one at a bounded cost; combining that with the
exactly solved k-player problem yields lower bounds no game can beat.
The second half evaluates the parametric family whose heuristic error
exceeds the best weighted game by ~100% forever.
"""

from fractions import Fraction

from invbzf import (
    Metric,
    ae_rhs,
    AEParameters,
    b_bound,
    family_target,
    family_pbi,
    lower_bound,
    lower_bound_best,
    pbi_weighted,
    table8_deviation,
    VnGame,
    a_for_d1,
    distance,
)

F = Fraction

# Target: split power 3:1 between two partners, everyone else null.
beta = (F(3, 4), F(1, 4)) + (F(0),) * 6
print("reduction cost bound at k=2, eps=1/18:", ae_rhs(AEParameters(2, F(1, 18))))
print("lower bound with eps=1/18:", lower_bound(beta, 2, F(1, 18)))
best, eps = lower_bound_best(beta, 2)
print(f"best bound over the eps sweep: {best} at eps={eps}")
print("=> no simple game of any size approximates (0.75, 0.25, 0...) "
      "below 1/9 in the sum metric")

# The family (2,...,2,1)/(2n-1): every quota interval wastes ~2/(2n-1).
n = 10
beta_n = family_target(n)
print(f"\nfamily target n={n}:", [float(b) for b in beta_n.beta][:3], "...")
print("uniform-interval game PBI:", family_pbi(n, "I2").values[0], "each")
heur = distance(Metric.d1(), family_pbi(n, "I2").values, beta_n.beta)
print("heuristic deviation:", heur, "=", float(heur))

# The three-weight construction does about twice as well...
a = a_for_d1(n)
vn = VnGame(n, a)
dev = table8_deviation(n)[3]
print(f"\nthree-weight game {vn.weighted}: closed-form deviation {dev} = {float(dev):.6f}")
check = distance(Metric.d1(), pbi_weighted(vn.weighted).values, beta_n.beta)
print("brute-force check:", check == dev)

# ... and in the max metric the bound decays like 1/n^2.
for m in (9, 12, 15):
    print(f"max-metric bound b({m}) = {float(b_bound(m)):.6f}  (n^2 b = {float(b_bound(m))*m*m:.3f})")
