"""Writer for the feasibility ILP in CPLEX-style LP text format.

The exported model decides whether a game of the requested class comes
within ``alpha`` of the target: binary winning bits ``x{mask}`` with
monotonicity on covers, swing indicators ``y{player}_{mask}``, swing
counts ``si{player}`` and their total ``s``, deviation variables
``d{player}`` with the two absolute-value rows each, and the single
budget row tying the deviations to ``alpha * s`` (one row per player for
the max metric).  Rows involving the rational target or alpha are scaled
by their denominators so every coefficient in the file is an exact
integer.

For the weighted class, continuous weights ``w{player}`` and quota ``q``
are added with the two big-M rows per coalition that force losing
coalitions under and winning coalitions over the quota; the documented
big-M value comes from the classical bound on minimal integer weights of
threshold functions.  For the complete class, the model fixes the
desirability order to match the (sorted) target and adds the one-step
shift rows.

The grammar subset used: ``Minimize``/``Subject To``/``Bounds``/
``General``/``Binary``/``End`` sections, named rows, integer
coefficients, ``<=``/``>=``/``=`` relations.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .solver import FeasibilityProblem
from .targets import D1, D1W, DINF


def muroga_weight_bound(n: int) -> int:
    """Every n-player weighted game has integer weights at most this."""
    return max(1, int((n + 1) ** ((n + 1) / 2) / 2**n) + 1)


def export_ilp(problem: FeasibilityProblem, path) -> None:
    """Write the feasibility model for the problem to ``path``."""
    n = len(problem.beta)
    if n > 12:
        raise ValueError("export supports n <= 12 (variable count doubles per player)")
    beta = sorted((Fraction(b) for b in problem.beta), reverse=True)
    alpha = Fraction(problem.alpha)
    size = 1 << n
    lines: list[str] = []
    lines.append(f"\\ inverse power index feasibility: n={n} class={problem.cls}")
    lines.append(f"\\ metric={problem.metric.kind} alpha={alpha.numerator}/{alpha.denominator}")
    lines.append("\\ target (descending): " + " ".join(
        f"{b.numerator}/{b.denominator}" for b in beta))
    lines.append("Minimize")
    lines.append(" obj: 0 s")
    lines.append("Subject To")

    def x(mask: int) -> str:
        return f"x{mask}"

    # monotonicity on covers
    for mask in range(size):
        for i in range(n):
            if not mask >> i & 1:
                lines.append(f" mono{mask}_{i}: {x(mask)} - {x(mask | 1 << i)} <= 0")
    # swing indicators y_{i,S} = x_{S+i} - x_S
    for i in range(n):
        for mask in range(size):
            if mask >> i & 1:
                continue
            lines.append(
                f" swing{i + 1}_{mask}: y{i + 1}_{mask} - {x(mask | 1 << i)} + {x(mask)} = 0"
            )
    # swing counts and total
    for i in range(n):
        terms = " - ".join(f"y{i + 1}_{mask}" for mask in range(size) if not mask >> i & 1)
        lines.append(f" count{i + 1}: si{i + 1} - {terms} = 0")
    lines.append(" total: s - " + " - ".join(f"si{i + 1}" for i in range(n)) + " = 0")
    # deviations, scaled by the target denominators
    for i in range(n):
        num, den = beta[i].numerator, beta[i].denominator
        lines.append(f" absp{i + 1}: {den} d{i + 1} - {den} si{i + 1} + {num} s >= 0")
        lines.append(f" absm{i + 1}: {den} d{i + 1} + {den} si{i + 1} - {num} s >= 0")
    # distance budget
    an, ad = alpha.numerator, alpha.denominator
    if problem.metric.kind == D1:
        lines.append(
            " dist: " + " + ".join(f"{ad} d{i + 1}" for i in range(n)) + f" - {an} s <= 0"
        )
    elif problem.metric.kind == DINF:
        for i in range(n):
            lines.append(f" dist{i + 1}: {ad} d{i + 1} - {an} s <= 0")
    else:
        raise ValueError("export supports the d1 and dinf metrics")

    if problem.cls == "C" or problem.cls == "W":
        # desirability order matching the sorted target: one-step shifts
        for mask in range(size):
            for i in range(n - 1):
                if (mask >> (i + 1) & 1) and not mask >> i & 1:
                    stronger = mask ^ (1 << (i + 1)) | 1 << i
                    lines.append(f" shift{mask}_{i + 1}: {x(mask)} - {x(stronger)} <= 0")
    if problem.cls == "W":
        bound = muroga_weight_bound(n)
        big_m = n * bound + 1
        for mask in range(size):
            terms = [f"w{i + 1}" for i in range(n) if mask >> i & 1]
            lhs = " + ".join(terms) if terms else "0 w1"
            lines.append(f" wlo{mask}: {lhs} - q - {big_m} {x(mask)} <= -1")
            lines.append(f" whi{mask}: {lhs} - q - {big_m} {x(mask)} >= {-big_m}")

    lines.append("Bounds")
    lines.append(f" {x(0)} = 0")
    lines.append(f" {x(size - 1)} = 1")
    m = n // 2 + 1
    lines.append(f" {n} <= s <= {m * comb(n, m)}")
    for i in range(n):
        lines.append(f" 0 <= si{i + 1} <= {1 << (n - 1)}")
        lines.append(f" d{i + 1} >= 0")
    if problem.cls == "W":
        bound = muroga_weight_bound(n)
        for i in range(n):
            lines.append(f" 0 <= w{i + 1} <= {bound}")
        lines.append(f" 1 <= q <= {n * bound}")
    lines.append("Binary")
    for mask in range(size):
        lines.append(f" {x(mask)}")
    for i in range(n):
        for mask in range(size):
            if not mask >> i & 1:
                lines.append(f" y{i + 1}_{mask}")
    lines.append("End")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
