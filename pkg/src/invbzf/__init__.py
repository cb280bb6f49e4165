"""Inverse Penrose-Banzhaf power index problem: exact and heuristic solvers."""

__version__ = "0.1.0"

from .games import (
    Coalition,
    SimpleGame,
    SwingProfile,
    PowerVector,
    WeightedGame,
    canonical_form,
    desirability,
    dual,
    from_minimal_winning,
    is_complete,
    pbi,
    pbi_absolute,
    pbi_weighted,
    realize,
    swings,
    swings_weighted,
)
from .targets import (
    Metric,
    PopulationVector,
    TargetVector,
    distance,
    grid_count,
    grid_points,
    grid_sample,
    load_population_csv,
    sqrt_rule_target,
)
from .heuristics import (
    HALF,
    QBAR,
    QSTAR,
    HeuristicResult,
    evaluate_heuristic,
    heuristic_game,
    qbar_value,
    qstar_value,
)
from .enumeration import count_class, enumerate_class
from .solver import (
    FeasibilityProblem,
    SolveResult,
    bisection_solve,
    epsilon_floor,
    feasible,
    solve_by_enumeration,
)
from .bounds import AEParameters, ae_rhs, lower_bound, lower_bound_best, reduce_major_players
from .family import (
    VnGame,
    a_for_d1,
    a_for_dinf,
    b_bound,
    family_game,
    family_pbi,
    family_target,
    table8_deviation,
    vn_swings,
)
from .local_search import SearchConfig, hill_climb, termination_quantiles
from .lp_export import export_ilp
from .certify import weighted_representation
