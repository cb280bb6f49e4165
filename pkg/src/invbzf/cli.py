"""Command-line front end.

Subcommands cover the whole pipeline: ``solve`` (exact enumeration,
bisection, or hill climbing for one target), ``grid-stats`` (heuristic or
unavoidable deviation statistics over the target grid), ``enum-count``
(class enumeration counts), ``bounds`` (major-player lower bounds),
``family-table`` (the analytic family's table rows), ``export-ilp``
(LP-file export of a feasibility instance), and ``reproduce`` (golden
diff against the shipped reference tables).

Every result file gets a sibling ``<name>.manifest.json`` recording the
command, parameters, seed, package version, and wall time; re-running
with the manifest's parameters reproduces the result bytes.  Exit codes:
0 success, 1 reproduction failures, 2 invalid input, 3 node budget
exhausted (bracket still emitted).

The environment variable ``INVBZF_THREADS`` sets the number of worker
processes used to partition full-grid statistics.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import AEParameters, ae_rhs, l1_bound, lower_bound, lower_bound_best
from .enumeration import count_class
from .family import family_heuristic_distances, family_target
from .gridstats import (
    deviation_stats,
    grid_matrix,
    heuristic_grid_distances,
    optimal_grid_distances,
    sample_matrix,
)
from .heuristics import RULES
from .local_search import SearchConfig, hill_climb
from .lp_export import export_ilp
from .reproduce import FAIL, reproduce
from .solver import (
    BRACKETED,
    FeasibilityProblem,
    bisection_solve,
    solve_by_enumeration,
)
from .targets import (
    D1,
    D1W,
    DINF,
    Metric,
    TargetVector,
    load_population_csv,
    sqrt_rule_target,
)


class InputError(ValueError):
    pass


def _metric_from_name(name: str, population=None) -> Metric:
    if name == "d1":
        return Metric.d1()
    if name == "dinf":
        return Metric.dinf()
    if name == "d1w":
        if population is None:
            raise InputError("metric d1w needs --population")
        return Metric.d1_weighted(population)
    raise InputError(f"unknown metric {name!r}")


def _load_target(args) -> tuple[TargetVector, object]:
    if getattr(args, "beta_file", None):
        try:
            payload = json.loads(Path(args.beta_file).read_text())
            return TargetVector.from_json_obj(payload), None
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot read target file: {exc}") from exc
    if getattr(args, "population", None):
        pop = load_population_csv(args.population)
        return sqrt_rule_target(pop).vector, pop
    raise InputError("need --beta-file or --population")


def _write_with_manifest(path: Path, text: str, args, t0: float, seed=None) -> None:
    path = Path(path)
    path.write_text(text)
    manifest = {
        "command": args.command,
        "parameters": {
            k: v
            for k, v in sorted(vars(args).items())
            if k not in ("command", "func") and v is not None
        },
        "seed": seed,
        "tool_version": __version__,
        "wall_time_s": round(time.time() - t0, 3),
        "outputs": [str(path)],
    }
    Path(str(path) + ".manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def cmd_solve(args) -> int:
    t0 = time.time()
    beta, pop = _load_target(args)
    metric = _metric_from_name(args.metric, pop)
    if args.method == "enum":
        result = solve_by_enumeration(beta, args.cls, metric)
    elif args.method == "bisect":
        tol = Fraction(args.tol) if args.tol else None
        result = bisection_solve(beta, args.cls, metric, node_budget=args.budget, tol=tol)
    elif args.method == "hill":
        config = SearchConfig(restarts=args.restarts, seed=args.seed)
        result = hill_climb(beta, metric, config)
    else:
        raise InputError(f"unknown method {args.method!r}")
    payload = result.to_json_obj()
    payload["class"] = args.cls
    payload["metric"] = args.metric
    text = json.dumps(payload, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write_with_manifest(args.out, text, args, t0, seed=args.seed)
    return 3 if result.status == BRACKETED else 0


def cmd_grid_stats(args) -> int:
    t0 = time.time()
    if args.rule not in RULES + ("optimal",):
        raise InputError(f"unknown rule {args.rule!r}")
    metric_kinds = (D1, DINF) if args.metric == "both" else (args.metric,)
    targets = None
    if args.sample:
        targets = sample_matrix(args.n, args.sample, args.seed)
    if args.rule == "optimal":
        if args.sample and args.n >= 8:
            dists = _sampled_optimal(args, targets, metric_kinds)
        elif args.n > 6 and not args.sample:
            raise InputError(
                "full-grid optima are desk-feasible up to n=6; use --sample for larger n"
            )
        else:
            dists = optimal_grid_distances(args.n, args.cls, targets)
    else:
        dists = _heuristic_stats_parallel(args.n, args.rule, targets)
    lines = ["n,rule,metric,median,average,q10,q05,q01"]
    for kind in metric_kinds:
        st = deviation_stats(dists[kind])
        lines.append(
            f"{args.n},{args.rule},{kind},{st.median:.6f},{st.average:.6f},"
            f"{st.q10:.6f},{st.q05:.6f},{st.q01:.6f}"
        )
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write_with_manifest(args.out, text, args, t0, seed=args.seed)
    return 0


def _sampled_optimal(args, targets, metric_kinds):
    """Hill-climbing upper bounds per sampled point (large-n fallback)."""
    out = {k: [] for k in metric_kinds}
    config = SearchConfig(restarts=args.restarts, seed=args.seed)
    for row in range(targets.shape[0]):
        beta = TargetVector(tuple(Fraction(int(x), 100) for x in targets[row]))
        for kind in metric_kinds:
            metric = Metric.d1() if kind == D1 else Metric.dinf()
            res = hill_climb(beta, metric, config)
            out[kind].append(float(res.distance))
    return {k: np.array(v) for k, v in out.items()}


def _heuristic_chunk(task):
    n, rule, rows = task
    return heuristic_grid_distances(n, rule, rows)


def _heuristic_stats_parallel(n, rule, targets):
    threads = int(os.environ.get("INVBZF_THREADS", "1"))
    rows = grid_matrix(n) if targets is None else targets
    if threads <= 1 or rows.shape[0] < 10000:
        return heuristic_grid_distances(n, rule, rows)
    from concurrent.futures import ProcessPoolExecutor

    chunks = np.array_split(rows, threads)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(_heuristic_chunk, [(n, rule, c) for c in chunks]))
    return {
        kind: np.concatenate([p[kind] for p in parts]) for kind in parts[0]
    }


def cmd_enum_count(args) -> int:
    print(f"{args.cls},{args.n},{count_class(args.n, args.cls)}")
    return 0


def cmd_bounds(args) -> int:
    t0 = time.time()
    beta, _pop = _load_target(args)
    lines = ["k,epsilon,l1,l2,bound"]
    if args.epsilon:
        eps_list = [Fraction(args.epsilon)]
    else:
        _best, eps = lower_bound_best(beta.beta, args.k)
        eps_list = [eps]
    for eps in eps_list:
        l1 = l1_bound(beta.beta, args.k, eps)
        bound = lower_bound(beta.beta, args.k, eps)
        rhs = ae_rhs(AEParameters(args.k, eps))
        l2 = bound if bound != l1 else None
        # recompute l2 directly for the report
        from .solver import head_distance_minimum

        eps_prime = head_distance_minimum(beta.beta[: args.k]) + sum(beta.beta[args.k :])
        l2 = eps_prime - rhs
        lines.append(f"{args.k},{eps},{float(l1):.6f},{float(l2):.6f},{float(bound):.6f}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write_with_manifest(args.out, text, args, t0)
    return 0


def cmd_family_table(args) -> int:
    t0 = time.time()
    lines = ["n,metric,heuristic,opt_enum_class,opt_enum_distance"]
    metric = Metric.d1() if args.metric == D1 else Metric.dinf()
    for n in range(args.n_min, args.n_max + 1):
        heur = family_heuristic_distances(n)[("I2", args.metric)]
        opt_txt = ""
        cls_txt = ""
        if n <= args.solver_cap:
            res = solve_by_enumeration(family_target(n), args.cls, metric)
            opt_txt = f"{float(res.distance):.6f}"
            cls_txt = args.cls
        lines.append(f"{n},{args.metric},{float(heur):.6f},{cls_txt},{opt_txt}")
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.out:
        _write_with_manifest(args.out, text, args, t0)
    return 0


def cmd_export_ilp(args) -> int:
    t0 = time.time()
    beta, pop = _load_target(args)
    metric = _metric_from_name(args.metric, pop)
    problem = FeasibilityProblem(beta.beta, args.cls, metric, Fraction(args.alpha))
    export_ilp(problem, args.out)
    _write_with_manifest(
        Path(args.out), Path(args.out).read_text(), args, t0
    )
    return 0


def cmd_reproduce(args) -> int:
    t0 = time.time()
    cells = reproduce(args.table, full=args.full, population_dir=args.population_dir)
    lines = ["table,row,column,expected,actual,tolerance,status"]
    any_fail = False
    for c in cells:
        print(c.line())
        lines.append(
            f"{c.table},{c.row},{c.column},{c.expected},"
            f"{'' if c.actual is None else c.actual},{c.tolerance},{c.status}"
        )
        any_fail |= c.status == FAIL
    text = "\n".join(lines) + "\n"
    if args.out:
        _write_with_manifest(args.out, text, args, t0)
    return 1 if any_fail else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invbzf",
        description="Exact and heuristic solutions to the inverse Penrose-Banzhaf problem",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_target_opts(p):
        p.add_argument("--beta-file", help="JSON target {\"beta\": [\"num/den\", ...]}")
        p.add_argument("--population", help="CSV population file (name,population)")

    p = sub.add_parser("solve", help="solve one inverse problem instance")
    add_target_opts(p)
    p.add_argument("--class", dest="cls", choices=["S", "C", "W"], default="W")
    p.add_argument("--metric", choices=["d1", "dinf", "d1w"], default="d1")
    p.add_argument("--method", choices=["enum", "bisect", "hill"], default="bisect")
    p.add_argument("--budget", type=int, default=10_000_000, help="node budget per feasibility call")
    p.add_argument("--tol", help="optional bracket tolerance for bisect (fraction)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--out", help="write result JSON (+manifest) here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("grid-stats", help="deviation statistics over the target grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rule", required=True, help="half | qstar | qbar | optimal")
    p.add_argument("--metric", choices=["d1", "dinf", "both"], default="both")
    p.add_argument("--class", dest="cls", choices=["S", "C", "W"], default="W")
    p.add_argument("--sample", type=int, help="sample size (with replacement)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=20, help="hill-climb restarts for sampled optima")
    p.add_argument("--out")
    p.set_defaults(func=cmd_grid_stats)

    p = sub.add_parser("enum-count", help="number of isomorphism classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--class", dest="cls", choices=["S", "C", "W"], required=True)
    p.set_defaults(func=cmd_enum_count)

    p = sub.add_parser("bounds", help="major-player lower bounds")
    add_target_opts(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", help="fraction; default: best over the sweep")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("family-table", help="analytic family table rows")
    p.add_argument("--metric", choices=["d1", "dinf"], default="d1")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=20)
    p.add_argument("--class", dest="cls", choices=["S", "C", "W"], default="C")
    p.add_argument("--solver-cap", type=int, default=6, help="enumerate optima up to this n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_family_table)

    p = sub.add_parser("export-ilp", help="write the feasibility ILP as an LP file")
    add_target_opts(p)
    p.add_argument("--class", dest="cls", choices=["S", "C", "W"], default="S")
    p.add_argument("--metric", choices=["d1", "dinf"], default="d1")
    p.add_argument("--alpha", required=True, help="fraction, e.g. 1/10")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_ilp)

    p = sub.add_parser("reproduce", help="diff recomputed tables against shipped values")
    p.add_argument("--table", required=True, choices=["1", "2", "3", "4", "5", "6", "7", "opt"])
    p.add_argument("--full", action="store_true", help="extend to the slower desk sizes")
    p.add_argument("--population-dir", help="directory with eu<year>.csv files for table 2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
