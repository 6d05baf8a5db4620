"""``cutbranch`` command line: generate, tree, relax and repro.

Exit codes: 0 success, 1 a claim failed (or stayed undecided), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import checks
from .geometry import LIMITS, BudgetExceeded, equals_integer_hull, explicit, integer_hull, polytope_within
from .hierarchies import b_k_polytope, l_iterate, sa_lift, t_k_polytope
from .instances import (
    Graph, Instance, clique_fractional, knapsack_uniform, nogood, r3_example, random_instance,
    remark64, stable_set_fractional, triangles_limit,
)
from .numeric import format_rational, parse_vector
from .polytope import optimize
from .report import FAIL, PASS, UNDECIDED, ExperimentReport, run_jobs, stringify, thread_cap
from .trees import BBTree, greedy_integral_tree, nogood_tree, skewed_k_tree, tree_relaxation

FAMILIES = ("stable-set", "clique", "knapsack", "nogood", "triangles", "r3", "remark64", "random")
GRAPHS = ("complete", "path", "cycle", "matching", "triangles")


class UsageError(Exception):
    pass


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required for {args.family}")


def _parse_points(text: str, n: int) -> list[tuple[int, ...]]:
    """``"000,011"`` or ``"0 0 0;0 1 1"`` into 0/1 tuples."""
    out = []
    for chunk in text.replace(";", ",").split(","):
        bits = [c for c in chunk if c in "01"]
        if len(bits) != n:
            raise UsageError(f"no-good point {chunk!r} must have {n} bits")
        out.append(tuple(int(b) for b in bits))
    return out


def build_instance(args) -> Instance:
    fam = args.family
    try:
        if fam == "stable-set":
            _require(args, "n")
            return stable_set_fractional(args.n)
        if fam == "clique":
            _require(args, "n")
            graph = {
                "complete": Graph.complete, "path": Graph.path, "cycle": Graph.cycle,
                "matching": Graph.perfect_matching,
                "triangles": lambda n: Graph.disjoint_triangles(n // 3),
            }[args.graph](args.n)
            return clique_fractional(graph)
        if fam == "knapsack":
            _require(args, "n")
            return knapsack_uniform(args.n, args.q if args.q is not None else 3)
        if fam == "nogood":
            _require(args, "n")
            S = _parse_points(args.S, args.n) if args.S else [(0,) * args.n]
            return nogood(args.n, S)
        if fam == "triangles":
            return triangles_limit(args.n if args.n is not None else 7)
        if fam == "r3":
            return r3_example()
        if fam == "remark64":
            _require(args, "n", "k")
            return remark64(args.n, args.k)
        if fam == "random":
            _require(args, "n")
            return random_instance(args.n, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown family {fam!r}")


def load_instance(args) -> Instance:
    if getattr(args, "instance", None):
        try:
            return Instance.from_json(json.loads(Path(args.instance).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read instance {args.instance}: {exc}") from exc
    if getattr(args, "family", None):
        return build_instance(args)
    raise UsageError("give --instance FILE or --family NAME")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _apply_budgets(args) -> None:
    LIMITS.update(
        fm_rows=args.budget_fm_rows,
        facet_candidates=args.budget_facets,
        trees=args.budget_trees,
        sa_level=args.budget_sa_level,
        vertex_dim=args.budget_vertex_dim,
    )


# --------------------------------------------------------------------------
# commands


def cmd_generate(args) -> int:
    inst = build_instance(args)
    if args.format != "json":
        raise UsageError("generate writes JSON only")
    _emit(json.dumps(inst.to_json(), indent=2, sort_keys=True), args.out)
    return 0


def cmd_tree(args) -> int:
    inst = None
    if args.builder == "skewed" and args.n is not None and not args.instance and not args.family:
        n = args.n
    elif args.builder == "nogood" and args.n is not None and not args.instance and not args.family:
        n = args.n
    else:
        inst = load_instance(args)
        n = inst.n
    try:
        if args.builder == "skewed":
            if args.k is None:
                raise UsageError("--k is required for the skewed builder")
            perm = [int(v) - 1 for v in args.perm.split(",")] if args.perm else None
            T = skewed_k_tree(n, args.k, perm)
        elif args.builder == "nogood":
            if args.S:
                S = _parse_points(args.S, n)
            elif inst is not None and "S" in inst.metadata:
                S = [tuple(s) for s in inst.metadata["S"]]
            else:
                S = [(0,) * n]
            T = nogood_tree(n, S)
        elif args.builder == "greedy":
            T = greedy_integral_tree(inst.polytope, max_size=args.budget_tree_size)
        else:
            raise UsageError(f"unknown builder {args.builder!r}")
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except BudgetExceeded as exc:
        _emit(json.dumps({"status": UNDECIDED, "reason": str(exc)}), None)
        return 1
    stats = T.stats()
    if inst is not None:
        try:
            H = inst.analytic_hull if inst.analytic_hull and inst.analytic_hull.facets else integer_hull(inst.polytope)
            stats["equals_integer_hull"] = equals_integer_hull(tree_relaxation(inst.polytope, T), H).equal
        except BudgetExceeded as exc:
            stats["equals_integer_hull"] = UNDECIDED
            stats["reason"] = str(exc)
    if args.format == "dot":
        _emit(T.to_dot(), args.out)
        sys.stderr.write(json.dumps(stats, sort_keys=True) + "\n")
    elif args.format == "json":
        _emit(json.dumps({"tree": T.to_json(), "n": n, "stats": stats}, indent=2, sort_keys=True), args.out)
    else:
        raise UsageError("tree supports --format json or dot")
    return 0


def _operator(inst: Instance, args):
    P = inst.polytope
    op = args.operator
    if op == "sa":
        if args.t is None:
            raise UsageError("--t is required for sa")
        return sa_lift(P, args.t).result()
    if args.k is None:
        raise UsageError(f"--k is required for {op}")
    if op == "l":
        return l_iterate(P, args.k)
    if op == "bk":
        return b_k_polytope(P, args.k)
    if op == "tk":
        return t_k_polytope(P, args.k)
    raise UsageError(f"unknown operator {op!r}")


def cmd_relax(args) -> int:
    inst = load_instance(args)
    n = inst.n
    out: dict = {"instance": inst.name}
    try:
        result = _operator(inst, args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    except BudgetExceeded as exc:
        out.update(status=UNDECIDED, reason=str(exc))
        _emit(json.dumps(out, indent=2, sort_keys=True), args.out)
        return 0
    out["provenance"] = result.provenance
    out["aux_vars"] = result.polytope.aux
    out["rows"] = len(result.polytope.rows)
    try:
        if args.member:
            x = parse_vector(args.member)
            if len(x) != n:
                raise UsageError(f"--member needs {n} coordinates")
            out["member"] = result.contains(x)
        if args.objective:
            c = parse_vector(args.objective)
            if len(c) != n:
                raise UsageError(f"--objective needs {n} coefficients")
            for direction in ("min", "max"):
                res = optimize(result.polytope, c, direction)
                out[direction] = {"status": res.status,
                                  "value": format_rational(res.value) if res.value is not None else None,
                                  "point": stringify(list(res.point)) if res.point is not None else None}
        if args.equal_hull:
            H = inst.analytic_hull if inst.analytic_hull and inst.analytic_hull.facets else integer_hull(inst.polytope)
            if H.empty:
                out["equal_to_hull"] = result.polytope.kind == "empty" or result.polytope.is_empty()
            else:
                covered = all(result.contains(v) for v in H.vertices)
                out["equal_to_hull"] = covered and polytope_within(result.polytope, H.facets).equal
        if args.explicit:
            out["explicit"] = explicit(result.polytope).to_json()
        if args.emit_lifted:
            out["polytope"] = result.polytope.to_json()
    except BudgetExceeded as exc:
        out.update(status=UNDECIDED, reason=str(exc))
    out.setdefault("status", "ok")
    _emit(json.dumps(stringify(out), indent=2, sort_keys=True), args.out)
    return 0


def cmd_repro(args) -> int:
    try:
        jobs = checks.suite_jobs(args.suite, n=args.n, k=args.k, seed=args.seed, count=args.count)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    records = run_jobs(jobs, threads=thread_cap())
    params = {"suite": args.suite, "n": args.n, "k": args.k, "seed": args.seed, "count": args.count}
    report = ExperimentReport(f"repro-{args.suite}", {k: v for k, v in params.items() if v is not None}, records)
    sys.stdout.write(report.human() + "\n")
    if args.out:
        text = report.to_csv() if args.format == "csv" else report.dumps()
        Path(args.out).write_text(text if text.endswith("\n") else text + "\n")
    if report.status != PASS:
        for r in records:
            if r.status != PASS:
                sys.stderr.write(json.dumps(stringify(r.__dict__), sort_keys=True) + "\n")
        return 1
    return 0


# --------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "csv", "dot"), default="json")
    p.add_argument("--budget-fm-rows", type=int)
    p.add_argument("--budget-facets", type=int)
    p.add_argument("--budget-trees", type=int)
    p.add_argument("--budget-sa-level", type=int)
    p.add_argument("--budget-vertex-dim", type=int)
    p.add_argument("--budget-tree-size", type=int, default=4096)


def _instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", help="instance JSON written by 'generate'")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--graph", choices=GRAPHS, default="complete")
    p.add_argument("--S", help="no-good points, e.g. 000,011")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cutbranch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an instance as JSON")
    g.add_argument("family", choices=FAMILIES)
    g.add_argument("--graph", choices=GRAPHS, default="complete")
    g.add_argument("--S", help="no-good points, e.g. 000,011")
    _common(g)

    t = sub.add_parser("tree", help="build a branch-and-bound tree")
    t.add_argument("builder", choices=("skewed", "nogood", "greedy"))
    t.add_argument("--perm", help="1-based branching order for the skewed builder")
    _instance_args(t)
    _common(t)

    r = sub.add_parser("relax", help="apply a lift-and-project operator")
    r.add_argument("operator", choices=("sa", "l", "bk", "tk"))
    r.add_argument("--member", help="test membership of a point, e.g. 1/3,1/3,1/3")
    r.add_argument("--objective", help="report min and max of this objective")
    r.add_argument("--equal-hull", action="store_true", help="compare with the integer hull")
    r.add_argument("--explicit", action="store_true", help="project to an explicit H-representation")
    r.add_argument("--emit-lifted", action="store_true", help="include the lifted system")
    _instance_args(r)
    _common(r)

    p = sub.add_parser("repro", help="run a reproduction suite")
    p.add_argument("suite", choices=checks.SUITES + ("infra", "all"))
    p.add_argument("--count", type=int, help="random repetitions per suite")
    _common(p)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    handlers = {"generate": cmd_generate, "tree": cmd_tree, "relax": cmd_relax, "repro": cmd_repro}
    try:
        _apply_budgets(args)
        thread_cap()
        return handlers[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"cutbranch: {exc}\n")
        return 2
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"cutbranch: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
