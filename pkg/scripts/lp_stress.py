"""Stress the exact LP solver on random systems and summarise pivot counts.

Every outcome is checked by its certificate; bounded cases are also compared
with the best vertex from basis enumeration.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time
from collections import Counter
from dataclasses import dataclass

from cutbranch.geometry import vertices_by_bases
from cutbranch.lp import LinearConstraint, LPProblem, lp_solve, verify_farkas, verify_optimal
from cutbranch.numeric import dot
from cutbranch.polytope import Polytope


@dataclass
class StressConfig:
    cases: int = 500
    seed: int = 0
    max_vars: int = 4  # the basis-enumeration oracle dominates beyond this
    max_rows: int = 8
    coeff: int = 5
    boxed_share: float = 0.5


def random_problem(rng: random.Random, cfg: StressConfig) -> tuple[LPProblem, bool]:
    n = rng.randint(1, cfg.max_vars)
    rows = [
        LinearConstraint.make([rng.randint(-cfg.coeff, cfg.coeff) for _ in range(n)],
                              rng.choice((">=", "<=", "=")), rng.randint(-cfg.coeff, cfg.coeff), n)
        for _ in range(rng.randint(1, cfg.max_rows))
    ]
    boxed = rng.random() < cfg.boxed_share
    if boxed:
        for j in range(n):
            rows.append(LinearConstraint.make({j: 1}, ">=", -2, n))
            rows.append(LinearConstraint.make({j: 1}, "<=", 2, n))
    obj = [rng.randint(-cfg.coeff, cfg.coeff) for _ in range(n)]
    return LPProblem(tuple(rows), tuple(obj), rng.choice(("min", "max"))), boxed


def run(cfg: StressConfig) -> int:
    rng = random.Random(cfg.seed)
    status, pivots, bad = Counter(), [], []
    start = time.perf_counter()
    for i in range(cfg.cases):
        prob, boxed = random_problem(rng, cfg)
        out = lp_solve(prob)
        status[out.status] += 1
        pivots.append(out.pivots)
        if out.optimal:
            ok = verify_optimal(prob, out)
        elif out.infeasible:
            ok = verify_farkas(prob.constraints, out.certificate)
        else:
            ok = not boxed and all(c.satisfied(out.point) for c in prob.constraints)
        if boxed and ok:
            verts = vertices_by_bases(Polytope(prob.nvars, prob.constraints, box=False))
            if verts:
                vals = [dot(prob.objective, v) for v in verts]
                ok = out.optimal and out.value == (max(vals) if prob.direction == "max" else min(vals))
            else:
                ok = out.infeasible
        if not ok:
            bad.append(i)
    wall = time.perf_counter() - start
    print(f"{cfg.cases} LPs in {wall:.2f}s  " + "  ".join(f"{k}={v}" for k, v in sorted(status.items())))
    print(f"pivots: mean {statistics.mean(pivots):.1f}  max {max(pivots)}")
    if bad:
        print(f"FAILED cases: {bad[:20]}")
        return 1
    return 0


def main(argv=None) -> int:
    d = StressConfig()
    ap = argparse.ArgumentParser(description="random exact LP stress test")
    for name, value in vars(d).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(value), default=value)
    args = ap.parse_args(argv)
    return run(StressConfig(**vars(args)))


if __name__ == "__main__":
    sys.exit(main())
