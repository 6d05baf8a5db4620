"""Run reproduction suites and write one JSON report per suite.

    python scripts/run_repro.py --suites limits sandwich --out results/
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from cutbranch.checks import SUITES, suite_jobs
from cutbranch.report import PASS, ExperimentReport, run_jobs, thread_cap


@dataclass
class ReproConfig:
    suites: list[str] = field(default_factory=lambda: list(SUITES) + ["infra"])
    seed: int = 0
    threads: int = 0  # 0 means "use CUTBRANCH_THREADS"
    out: Path = Path("results")


def run(cfg: ReproConfig) -> int:
    cfg.out.mkdir(parents=True, exist_ok=True)
    threads = cfg.threads or thread_cap()
    worst = 0
    for suite in cfg.suites:
        records = run_jobs(suite_jobs(suite, seed=cfg.seed), threads=threads)
        report = ExperimentReport(f"repro-{suite}", {"suite": suite, "seed": cfg.seed}, records)
        (cfg.out / f"{suite}.json").write_text(report.dumps() + "\n")
        secs = sum(r.seconds for r in records)
        print(f"{suite:10s} {report.status:9s} {sum(r.passed for r in records)}/{len(records)}  {secs:.1f}s")
        if report.status != PASS:
            worst = 1
    return worst


def main(argv=None) -> int:
    cfg = ReproConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suites", nargs="+", default=cfg.suites, choices=list(SUITES) + ["infra"])
    ap.add_argument("--seed", type=int, default=cfg.seed)
    ap.add_argument("--threads", type=int, default=cfg.threads)
    ap.add_argument("--out", type=Path, default=cfg.out)
    args = ap.parse_args(argv)
    return run(ReproConfig(args.suites, args.seed, args.threads, args.out))


if __name__ == "__main__":
    sys.exit(main())
