"""Check records, experiment reports and the job runner."""

from __future__ import annotations

import csv
import importlib
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction

from .geometry import LIMITS, BudgetExceeded, Limits
from .numeric import format_rational

PASS, FAIL, UNDECIDED = "pass", "fail", "undecided"


def stringify(value):
    """Render values for reports: rationals as "p/q", containers recursively."""
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): stringify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [stringify(v) for v in value]
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return format_rational(Fraction(int(value.numerator), int(value.denominator)))
    return str(value)


@dataclass
class CheckRecord:
    check_id: str
    suite: str
    claim: str
    anchor: str
    status: str
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    witness: list | None = None
    seconds: float = 0.0
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        vals = " ".join(f"{k}={v}" for k, v in sorted(self.values.items()) if not isinstance(v, (list, dict)))
        tail = f" ({self.error})" if self.error else ""
        return f"{self.status.upper():9s} {self.check_id}  {vals}{tail}".rstrip()


@dataclass(frozen=True)
class Job:
    """A deferred check: ``func`` names a function in :mod:`cutbranch.checks`."""

    check_id: str
    suite: str
    claim: str
    anchor: str
    func: str
    params: tuple = ()

    def kwargs(self) -> dict:
        return dict(self.params)


def run_job(job: Job) -> CheckRecord:
    module = importlib.import_module("cutbranch.checks")
    fn = getattr(module, job.func)
    start = time.perf_counter()
    status, values, witness, error = FAIL, {}, None, None
    try:
        ok, values, witness = fn(**job.kwargs())
        status = PASS if ok else FAIL
    except BudgetExceeded as exc:
        status, error = UNDECIDED, f"budget: {exc}"
    except Exception as exc:  # a crash is a failed check, reported with its message
        status, error = FAIL, f"{type(exc).__name__}: {exc}"
    return CheckRecord(
        check_id=job.check_id,
        suite=job.suite,
        claim=job.claim,
        anchor=job.anchor,
        status=status,
        params=stringify(job.kwargs()),
        values=stringify(values or {}),
        witness=stringify(list(witness)) if witness is not None else None,
        seconds=round(time.perf_counter() - start, 3),
        error=error,
    )


def thread_cap() -> int:
    raw = os.environ.get("CUTBRANCH_THREADS", "").strip()
    cpus = os.cpu_count() or 1
    if not raw:
        return 1
    try:
        want = int(raw)
    except ValueError:
        raise ValueError(f"CUTBRANCH_THREADS must be a positive integer, got {raw!r}")
    if want < 1:
        raise ValueError("CUTBRANCH_THREADS must be at least 1")
    return min(want, cpus)


def _adopt_limits(limits: Limits) -> None:
    LIMITS.update(**limits.__dict__)


def run_jobs(jobs, threads: int | None = None) -> list[CheckRecord]:
    """Run jobs (in worker processes when ``threads > 1``), sorted by check id."""
    jobs = list(jobs)
    threads = thread_cap() if threads is None else threads
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads, initializer=_adopt_limits,
                                 initargs=(replace(LIMITS),)) as pool:
            records = list(pool.map(run_job, jobs))
    else:
        records = [run_job(j) for j in jobs]
    return sorted(records, key=lambda r: r.check_id)


@dataclass
class ExperimentReport:
    experiment: str
    instance: dict
    records: list

    @property
    def status(self) -> str:
        if any(r.status == FAIL for r in self.records):
            return FAIL
        if any(r.status == UNDECIDED for r in self.records):
            return UNDECIDED
        return PASS

    def to_json(self) -> dict:
        return {
            "experiment": self.experiment,
            "instance": self.instance,
            "status": self.status,
            "records": [asdict(r) for r in self.records],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["check_id", "suite", "anchor", "status", "claim", "params", "values", "witness", "seconds", "error"]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in self.records:
            row = asdict(r)
            for key in ("params", "values", "witness"):
                row[key] = json.dumps(row[key], sort_keys=True)
            w.writerow(row)
        return buf.getvalue()

    def human(self) -> str:
        lines = [f"experiment {self.experiment}: {self.status.upper()}"]
        lines += ["  " + r.line() for r in self.records]
        passed = sum(r.passed for r in self.records)
        lines.append(f"{passed}/{len(self.records)} checks passed")
        return "\n".join(lines)
