"""Acceptance criteria 1-10, run through the same job machinery as ``cutbranch repro``.

Every criterion is exact: rational equality, no tolerances.  Where a record
reports a number, the expected value is recomputed here from its closed form
rather than read back from the library.  One PASS/FAIL line per criterion is
printed and also shown in the pytest terminal summary.

Run directly with ``python -m tests.test_acceptance`` for the lines alone.
"""

from __future__ import annotations

import math
from fractions import Fraction

import pytest

from cutbranch.checks import suite_jobs
from cutbranch.numeric import format_rational
from cutbranch.report import PASS, run_jobs

SUMMARY: list[str] = []


def _jobs(suite, keep=None, **kw):
    jobs = suite_jobs(suite, **kw)
    return [j for j in jobs if keep is None or keep(j.check_id)]


def _verdict(tag: str, records, extra_ok: bool = True, note: str = "") -> bool:
    bad = [r for r in records if r.status != PASS]
    ok = bool(records) and not bad and extra_ok
    line = f"{'PASS' if ok else 'FAIL'} {tag}: {len(records) - len(bad)}/{len(records)} checks"
    if note:
        line += f"; {note}"
    for r in bad:
        line += f"\n    {r.line()}"
    print(line)
    SUMMARY.append(line)
    return ok


def _by_id(records):
    return {r.check_id: r for r in records}


def test_ac01_stable_set_example():
    recs = run_jobs(_jobs("example1"))
    got = _by_id(recs)
    extra = True
    for n in (3, 4, 5, 6):
        tree = got[f"example1/n{n}/greedy-tree"].values
        extra &= tree["tree_size"] <= 2 * n + 1 and tree["tree_equals_hull"] is True
        for k in range(1, n - 1):
            sa = got[f"example1/n{n}/sa{k}"]
            extra &= sa.witness == [format_rational(Fraction(1, k + 2))] * n
    assert _verdict("AC1 stable set of K_n, n=3..6", recs, extra)


def test_ac02_skewed_trees():
    recs = run_jobs(_jobs("skewed"))
    extra = len(recs) == 18
    for r in recs:
        n, k = r.params["n"], r.params["k"]
        extra &= r.values["expected_leaves"] == sum(math.comb(n, i) for i in range(k + 1))
        extra &= r.values["permutations"] == 5 and r.values["failures"] == []
    assert _verdict("AC2 skewed k-tree leaf count and leaf properties", recs, extra)


def test_ac03_knapsack():
    recs = run_jobs(_jobs("knapsack"))
    got = _by_id(recs)
    q = 3
    extra = True
    for n in (4, 5, 6):
        t = math.floor(Fraction(n * (q - 2), q - 1))
        coord = Fraction(2 * (q - 1), q) / (n + Fraction((t - 1) * (q - 1), q))
        sa = got[f"knapsack/n{n}/sa"]
        extra &= sa.values["t"] == t and sa.witness == [format_rational(coord)] * n
        extra &= n * coord > 1 and sa.values["member"] is True
        extra &= got[f"knapsack/n{n}/tree"].values["tree_equals_hull"] is True
    assert _verdict("AC3 knapsack q=3, n=4..6", recs, extra)


def test_ac04_clique_matching():
    recs = run_jobs(_jobs("clique"))
    got = _by_id(recs)
    sa = got["clique/matching8/sa1"]
    tree = got["clique/matching8/tree"]
    extra = (
        tree.values["k"] == 2 and tree.values["d"] == 1 and tree.values["tree_equals_hull"] is True
        and sa.witness == ["1/3"] * 8
        and len(sa.values["stable_set"]) == 4
        and Fraction(sa.values["cut_lhs"]) == Fraction(4, 3)
    )
    for case in got["clique/degeneracy"].values["cases"]:
        name = case["graph"]
        size = int("".join(ch for ch in name if ch.isdigit()))
        if name.startswith("path"):
            want = 1
        elif name.startswith(("cycle", "two-triangles")):
            want = 2
        else:
            want = size - 1
        extra &= case["d"] == want
    assert _verdict("AC4 clique on the 8-vertex matching graph", recs, extra)


def test_ac05_nogood():
    recs = run_jobs(_jobs("nogood"))
    got = _by_id(recs)
    extra = any(cid.endswith("tree-000") for cid in got) and any(cid.endswith("tree-0000") for cid in got)
    for r in recs:
        if "/tree-" in r.check_id:
            n, S = r.params["n"], r.params["S"]
            extra &= 1 <= len(S) <= 3 and r.values["tree_size"] <= 3 * n * len(S)
            extra &= r.values["tree_equals_hull"] is True
    for n in (3, 4):
        t = n - 1
        extra &= got[f"nogood/n{n}/sa"].witness == [format_rational(Fraction(1, 2 * n - t))] * n
    l2 = got["nogood/n3/L2"].values
    extra &= Fraction(l2["min_sum_explicit"]) < 1 and l2["min_sum_explicit"] == l2["min_sum_lifted"]
    assert _verdict("AC5 no-good trees, SA point and L^2 gap", recs, extra)


def test_ac06_limits():
    recs = run_jobs(_jobs("limits"))
    got = _by_id(recs)
    c = got["limits/n7/c-trees"]
    # canonical trees with at most 2 leaves on 7 variables: the leaf, plus one per root variable
    extra = (
        c.values["trees"] == 1 + 7 and c.values["unseparated"] == 8
        and Fraction(c.witness[-1]) > 0 and c.values["xbar_in_P"] is True
        and got["limits/n7/l2"].values["L2_within_hull"] is True
        and got["limits/n7/l2"].values["hull_within_L2"] is True
    )
    assert _verdict("AC6 triangle instance n=7", recs, extra)


def test_ac07_sandwich():
    recs = run_jobs(_jobs("sandwich", keep=lambda c: "/r3/" in c or c.endswith(("level1", "level2"))))
    got = _by_id(recs)
    b2 = got["sandwich/r3/b2"]
    x = [Fraction(v) for v in b2.witness]
    extra = x[2] > x[1] and sum(c.endswith("level1") for c in got) == 20 and sum(c.endswith("level2") for c in got) == 20
    assert _verdict("AC7 r3 example and L^k within T^k within B^k", recs, extra)


def test_ac08_nesting():
    recs = run_jobs(_jobs("sandwich", keep=lambda c: "/nesting" in c))
    extra = len(recs) == 40 and all(r.values["failures"] == [] for r in recs)
    assert _verdict("AC8 fixing a variable commutes with L^k", recs, extra)


def test_ac09_point_instance():
    recs = run_jobs(_jobs("sandwich", keep=lambda c: "/point-" in c))
    extra = {(r.params["n"], r.params["k"]) for r in recs} == {(3, 1), (4, 2)}
    extra &= all(r.values["Tk_empty"] is True and r.values["skewed_equals_P"] is True for r in recs)
    assert _verdict("AC9 T^k empty while the skewed tree keeps P", recs, extra)


def test_ac10_infrastructure():
    recs = run_jobs(_jobs("infra"))
    lps = [r for r in recs if "/lp" in r.check_id]
    cases = sum(r.values["cases"] for r in lps)
    kinds = {key: sum(r.values[key] for r in lps) for key in ("optimal", "infeasible", "unbounded")}
    extra = cases == 1000 and sum(kinds.values()) == 1000 and all(v > 0 for v in kinds.values())
    note = ", ".join(f"{k}={v}" for k, v in kinds.items())
    assert _verdict("AC10 LP suite and size accounting", recs, extra, note)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
