"""Reproduction checks, grouped into suites.

Every check is a plain function returning ``(ok, values, witness)`` so that
it can run in a worker process; :func:`suite_jobs` lists the jobs of a suite.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from fractions import Fraction

from .geometry import (
    binary_points, contains_polytope, dash_witness, equals_integer_hull, explicit,
    integer_hull, is_integral_polytope, polytope_within, same_polytope, vertices,
    vertices_by_bases,
)
from .hierarchies import (
    b_k_member, b_k_polytope, bcc_subset_hull, l_iterate, l_member, l_step, sa_member,
    t_k_member, t_k_polytope,
)
from .instances import (
    Graph, clique_fractional, degeneracy_ordering, greedy_stable_set, knapsack_sa_level,
    knapsack_sa_point, knapsack_uniform, nogood, r3_example, random_instance, remark64,
    stable_set_fractional, triangles_limit,
)
from .lp import LinearConstraint, LPProblem, eq, lp_solve, verify_farkas, verify_optimal
from .numeric import ONE, ZERO, Q, dot, is_binary
from .polytope import Polytope, is_member, optimize
from .report import Job
from .trees import (
    atom, complete_tree, enumerate_trees, greedy_integral_tree, nogood_tree, relaxation_size, separates,
    skewed_k_tree, skewed_leaf_count, tree_from_leaves, tree_relaxation,
)

SUITES = ("example1", "skewed", "knapsack", "clique", "nogood", "limits", "sandwich")


def _ones(n, v):
    return (Q(v),) * n


def _valid_for(points, coeffs, rhs) -> bool:
    """``coeffs·x <= rhs`` on every point."""
    return all(dot(coeffs, p) <= rhs for p in points)


def _size_ok(P, T) -> tuple[bool, dict]:
    acc = relaxation_size(P, T)
    return acc["ok"], {"aux_vars": acc["aux_vars"], "rows": acc["rows"],
                       "var_bound": acc["var_bound"], "row_bound": acc["row_bound"]}


# --------------------------------------------------------------------------
# stable set of a complete graph


def stable_greedy_tree(n: int):
    inst = stable_set_fractional(n)
    P = inst.polytope
    T = greedy_integral_tree(P)
    R = tree_relaxation(P, T)
    cmp = equals_integer_hull(R, inst.analytic_hull)
    enumerated = integer_hull(P)
    hull_ok = same_polytope(enumerated.facets, inst.analytic_hull.facets)
    size_ok, acc = _size_ok(P, T)
    ok = T.size <= 2 * n + 1 and cmp.equal and bool(hull_ok) and size_ok
    values = {"tree_size": T.size, "size_bound": 2 * n + 1, "leaves": T.leaf_count,
              "tree_equals_hull": cmp.equal, "analytic_hull_ok": hull_ok, **acc}
    return ok, values, cmp.witness


def stable_sa_point(n: int, k: int):
    P = stable_set_fractional(n).polytope
    x = _ones(n, Fraction(1, k + 2))
    inside = sa_member(P, k, x)
    return inside, {"point_coord": x[0], "t": k, "member": inside}, x


# --------------------------------------------------------------------------
# skewed trees


def skewed_properties(n: int, k: int, perms: int, seed: int):
    rng = random.Random(f"skewed-{seed}-{n}-{k}")
    expected = skewed_leaf_count(n, k)
    all_sets = {frozenset(c) for i in range(k + 1) for c in itertools.combinations(range(n), i)}
    failures = []
    for _ in range(perms):
        perm = list(range(n))
        rng.shuffle(perm)
        T = skewed_k_tree(n, k, perm)
        leaves = T.leaves()
        census = Counter(lab.J1 for lab in leaves)
        prop1 = set(census) == all_sets and all(c == 1 for c in census.values())
        prop2 = all(len(lab.J1) == k or len(lab.J0 | lab.J1) == n for lab in leaves)
        shape = T.leaf_count == expected and T.size == 2 * T.leaf_count - 1 and T.is_canonical()
        if not (prop1 and prop2 and shape):
            failures.append({"perm": [p + 1 for p in perm], "prop1": prop1, "prop2": prop2,
                             "leaves": T.leaf_count})
    values = {"expected_leaves": expected, "permutations": perms, "failures": failures}
    return not failures, values, None


# --------------------------------------------------------------------------
# uniform knapsack


def knapsack_tree(n: int, q: int):
    inst = knapsack_uniform(n, q)
    P = inst.polytope
    T = skewed_k_tree(n, 2)
    R = tree_relaxation(P, T)
    cmp = equals_integer_hull(R, inst.analytic_hull)
    hull_ok = same_polytope(integer_hull(P).facets, inst.analytic_hull.facets)
    atoms_ok = True
    for lab in T.leaves():
        A = atom(P, lab)
        if not (A.is_empty() or is_integral_polytope(A)):
            atoms_ok = False
    size_ok, acc = _size_ok(P, T)
    ok = cmp.equal and bool(hull_ok) and atoms_ok and size_ok
    return ok, {"tree_equals_hull": cmp.equal, "atoms_empty_or_integral": atoms_ok,
                "leaves": T.leaf_count, **acc}, cmp.witness


def knapsack_sa(n: int, q: int):
    inst = knapsack_uniform(n, q)
    P = inst.polytope
    t = knapsack_sa_level(n, q)
    x = knapsack_sa_point(n, q, t)
    inside = sa_member(P, t, x)
    total = sum(x)
    hull_pts = binary_points(P)
    valid = _valid_for(hull_pts, (ONE,) * n, ONE)
    outside_hull = not is_member(inst.analytic_hull.facets, x)
    ok = inside and total > 1 and valid and outside_hull
    return ok, {"t": t, "point_coord": x[0], "sum": total, "member": inside,
                "sum_le_1_valid": valid, "outside_hull": outside_hull}, x


# --------------------------------------------------------------------------
# fractional clique polytope


def clique_matching_tree(n: int):
    G = Graph.perfect_matching(n)
    inst = clique_fractional(G)
    P = inst.polytope
    H = integer_hull(P)
    T = skewed_k_tree(n, inst.metadata["k"])
    R = tree_relaxation(P, T)
    cmp = equals_integer_hull(R, H)
    size_ok, acc = _size_ok(P, T)
    ok = inst.metadata["k"] == 2 and inst.metadata["d"] == 1 and cmp.equal and size_ok
    return ok, {"k": inst.metadata["k"], "d": inst.metadata["d"], "hull_facets": len(H.facets.constraints),
                "tree_equals_hull": cmp.equal, "leaves": T.leaf_count, **acc}, cmp.witness


def clique_matching_sa(n: int):
    G = Graph.perfect_matching(n)
    P = clique_fractional(G).polytope
    x = _ones(n, Fraction(1, 3))
    inside = sa_member(P, 1, x)
    S = greedy_stable_set(G)[:4]
    stable = len(S) == 4 and not any(G.adjacent(u, v) for u, v in itertools.combinations(S, 2))
    coeffs = tuple(ONE if i in S else ZERO for i in range(n))
    valid = _valid_for(binary_points(P), coeffs, ONE)
    violated = dot(coeffs, x) > 1
    ok = inside and stable and valid and violated
    return ok, {"member": inside, "stable_set": [s + 1 for s in S], "cut_valid": valid,
                "cut_lhs": dot(coeffs, x)}, x


def degeneracy_families():
    rows = []
    ok = True
    cases = [("path", Graph.path(m), 1) for m in range(2, 8)]
    cases += [("cycle", Graph.cycle(m), 2) for m in range(3, 8)]
    cases += [("complete", Graph.complete(m), m - 1) for m in range(2, 7)]
    cases += [("two-triangles", Graph.disjoint_triangles(2), 2)]
    for name, G, want in cases:
        d, order = degeneracy_ordering(G)
        pos = {v: i for i, v in enumerate(order)}
        right_ok = all(sum(1 for u in G.neighbours(v) if pos[u] > pos[v]) <= d for v in range(G.n))
        S = greedy_stable_set(G)
        stable = not any(G.adjacent(u, v) for u, v in itertools.combinations(S, 2))
        big = len(S) * (d + 1) >= G.n
        good = d == want and right_ok and stable and big
        ok &= good
        rows.append({"graph": f"{name}{G.n}", "d": d, "expected": want, "stable": len(S), "ok": good})
    tri = clique_fractional(Graph.disjoint_triangles(2)).metadata
    ok &= tri["k"] == 3 and tri["d"] == 2
    return ok, {"cases": rows, "two_triangles_k": tri["k"]}, None


# --------------------------------------------------------------------------
# no-good constraints


def nogood_sets(n: int, seed: int) -> list[list[tuple]]:
    rng = random.Random(f"nogood-{seed}-{n}")
    cube = list(itertools.product((0, 1), repeat=n))
    out = [[(0,) * n]]
    for size in (1, 2, 3):
        out.append(sorted(rng.sample(cube, size)))
    return out


def nogood_tree_check(n: int, S: tuple):
    S = [tuple(s) for s in S]
    inst = nogood(n, S)
    P = inst.polytope
    T = nogood_tree(n, S)
    R = tree_relaxation(P, T)
    cmp = equals_integer_hull(R, inst.analytic_hull)
    leaves = {tuple(sorted(lab.C)) for lab in T.leaves()}
    isolated = all(tuple((j, s[j]) for j in range(n)) in leaves for s in S)
    ancestors = all(
        any(all(s[j] == a for j, a in lab.C) for s in S)
        for node, lab in T.walk() if not node.is_leaf
    )
    points_ok = sorted(inst.analytic_hull.vertices) == sorted(
        tuple(Q(v) for v in p) for p in itertools.product((0, 1), repeat=n) if p not in set(S))
    size_ok, acc = _size_ok(P, T)
    ok = T.size <= 3 * n * len(S) and cmp.equal and isolated and ancestors and points_ok and size_ok
    return ok, {"tree_size": T.size, "size_bound": 3 * n * len(S), "tree_equals_hull": cmp.equal,
                "isolated": isolated, "integer_points_ok": points_ok, **acc}, cmp.witness


def nogood_sa(n: int):
    P = nogood(n, [(0,) * n]).polytope
    t = n - 1
    x = _ones(n, Fraction(1, 2 * n - t))
    inside = sa_member(P, t, x)
    outside = sum(x) < 1
    return inside and outside, {"t": t, "point_coord": x[0], "member": inside}, x


def nogood_l_iterate(n: int):
    P = nogood(n, [(0,) * n]).polytope
    k = n - 1
    lifted = l_iterate(P, k).polytope
    ex = explicit(lifted)
    out = optimize(ex, (ONE,) * n, "min")
    lifted_out = optimize(lifted, (ONE,) * n, "min")
    member = l_member(P, k, out.point)
    ok = out.optimal and out.value < 1 and lifted_out.value == out.value and member
    return ok, {"k": k, "min_sum_explicit": out.value, "min_sum_lifted": lifted_out.value,
                "member": member}, out.point


# --------------------------------------------------------------------------
# triangle gadget


def limits_q_face(n: int):
    inst = triangles_limit(n)
    P = inst.polytope
    face = P.restrict(n - 1, 1)
    pushed = l_step(face).polytope.is_empty()
    L = l_step(P).polytope
    direct = L.with_constraints([eq({n - 1: 1}, 1, L.dim)]).is_empty()
    no_points = not binary_points(face)
    ok = pushed and direct and no_points
    return ok, {"L_face_empty": pushed, "L_then_fix_empty": direct, "face_has_no_01_points": no_points}, None


def limits_zero_face(n: int):
    inst = triangles_limit(n)
    P = inst.polytope
    H = inst.analytic_hull
    face = P.with_constraints([eq({n - 1: 1}, 0, P.dim)])
    cmp = equals_integer_hull(face, H)
    enumerated = sorted(binary_points(P)) == sorted(H.vertices)
    return cmp.equal and enumerated, {"zero_face_equals_hull": cmp.equal,
                                      "hull_points_ok": enumerated}, cmp.witness


def limits_l2(n: int):
    inst = triangles_limit(n)
    P = inst.polytope
    H = inst.analytic_hull
    L2 = l_iterate(P, 2).polytope
    inside = polytope_within(L2, H.facets)
    covered = all(l_member(P, 2, v) for v in H.vertices)
    # two hull vertices through the full lifted system, without the face shortcut
    direct = all(is_member(L2, v) for v in H.vertices[:2])
    ok = inside.equal and covered and direct
    return ok, {"L2_within_hull": inside.equal, "hull_within_L2": covered,
                "direct_spot_check": direct}, inside.witness


def limits_trees(n: int):
    inst = triangles_limit(n)
    P = inst.polytope
    max_leaves = 2 ** ((n - 1) // 6)
    trees = list(enumerate_trees(n, max_leaves=max_leaves))
    a = (ZERO,) * (n - 1) + (ONE,)
    R = []
    tops = []
    for T in trees:
        out = optimize(tree_relaxation(P, T), a, "max")
        tops.append(out.value)
        R.append(out.point)
    reach = all(v == 1 for v in tops)
    S = [(ZERO,) * n] + [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n - 1)]
    xbar = dash_witness(S, R, a, 0)
    in_P = is_member(P, xbar)
    outside = not is_member(inst.analytic_hull.facets, xbar)
    unseparated = [not separates(P, T, xbar) for T in trees]
    sizes = sorted({T.size for T in trees})
    ok = reach and xbar[-1] > 0 and in_P and outside and all(unseparated)
    return ok, {"trees": len(trees), "max_leaves": max_leaves, "tree_sizes": sizes,
                "all_reach_x_n_1": reach, "xbar_last": xbar[-1], "xbar_in_P": in_P,
                "unseparated": sum(unseparated)}, xbar


# --------------------------------------------------------------------------
# sandwich between operators


R3_TREE = ({0: 0, 2: 0}, {0: 0, 2: 1}, {0: 1, 1: 0}, {0: 1, 1: 1})


def r3_tree():
    inst = r3_example()
    P = inst.polytope
    T = tree_from_leaves(3, R3_TREE)
    cmp = equals_integer_hull(tree_relaxation(P, T), inst.analytic_hull)
    hull_ok = same_polytope(integer_hull(P).facets, inst.analytic_hull.facets)
    t2_covers = all(t_k_member(P, 2, v) for v in inst.analytic_hull.vertices)
    on_hull = all(v in vertices(P) for v in [tuple(Q(c) for c in p) for p in inst.metadata["points"]])
    ok = cmp.equal and bool(hull_ok) and t2_covers and T.height == 2 and on_hull
    return ok, {"tree_equals_hull": cmp.equal, "hull_ok": hull_ok, "hull_in_T2": t2_covers,
                "points_are_vertices": on_hull}, cmp.witness


def r3_b2_witness():
    inst = r3_example()
    P = inst.polytope
    a = (ZERO, -ONE, ONE)
    R = [(ZERO, ZERO, Fraction(1, 2)), (Fraction(1, 2), ZERO, ONE), (ONE, Fraction(1, 2), ONE)]
    owners = [(0, 1), (1, 2), (0, 2)]
    r_ok = all(is_member(bcc_subset_hull(P, s), r) for r, s in zip(R, owners))
    S = [(ZERO, ZERO, ZERO), (ONE, ZERO, ZERO), (ZERO, ONE, ONE)]
    xbar = dash_witness(S, R, a, 0)
    in_b2 = b_k_member(P, 2, xbar)
    top = optimize(b_k_polytope(P, 2).polytope, a, "max")
    not_t2 = not t_k_member(P, 2, xbar)
    ok = r_ok and in_b2 and xbar[2] > xbar[1] and top.value > 0 and not_t2
    return ok, {"generators_in_subset_hulls": r_ok, "in_B2": in_b2, "max_x3_minus_x2": top.value,
                "outside_T2": not_t2}, xbar


def level_one(n: int, seed: int):
    P = random_instance(n, seed).polytope
    L, T, B = l_step(P).polytope, t_k_polytope(P, 1).polytope, b_k_polytope(P, 1).polytope
    Lx, Tx, Bx = explicit(L), explicit(T), explicit(B)
    eq_lt, eq_tb = same_polytope(Lx, Tx), same_polytope(Tx, Bx)
    cross = all(is_member(T, v) and is_member(B, v) for v in vertices(Lx)) and \
        all(is_member(L, v) for v in vertices(Bx))
    ok = bool(eq_lt) and bool(eq_tb) and cross
    return ok, {"L_eq_T": eq_lt, "T_eq_B": eq_tb, "vertex_cross_check": cross,
                "vertices": len(vertices(Lx))}, None


def level_k_chain(n: int, k: int, seed: int):
    P = random_instance(n, seed).polytope
    L = l_iterate(P, k).polytope
    T = t_k_polytope(P, k).polytope
    B = b_k_polytope(P, k).polytope
    Lx, Tx, Bx = explicit(L), explicit(T), explicit(B)
    lt = polytope_within(Lx, Tx).equal
    tb = polytope_within(Tx, Bx).equal
    lt_v = all(t_k_member(P, k, v) for v in vertices(Lx))
    tb_v = all(b_k_member(P, k, v) for v in vertices(Tx))
    H = integer_hull(P)
    floor_ok = all(is_member(L, v) for v in H.vertices)
    top_ok = contains_polytope(P, Bx)
    ok = lt and tb and lt_v and tb_v and floor_ok and bool(top_ok)
    return ok, {"L_in_T_lp": lt, "T_in_B_lp": tb, "L_in_T_vertices": lt_v, "T_in_B_vertices": tb_v,
                "hull_in_L": floor_ok, "B_in_P": top_ok}, None


def remark64_check(n: int, k: int):
    inst = remark64(n, k)
    P = inst.polytope
    Tk = t_k_polytope(P, k).polytope
    tk_empty = Tk.is_empty()
    single = tree_relaxation(P, complete_tree(n, [k]))
    one_branch_empty = single.kind == "empty" or single.is_empty()
    S = tree_relaxation(P, skewed_k_tree(n, k))
    skewed_is_P = bool(same_polytope(explicit(S), P))
    ok = tk_empty and one_branch_empty and skewed_is_P
    return ok, {"Tk_empty": tk_empty, "branch_on_half_empty": one_branch_empty,
                "skewed_equals_P": skewed_is_P}, None


def nesting(n: int, k: int, seed: int):
    P = random_instance(n, seed).polytope
    Lk = l_iterate(P, k).polytope
    Lkx = explicit(Lk)
    failures = []
    for j in range(n):
        for a in (0, 1):
            fixed_lifted = Lk.with_constraints([eq({j: 1}, a, Lk.dim)])
            fixed = Lkx.with_constraints([eq({j: 1}, a, n)])
            inner_lifted = l_iterate(P.restrict(j, a), k).polytope
            inner = explicit(inner_lifted)
            ok = bool(same_polytope(fixed, inner)) and bool(contains_polytope(fixed_lifted, inner)) \
                and bool(contains_polytope(inner_lifted, explicit(fixed)))
            if not ok:
                failures.append({"j": j + 1, "a": a})
    return not failures, {"k": k, "failures": failures}, None


# --------------------------------------------------------------------------
# infrastructure


def _random_lp(rng: random.Random):
    n = rng.randint(1, 4)
    m = rng.randint(1, 6)
    boxed = rng.random() < 0.5
    rows = []
    for _ in range(m):
        coeffs = [rng.randint(-3, 3) for _ in range(n)]
        sense = rng.choice((">=", ">=", "<=", "<=", "="))
        rows.append(LinearConstraint.make(coeffs, sense, rng.randint(-4, 4), n))
    if boxed:
        for j in range(n):
            rows.append(LinearConstraint.make({j: 1}, ">=", rng.randint(-2, 0), n))
            rows.append(LinearConstraint.make({j: 1}, "<=", rng.randint(0, 2), n))
    obj = tuple(Q(rng.randint(-3, 3)) for _ in range(n))
    return LPProblem(tuple(rows), obj, rng.choice(("min", "max")), n), boxed


def _ray_ok(problem: LPProblem, out) -> bool:
    if out.point is None or out.ray is None:
        return False
    if not all(c.satisfied(out.point) for c in problem.constraints):
        return False
    for c in problem.constraints:
        lhs = sum((v * out.ray[j] for j, v in c.terms), ZERO)
        if (c.sense == ">=" and lhs < 0) or (c.sense == "<=" and lhs > 0) or (c.sense == "=" and lhs):
            return False
    gain = dot(problem.objective, out.ray)
    return gain > 0 if problem.direction == "max" else gain < 0


def lp_batch(start: int, count: int, seed: int):
    counts = Counter()
    cross = 0
    bad = []
    for i in range(start, start + count):
        rng = random.Random(f"lp-{seed}-{i}")
        problem, boxed = _random_lp(rng)
        out = lp_solve(problem)
        counts[out.status] += 1
        if out.optimal:
            good = verify_optimal(problem, out)
        elif out.infeasible:
            good = verify_farkas(problem.constraints, out.certificate)
        else:
            good = _ray_ok(problem, out) and not boxed
        if boxed:
            verts = vertices_by_bases(Polytope(problem.nvars, problem.constraints, box=False))
            cross += 1
            if not verts:
                good &= out.infeasible
            else:
                vals = [dot(problem.objective, v) for v in verts]
                best = max(vals) if problem.direction == "max" else min(vals)
                good &= out.optimal and out.value == best
        if not good:
            bad.append(i)
    return not bad, {"cases": count, "optimal": counts["optimal"], "infeasible": counts["infeasible"],
                     "unbounded": counts["unbounded"], "vertex_cross_checked": cross, "bad_cases": bad}, None


def size_accounting():
    """Extended-formulation size bounds over every tree builder in the lab."""
    cases = []
    for n in range(2, 7):
        P = stable_set_fractional(n).polytope
        cases.append((f"greedy-stable{n}", P, greedy_integral_tree(P)))
    for n in (4, 5, 6):
        P = knapsack_uniform(n, 3).polytope
        for k in (1, 2, 3):
            cases.append((f"skewed{k}-knapsack{n}", P, skewed_k_tree(n, k)))
    for n in (3, 4):
        for S in nogood_sets(n, 0):
            cases.append((f"nogood{n}-{len(S)}", nogood(n, S).polytope, nogood_tree(n, S)))
    P = r3_example().polytope
    for i, T in enumerate(enumerate_trees(3, max_height=2)):
        cases.append((f"r3-tree{i}", P, T))
    P = triangles_limit(7).polytope
    for i, T in enumerate(enumerate_trees(7, max_leaves=2)):
        cases.append((f"triangles-tree{i}", P, T))
    bad = [name for name, P, T in cases if not relaxation_size(P, T)["ok"]]
    return not bad, {"relaxations": len(cases), "violations": bad}, None


# --------------------------------------------------------------------------
# suites


def _job(check_id, suite, claim, anchor, func, **params) -> Job:
    return Job(check_id, suite, claim, anchor, func, tuple(sorted(params.items())))


def suite_jobs(suite: str, n: int | None = None, k: int | None = None, seed: int = 0,
               count: int | None = None) -> list[Job]:
    if suite == "all":
        jobs = []
        for s in SUITES + ("infra",):
            jobs += suite_jobs(s, seed=seed)
        return jobs
    jobs: list[Job] = []
    if suite == "example1":
        for m in ([n] if n else [3, 4, 5, 6]):
            jobs.append(_job(f"example1/n{m}/greedy-tree", suite, "greedy integral tree has size <= 2n+1 and its relaxation is the integer hull",
                             "stable-set/greedy-tree", "stable_greedy_tree", n=m))
            for t in range(1, m - 1):
                jobs.append(_job(f"example1/n{m}/sa{t}", suite, "(1/(t+2))*1 lies in the level-t Sherali-Adams shadow",
                                 "stable-set/sa-point", "stable_sa_point", n=m, k=t))
    elif suite == "skewed":
        for m in ([n] if n else range(3, 9)):
            for kk in ([k] if k else [1, 2, 3]):
                if kk <= m:
                    jobs.append(_job(f"skewed/n{m}/k{kk}", suite, "leaf count formula and the two leaf properties hold for random orders",
                                     "skewed-tree/properties", "skewed_properties", n=m, k=kk, perms=count or 5, seed=seed))
    elif suite == "knapsack":
        for m in ([n] if n else [4, 5, 6]):
            jobs.append(_job(f"knapsack/n{m}/tree", suite, "skewed 2-tree relaxation equals the integer hull",
                             "knapsack/tree-hull", "knapsack_tree", n=m, q=3))
            jobs.append(_job(f"knapsack/n{m}/sa", suite, "the uniform point is in SA^t but violates sum(x) <= 1",
                             "knapsack/sa-gap", "knapsack_sa", n=m, q=3))
    elif suite == "clique":
        m = n or 8
        jobs.append(_job(f"clique/matching{m}/tree", suite, "skewed k-tree relaxation equals the integer hull",
                         "clique/tree-hull", "clique_matching_tree", n=m))
        jobs.append(_job(f"clique/matching{m}/sa1", suite, "(1/3)*1 is in SA^1 yet violates a stable-set cut",
                         "clique/sa-gap", "clique_matching_sa", n=m))
        jobs.append(_job("clique/degeneracy", suite, "degeneracy of paths, cycles and complete graphs",
                         "clique/degeneracy", "degeneracy_families"))
    elif suite == "nogood":
        for m in ([n] if n else [3, 4]):
            for S in nogood_sets(m, seed):
                tag = "".join("".join(map(str, s)) + "_" for s in S).rstrip("_")
                jobs.append(_job(f"nogood/n{m}/tree-{tag}", suite, "no-good tree has size <= 3n|S| and yields the integer hull",
                                 "nogood/tree", "nogood_tree_check", n=m, S=tuple(S)))
            jobs.append(_job(f"nogood/n{m}/sa", suite, "(1/(2n-t))*1 is in SA^t for t = n-1",
                             "nogood/sa-point", "nogood_sa", n=m))
            if m == 3:
                jobs.append(_job(f"nogood/n{m}/L{m - 1}", suite, "L^(n-1) contains a point with sum(x) < 1",
                                 "nogood/l-gap", "nogood_l_iterate", n=m))
    elif suite == "limits":
        m = n or 7
        jobs += [
            _job(f"limits/n{m}/a-q-face", suite, "one L-step empties the face x_n = 1", "limits/q-face", "limits_q_face", n=m),
            _job(f"limits/n{m}/b-zero-face", suite, "the face x_n = 0 is the integer hull", "limits/zero-face", "limits_zero_face", n=m),
            _job(f"limits/n{m}/l2", suite, "two L-steps reach the integer hull", "limits/l2-equals-hull", "limits_l2", n=m),
            _job(f"limits/n{m}/c-trees", suite, "no small tree separates the intersection witness", "limits/small-trees", "limits_trees", n=m),
        ]
    elif suite == "sandwich":
        m = n or 3
        kk = k or 2
        jobs.append(_job("sandwich/r3/tree", suite, "the four-leaf tree gives the integer hull", "r3/tree-hull", "r3_tree"))
        jobs.append(_job("sandwich/r3/b2", suite, "B^2 holds a point with x3 > x2", "r3/b2-gap", "r3_b2_witness"))
        for s in range(count or 20):
            jobs.append(_job(f"sandwich/random{s:02d}/level1", suite, "L = T^1 = B^1", "sandwich/level-one", "level_one", n=m, seed=seed * 1000 + s))
            jobs.append(_job(f"sandwich/random{s:02d}/level{kk}", suite, "L^k within T^k within B^k", "sandwich/chain", "level_k_chain", n=m, k=kk, seed=seed * 1000 + s))
            for kn in (1, 2):
                jobs.append(_job(f"sandwich/random{s:02d}/nesting{kn}", suite, "L^k commutes with fixing a variable", "nesting", "nesting", n=m, k=kn, seed=seed * 1000 + s))
        for nn, kr in ((3, 1), (4, 2)):
            jobs.append(_job(f"sandwich/point-n{nn}-k{kr}", suite, "T^k is empty while the skewed tree keeps P", "point/incomparable", "remark64_check", n=nn, k=kr))
    elif suite == "infra":
        total = count or 1000
        step = 100
        for start in range(0, total, step):
            jobs.append(_job(f"infra/lp{start:04d}", suite, "randomised LP classification with certificates",
                             "infra/lp", "lp_batch", start=start, count=min(step, total - start), seed=seed))
        jobs.append(_job("infra/size-accounting", suite, "tree relaxation size bounds", "infra/size", "size_accounting"))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return jobs
