"""Vertex enumeration, hull synthesis, projection and hull comparisons."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .lp import LinearConstraint, LPProblem, feasibility, lp_solve
from .numeric import (
    ONE,
    ZERO,
    Q,
    affine_hull_equations,
    affine_rank,
    dot,
    is_binary,
    nullspace,
    primitive,
    rank,
    solve_linear_system,
    sub,
)
from .polytope import EMPTY, FLAT, MEET, UNION, Polytope, feasible_point, is_member, optimize


class BudgetExceeded(RuntimeError):
    """An enumeration or elimination would exceed its configured budget."""


@dataclass
class Limits:
    vertex_dim: int = 16
    facet_candidates: int = 200_000
    fm_rows: int = 4_000
    integer_hull_dim: int = 16
    trees: int = 100_000
    sa_level: int = 6

    def update(self, **changes) -> None:
        for key, value in changes.items():
            if value is None:
                continue
            if not hasattr(self, key):
                raise KeyError(f"unknown budget {key!r}")
            if int(value) < 1:
                raise ValueError(f"budget {key} must be positive")
            setattr(self, key, int(value))


LIMITS = Limits()


# --------------------------------------------------------------------------
# vertices


def _ge_rows(rows: Sequence[LinearConstraint]) -> list[tuple[tuple, Fraction]]:
    out = []
    for c in rows:
        dense = c.coeffs
        if c.sense in (">=", "="):
            out.append((dense, c.rhs))
        if c.sense in ("<=", "="):
            out.append((tuple(-v for v in dense), -c.rhs))
    return out


def _bounds(P: Polytope) -> list[tuple[Fraction, Fraction]] | None:
    if P.box:
        return [(ZERO, ONE)] * P.n
    out = []
    for j in range(P.n):
        e = [ZERO] * P.n
        e[j] = ONE
        lo = optimize(P, e, "min")
        if lo.infeasible:
            return None
        if not lo.optimal:
            raise ValueError("vertex enumeration needs a bounded polytope")
        hi = optimize(P, e, "max")
        out.append((lo.value, hi.value))
    return out


def vertices(P: Polytope) -> list[tuple]:
    """Extreme points of an explicit polytope, sorted, without duplicates.

    Starts from the bounding box and cuts with one row at a time, creating a
    vertex on every edge that crosses the cutting hyperplane; adjacency is the
    combinatorial test "no third vertex is tight on all common rows".
    """
    if P.lifted:
        raise ValueError("vertices() needs an explicit polytope; project first")
    if P.n > LIMITS.vertex_dim:
        raise BudgetExceeded(f"vertex enumeration limited to n <= {LIMITS.vertex_dim}")
    if P.kind == EMPTY:
        return []
    n = P.n
    bounds = _bounds(P)
    if bounds is None:
        return []
    verts: dict[tuple, int] = {}
    for corner in itertools.product(*[sorted({lo, hi}) for lo, hi in bounds]):
        mask = 0
        for i, v in enumerate(corner):
            lo, hi = bounds[i]
            if v == lo:
                mask |= 1 << (2 * i)
            if v == hi:
                mask |= 1 << (2 * i + 1)
        verts[corner] = mask
    items = list(verts.items())
    for k, (a, beta) in enumerate(_ge_rows(P.constraints), start=2 * n):
        bit = 1 << k
        plus, zero, minus = [], [], []
        for pt, mask in items:
            s = sum((ai * xi for ai, xi in zip(a, pt) if ai), ZERO) - beta
            (plus if s > 0 else zero if s == 0 else minus).append((pt, mask, s))
        if not minus:
            items = [(pt, mask | bit if s == 0 else mask) for pt, mask, s in plus + zero]
            continue
        new = {}
        all_masks = [m for _, m in items]
        for u, mu, su in plus:
            for w, mw, sw in minus:
                common = mu & mw
                hits = 0
                for m in all_masks:
                    if m & common == common:
                        hits += 1
                        if hits > 2:
                            break
                if hits != 2:
                    continue
                t = su / (su - sw)
                pt = tuple(ui + t * (wi - ui) for ui, wi in zip(u, w))
                new[pt] = new.get(pt, 0) | common | bit
        items = [(pt, mask) for pt, mask, _ in plus] + [(pt, mask | bit) for pt, mask, _ in zero]
        seen = {pt for pt, _ in items}
        items += [(pt, m) for pt, m in new.items() if pt not in seen]
        if not items:
            return []
    return sorted({pt for pt, _ in items})


def vertices_by_bases(P: Polytope) -> list[tuple]:
    """Brute force: solve every ``n``-subset of rows and keep feasible points."""
    if P.lifted:
        raise ValueError("explicit polytope required")
    rows = _ge_rows(P.rows)
    n = P.n
    found = set()
    for subset in itertools.combinations(range(len(rows)), n):
        M = [rows[i][0] for i in subset]
        sol = solve_linear_system(M, [rows[i][1] for i in subset])
        if sol.unique and all(c.satisfied(sol.point) for c in P.rows):
            found.add(sol.point)
    return sorted(found)


def is_integral_polytope(P: Polytope) -> bool:
    return all(is_binary(v) for v in vertices(P))


# --------------------------------------------------------------------------
# hull synthesis (V -> H)


def hull(points: Iterable[Sequence], n: int | None = None) -> Polytope:
    """Explicit H-representation of ``conv(points)``.

    Equations of the affine hull come first; each facet is found as the
    hyperplane through an affinely independent subset of points that leaves
    all points on one side.
    """
    pts = sorted({tuple(Q(v) for v in p) for p in points})
    if not pts:
        if n is None:
            raise ValueError("dimension needed for an empty hull")
        return Polytope.empty(n)
    n = len(pts[0])
    eqs = affine_hull_equations(pts)
    cons = [LinearConstraint.make(cc, "=", dd, n) for cc, dd in (_canon(c, d) for c, d in eqs)]
    d = len(pts) and affine_rank(pts) - 1
    if d == 0:
        return Polytope(n, cons, box=False)
    base = pts[0]
    span = nullspace([c for c, _ in eqs], n) if eqs else nullspace([], n)
    if comb(len(pts), d) > LIMITS.facet_candidates:
        raise BudgetExceeded(f"{comb(len(pts), d)} facet candidates exceed budget")
    facets = {}
    for subset in itertools.combinations(range(len(pts)), d):
        q0 = pts[subset[0]]
        diffs = [sub(pts[i], q0) for i in subset[1:]]
        # normal c = sum alpha_k span_k with c . diff = 0 for every diff
        M = [[dot(s, df) for s in span] for df in diffs]
        alphas = nullspace(M, len(span)) if M else nullspace([], len(span))
        if len(alphas) != 1:
            continue
        c = tuple(sum((a * s[i] for a, s in zip(alphas[0], span)), ZERO) for i in range(n))
        delta = dot(c, q0)
        vals = [dot(c, p) - delta for p in pts]
        if all(v >= 0 for v in vals):
            key = _canon(c, delta)
        elif all(v <= 0 for v in vals):
            key = _canon(tuple(-v for v in c), -delta)
        else:
            continue
        facets[key] = True
    cons += [LinearConstraint.make(c, ">=", d_, n) for c, d_ in sorted(facets)]
    return Polytope(n, cons, box=False)


def _canon(c, d):
    ints, rhs = primitive(c, d)
    return tuple(Fraction(i) for i in ints), Fraction(rhs)


def hull_vertices(points: Iterable[Sequence]) -> list[tuple]:
    """Points of the set that are extreme in its convex hull."""
    pts = sorted({tuple(Q(v) for v in p) for p in points})
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others or not in_convex_hull(others, p):
            out.append(p)
    return out


def in_convex_hull(points: Sequence[Sequence], x: Sequence) -> bool:
    k = len(points)
    if k == 0:
        return False
    n = len(x)
    cons = [LinearConstraint(((i, ONE),), ">=", ZERO, k) for i in range(k)]
    for j in range(n):
        cons.append(LinearConstraint.make({i: p[j] for i, p in enumerate(points)}, "=", x[j], k))
    cons.append(LinearConstraint(tuple((i, ONE) for i in range(k)), "=", ONE, k))
    return feasibility(cons, k).optimal


# --------------------------------------------------------------------------
# projection


def _row_key(terms, sense, rhs):
    idx = [j for j, _ in terms]
    ints, r = primitive([v for _, v in terms], rhs)
    return tuple(zip(idx, ints)), sense, r


def _dedupe(rows: list[LinearConstraint]) -> list[LinearConstraint]:
    seen = {}
    for c in rows:
        if not c.terms:
            continue
        key = _row_key(c.terms, c.sense, c.rhs)
        seen.setdefault(key, c)
    return list(seen.values())


def remove_redundant(rows: Sequence[LinearConstraint], dim: int) -> list[LinearConstraint]:
    """Drop inequality rows implied by the others (one LP per row)."""
    rows = list(rows)
    i = 0
    while i < len(rows):
        c = rows[i]
        if c.sense == "=":
            i += 1
            continue
        others = rows[:i] + rows[i + 1:]
        obj = [ZERO] * dim
        for j, v in c.terms:
            obj[j] = v
        direction = "min" if c.sense == ">=" else "max"
        out = lp_solve(LPProblem(tuple(others), tuple(obj), direction, dim))
        if out.optimal and ((c.sense == ">=" and out.value >= c.rhs) or (c.sense == "<=" and out.value <= c.rhs)):
            rows.pop(i)
        elif out.infeasible:
            return rows
        else:
            i += 1
    return rows


def project(P: Polytope, keep: Sequence[int] | None = None, redundancy: bool = True) -> Polytope:
    """Fourier-Motzkin projection onto the variables in ``keep``.

    ``keep`` defaults to all original variables.  Equalities are used for
    substitution before any pairwise combination; redundant rows are removed
    by LP after each eliminated variable.
    """
    keep = list(range(P.n)) if keep is None else sorted(set(keep))
    if P.kind == EMPTY or P.is_empty():
        return Polytope.empty(len(keep))
    dim = P.dim
    rows = list(P.rows)
    eliminate = [j for j in range(dim) if j not in set(keep)]
    rows = [c for c in _dedupe(rows)]
    while eliminate:
        def cost(v):
            if any(c.sense == "=" and any(j == v for j, _ in c.terms) for c in rows):
                return (-1, v)
            pos = sum(1 for c in rows if _coef(c, v) and _ge_sign(c, v) > 0)
            neg = sum(1 for c in rows if _coef(c, v) and _ge_sign(c, v) < 0)
            return (pos * neg - pos - neg, v)

        v = min(eliminate, key=cost)
        eliminate.remove(v)
        rows = _eliminate(rows, v, dim)
        if rows is None:
            return Polytope.empty(len(keep))
        rows = _dedupe(rows)
        if len(rows) > LIMITS.fm_rows:
            raise BudgetExceeded(f"Fourier-Motzkin produced {len(rows)} rows")
        if redundancy:
            rows = remove_redundant(rows, dim)
    index_map = {j: i for i, j in enumerate(keep)}
    out = [c.embed(len(keep), index_map=index_map) for c in rows]
    return Polytope(len(keep), out, box=False)


def _coef(c: LinearConstraint, v: int):
    for j, val in c.terms:
        if j == v:
            return val
    return ZERO


def _ge_sign(c: LinearConstraint, v: int) -> int:
    val = _coef(c, v)
    s = 1 if val > 0 else -1
    return -s if c.sense == "<=" else s


def _scaled_terms(c: LinearConstraint, factor) -> dict:
    return {j: val * factor for j, val in c.terms}


def _eliminate(rows: list[LinearConstraint], v: int, dim: int) -> list[LinearConstraint] | None:
    pivot = next((c for c in rows if c.sense == "=" and _coef(c, v)), None)
    out = []
    if pivot is not None:
        pv = _coef(pivot, v)
        for c in rows:
            if c is pivot:
                continue
            cv = _coef(c, v)
            if not cv:
                out.append(c)
                continue
            f = cv / pv
            terms = {j: val for j, val in c.terms}
            for j, val in pivot.terms:
                terms[j] = terms.get(j, ZERO) - f * val
            terms.pop(v, None)
            out.append(LinearConstraint.make(terms, c.sense, c.rhs - f * pivot.rhs, dim))
        return _check_trivial(out)
    pos, neg = [], []
    for c in rows:
        cv = _coef(c, v)
        if not cv:
            out.append(c)
            continue
        # as a ">=" row: (terms, rhs)
        if c.sense == "<=":
            terms, rhs = {j: -val for j, val in c.terms}, -c.rhs
        else:
            terms, rhs = dict(c.terms), c.rhs
        (pos if terms[v] > 0 else neg).append((terms, rhs))
    for tp, rp in pos:
        for tn, rn in neg:
            a, b = tp[v], -tn[v]
            terms = {}
            for j, val in tp.items():
                terms[j] = terms.get(j, ZERO) + val / a
            for j, val in tn.items():
                terms[j] = terms.get(j, ZERO) + val / b
            terms.pop(v, None)
            out.append(LinearConstraint.make(terms, ">=", rp / a + rn / b, dim))
    return _check_trivial(out)


def _check_trivial(rows: list[LinearConstraint]) -> list[LinearConstraint] | None:
    kept = []
    for c in rows:
        if c.terms:
            kept.append(c)
        elif not c.satisfied(()):
            return None
    return kept


def explicit(P: Polytope) -> Polytope:
    """An explicit (aux-free) H-representation of the shadow of ``P``.

    Unions go through the vertex route (hull of the parts' vertices), meets
    concatenate their members' explicit rows, and unstructured lifted systems
    fall back to Fourier-Motzkin.
    """
    cached = P.__dict__.get("_explicit")
    if cached is not None:
        return cached
    if P.kind == EMPTY:
        out = P
    elif not P.lifted and P.kind == FLAT:
        out = P
    elif P.kind == UNION:
        pts = []
        for part in P.parts:
            pts.extend(vertices(explicit(part)))
        out = hull(pts, P.n) if pts else Polytope.empty(P.n)
    elif P.kind == MEET:
        rows = []
        members = [explicit(m) for m in P.parts]
        if any(m.kind == EMPTY for m in members):
            out = Polytope.empty(P.n)
        else:
            for m in members:
                rows.extend(m.rows)
            cand = Polytope(P.n, _dedupe(rows), box=False)
            out = Polytope.empty(P.n) if cand.is_empty() else cand
    else:
        out = project(P)
    P._explicit = out
    return out


# --------------------------------------------------------------------------
# integer hulls and comparisons


@dataclass
class IntegerHull:
    """``conv(P ∩ {0,1}^n)`` as its 0/1 vertices plus (optionally) facets."""

    n: int
    vertices: list
    facets: Polytope | None = None

    @property
    def empty(self) -> bool:
        return not self.vertices

    @classmethod
    def from_facets(cls, facets: Polytope) -> "IntegerHull":
        n = facets.n
        verts = [v for v in itertools.product((ZERO, ONE), repeat=n) if is_member(facets, v)]
        return cls(n, verts, facets)


def binary_points(P: Polytope) -> list[tuple]:
    if P.n > LIMITS.integer_hull_dim:
        raise BudgetExceeded(f"0/1 enumeration limited to n <= {LIMITS.integer_hull_dim}")
    out = []
    for v in itertools.product((ZERO, ONE), repeat=P.n):
        if P.lifted:
            face = P.restrict_many(enumerate(v))
            if not face.is_empty():
                out.append(v)
        elif is_member(P, v):
            out.append(v)
    return out


def integer_hull(P: Polytope, with_facets: bool = True) -> IntegerHull:
    pts = binary_points(P)
    facets = None
    if with_facets:
        facets = hull(pts, P.n) if pts else Polytope.empty(P.n)
    return IntegerHull(P.n, pts, facets)


def contains(R: Polytope, H: IntegerHull) -> bool:
    """Does ``R`` contain the integer hull ``H`` (all its vertices)?"""
    return all(is_member(R, v) for v in H.vertices)


@dataclass
class HullComparison:
    equal: bool
    witness: tuple | None = None
    violated: LinearConstraint | None = None
    missing_vertex: tuple | None = None

    def __bool__(self) -> bool:
        return self.equal


def equals_integer_hull(R: Polytope, H: IntegerHull, decompose: bool = True) -> HullComparison:
    """Compare a relaxation with an integer hull given by facets.

    Equal iff every hull vertex lies in ``R`` and every facet (equations
    checked in both directions) is valid for ``R``; otherwise a point of ``R``
    minimising a violated facet is returned.
    """
    if H.facets is None:
        raise ValueError("integer hull facets are required")
    if H.empty:
        pt = feasible_point(R)
        return HullComparison(pt is None, witness=pt)
    for v in H.vertices:
        if not is_member(R, v):
            return HullComparison(False, missing_vertex=v)
    return polytope_within(R, H.facets, decompose)


def polytope_within(R: Polytope, S: Polytope, decompose: bool = True) -> HullComparison:
    """Is ``R ⊆ S`` for an explicit ``S``?  One LP per row of ``S``.

    With ``decompose`` a union is checked part by part (a convex ``S``
    contains a hull of parts iff it contains every part) and a meet is
    accepted as soon as one member lies inside ``S``.
    """
    if S.lifted:
        raise ValueError("outer polytope must be explicit")
    if R.kind == EMPTY:
        return HullComparison(True)
    if decompose and R.kind == UNION:
        for part in R.parts:
            sub = polytope_within(part, S)
            if not sub.equal:
                return sub
        return HullComparison(True)
    if decompose and R.kind == MEET:
        # one member inside S already puts the whole intersection inside S
        for member in sorted(R.parts, key=lambda p: p.aux):
            if member.aux < R.aux and polytope_within(member, S).equal:
                return HullComparison(True)
    for c in S.rows:
        obj = c.coeffs
        checks = []
        if c.sense in (">=", "="):
            checks.append(("min", lambda v: v >= c.rhs))
        if c.sense in ("<=", "="):
            checks.append(("max", lambda v: v <= c.rhs))
        for direction, ok in checks:
            out = optimize(R, obj, direction)
            if out.infeasible:
                return HullComparison(True)
            if not out.optimal or not ok(out.value):
                return HullComparison(False, witness=out.point, violated=c)
    return HullComparison(True)


def contains_polytope(outer: Polytope, inner: Polytope) -> bool | None:
    """``inner ⊆ outer``?  ``None`` when no exact route is available."""
    if inner.kind == EMPTY or inner.is_empty():
        return True
    if not outer.lifted:
        return polytope_within(inner, outer).equal
    if not inner.lifted:
        return all(is_member(outer, v) for v in vertices(inner))
    try:
        inner_x = explicit(inner)
    except BudgetExceeded:
        return None
    return all(is_member(outer, v) for v in vertices(inner_x))


def same_polytope(A: Polytope, B: Polytope) -> bool | None:
    ab = contains_polytope(B, A)
    if ab is False:
        return False
    ba = contains_polytope(A, B)
    if ab is None or ba is None:
        return None
    return ab and ba


# --------------------------------------------------------------------------
# simplicial-hull witness


def dash_witness(facet_points: Sequence[Sequence], R: Sequence[Sequence], a: Sequence, b) -> tuple:
    """A point in every ``conv(facet_points ∪ {r})`` strictly beyond ``a·x = b``.

    Solves one LP over ``x`` and per-``r`` convex multipliers, maximising
    ``a·x``.
    """
    S = [tuple(Q(v) for v in s) for s in facet_points]
    R = [tuple(Q(v) for v in r) for r in R]
    a = tuple(Q(v) for v in a)
    b = Q(b)
    if not S or not R:
        raise ValueError("facet points and R must be non-empty")
    n = len(a)
    if not any(a):
        raise ValueError("a must be non-zero")
    if len(S) != n or affine_rank(S) != n:
        raise ValueError("need n affinely independent facet points")
    if any(dot(a, s) != b for s in S):
        raise ValueError("facet points must lie on a·x = b")
    if any(dot(a, r) <= b for r in R):
        raise ValueError("every r must satisfy a·r > b")
    k = n + 1
    dim = n + k * len(R)
    cons = []
    for t, r in enumerate(R):
        gens = S + [r]
        off = n + t * k
        for i in range(k):
            cons.append(LinearConstraint(((off + i, ONE),), ">=", ZERO, dim))
        cons.append(LinearConstraint(tuple((off + i, ONE) for i in range(k)), "=", ONE, dim))
        for j in range(n):
            terms = {j: ONE}
            for i, g in enumerate(gens):
                if g[j]:
                    terms[off + i] = -g[j]
            cons.append(LinearConstraint.make(terms, "=", ZERO, dim))
    obj = a + (ZERO,) * (dim - n)
    out = lp_solve(LPProblem(tuple(cons), obj, "max", dim))
    if not out.optimal:
        raise RuntimeError(f"witness LP ended {out.status}")
    x = out.point[:n]
    if dot(a, x) <= b:
        raise RuntimeError("witness LP found no point beyond the facet")
    return x
