"""Lift-and-project operators: Sherali-Adams, the L-step, B^k and T^k.

Every operator returns an :class:`OperatorResult` holding a (usually lifted)
:class:`Polytope` plus a provenance record.  Membership questions go through
exact LPs; explicit H-representations are available through
:func:`cutbranch.geometry.explicit` for small instances.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .geometry import LIMITS, BudgetExceeded
from .lp import LinearConstraint
from .numeric import ONE, ZERO, Q
from .polytope import EMPTY, Polytope, box_rows, is_member
from .trees import enumerate_trees, tree_relaxation


@dataclass
class OperatorResult:
    polytope: Polytope
    operator: str
    params: dict = field(default_factory=dict)
    source: Polytope | None = None

    @property
    def provenance(self) -> dict:
        return {"operator": self.operator, "params": dict(self.params)}

    def contains(self, x: Sequence) -> bool:
        if self.operator == "L" and self.source is not None:
            return l_member(self.source, self.params["k"], x)
        return is_member(self.polytope, x)

    def to_json(self) -> dict:
        return {"polytope": self.polytope.to_json(), "provenance": self.provenance}


# --------------------------------------------------------------------------
# Sherali-Adams


@dataclass
class SALift:
    """Level-``t`` linearisation of ``P``.

    ``subsets[i]`` is the index set of lifted variable ``i``; the first ``n``
    variables are the singletons, so the shadow is the first ``n``
    coordinates of :attr:`polytope`.
    """

    n: int
    t: int
    subsets: tuple
    index: dict
    polytope: Polytope
    source: Polytope | None = None

    @property
    def nvars(self) -> int:
        return len(self.subsets)

    def result(self) -> OperatorResult:
        return OperatorResult(self.polytope, "SA", {"t": self.t}, self.source)


def _sa_subsets(n: int, size: int) -> list[frozenset]:
    out = []
    for s in range(1, min(size, n) + 1):
        out.extend(frozenset(c) for c in itertools.combinations(range(n), s))
    return out


def _source_rows(P: Polytope) -> list[tuple[dict, Fraction]]:
    """Rows of ``P`` as ``a·x >= beta`` pairs with the box rows always included."""
    rows = list(P.constraints) + list(box_rows(P.n))
    out = []
    seen = set()
    for c in rows:
        for coeffs, beta in c.normalized():
            key = (coeffs, beta)
            if key not in seen:
                seen.add(key)
                out.append((dict(coeffs), beta))
    return out


def sa_lift(P: Polytope, t: int) -> SALift:
    if P.lifted:
        raise ValueError("Sherali-Adams lift needs an explicit input polytope")
    if t < 1:
        raise ValueError("level t must be at least 1")
    if t > LIMITS.sa_level:
        raise BudgetExceeded(f"Sherali-Adams level {t} above the budget {LIMITS.sa_level}")
    if P.kind == EMPTY:
        return SALift(P.n, t, (), {}, Polytope.empty(P.n), P)
    n = P.n
    subsets = _sa_subsets(n, t + 1)
    index = {S: i for i, S in enumerate(subsets)}
    dim = len(subsets)
    aux = dim - n
    source = _source_rows(P)
    rows = []
    seen = set()

    def add(acc: dict, S: frozenset, v: Fraction):
        if not v:
            return
        if S:
            i = index[S]
            acc[i] = acc.get(i, ZERO) + v
        else:
            acc[-1] = acc.get(-1, ZERO) + v

    pairs = []
    for size in range(t + 1):
        for U in itertools.combinations(range(n), size):
            for nI in range(size + 1):
                for I in itertools.combinations(U, nI):
                    pairs.append((frozenset(I), frozenset(U) - frozenset(I)))

    for a, beta in source:
        for I, J in pairs:
            acc: dict = {}
            Jl = sorted(J)
            for r in range(len(Jl) + 1):
                sign = -ONE if r % 2 else ONE
                for Jp in itertools.combinations(Jl, r):
                    base = I | frozenset(Jp)
                    for k, ak in a.items():
                        add(acc, base | {k}, sign * ak)
                    add(acc, base, -sign * beta)
            const = acc.pop(-1, ZERO)
            terms = tuple(sorted((i, v) for i, v in acc.items() if v))
            if not terms:
                if const < 0:
                    return SALift(n, t, tuple(subsets), index, Polytope.empty(n), P)
                continue
            key = (terms, const)
            if key in seen:
                continue
            seen.add(key)
            rows.append(LinearConstraint(terms, ">=", -const, dim))
    lifted = Polytope(n, rows, aux=aux, box=True, label=f"SA^{t}")
    return SALift(n, t, tuple(subsets), index, lifted, P)


def sa_member(P: Polytope, t: int, x: Sequence) -> bool:
    return is_member(sa_lift(P, t).polytope, x)


# --------------------------------------------------------------------------
# canonical lift-and-project


def l_step(P: Polytope) -> OperatorResult:
    """Intersection over ``i`` of the hulls of the two faces ``x_i = 0, 1``."""
    return OperatorResult(_l(P), "L", {"k": 1}, P)


def _l(P: Polytope) -> Polytope:
    if P.kind == EMPTY:
        return P
    members = [Polytope.union([P.restrict(i, 0), P.restrict(i, 1)]) for i in range(P.n)]
    return Polytope.meet(members)


def l_iterate(P: Polytope, k: int, max_aux: int = 200_000) -> OperatorResult:
    if k < 0:
        raise ValueError("k must be non-negative")
    out = P
    for step in range(k):
        out = _l(out)
        if out.aux > max_aux:
            raise BudgetExceeded(f"L^{step + 1} needs {out.aux} auxiliary variables")
    return OperatorResult(out, "L", {"k": k}, P)


def l_member(P: Polytope, k: int, x: Sequence) -> bool:
    """``x ∈ L^k(P)``.

    Coordinates of ``x`` that are 0 or 1 are first used to restrict ``P``:
    since such fixings are faces of the cube they commute with ``L``, and the
    remaining lift is much smaller.
    """
    x = tuple(Q(v) for v in x)
    if any(v < 0 or v > 1 for v in x):
        return False
    fix = {j: v for j, v in enumerate(x) if v == 0 or v == 1}
    face = P.restrict_many(fix)
    if face.kind == EMPTY or face.is_empty():
        return False
    if len(fix) == P.n:
        return is_member(face, x)
    return is_member(l_iterate(face, k).polytope, x)


# --------------------------------------------------------------------------
# sequential convexification


def bcc_subset_hull(P: Polytope, variables: Sequence[int], max_k: int = 12) -> Polytope:
    """Hull of the points of ``P`` that are 0/1 on ``variables``."""
    variables = sorted(set(variables))
    if len(variables) > max_k:
        raise BudgetExceeded(f"subset hull over {len(variables)} variables")
    faces = [P.restrict_many(dict(zip(variables, bits)))
             for bits in itertools.product((0, 1), repeat=len(variables))]
    return Polytope.union(faces)


def b_k_polytope(P: Polytope, k: int, max_subsets: int = 5_000) -> OperatorResult:
    if not 0 <= k <= P.n:
        raise ValueError("need 0 <= k <= n")
    subsets = list(itertools.combinations(range(P.n), k))
    if len(subsets) > max_subsets:
        raise BudgetExceeded(f"{len(subsets)} subsets exceed the budget")
    R = Polytope.meet([bcc_subset_hull(P, s) for s in subsets])
    return OperatorResult(R, "B", {"k": k}, P)


def b_k_member(P: Polytope, k: int, x: Sequence) -> bool:
    return all(is_member(bcc_subset_hull(P, s), x)
               for s in itertools.combinations(range(P.n), k))


# --------------------------------------------------------------------------
# bounded-height trees


def height_k_trees(n: int, k: int, budget: int | None = None) -> Iterator:
    return enumerate_trees(n, max_height=k, budget=budget)


def t_k_polytope(P: Polytope, k: int, budget: int | None = None) -> OperatorResult:
    rels = [tree_relaxation(P, T) for T in height_k_trees(P.n, k, budget)]
    return OperatorResult(Polytope.meet(rels), "Tk", {"k": k, "trees": len(rels)}, P)


def t_k_member(P: Polytope, k: int, x: Sequence, budget: int | None = None) -> bool:
    return all(is_member(tree_relaxation(P, T), x) for T in height_k_trees(P.n, k, budget))
