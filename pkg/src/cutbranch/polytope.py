"""Polytopes over original variables with optional auxiliary (lifted) ones.

A :class:`Polytope` is either a flat constraint system or one of two
structured forms that are materialised lazily:

* a disjunctive union -- the Balas extended formulation of the convex hull
  of its parts;
* a meet -- the intersection of several (possibly lifted) polytopes, each
  keeping its own block of auxiliary variables.

Keeping the structure around lets :meth:`Polytope.restrict` push a fixing
``x_j = a`` (a face of the unit cube) down into the parts and drop parts that
become empty, which is what keeps nested lift-and-project systems small.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .lp import LinearConstraint, LPOutcome, LPProblem, eq, feasibility, lp_solve
from .numeric import ONE, ZERO, Q, format_rational

FLAT, UNION, MEET, EMPTY = "flat", "union", "meet", "empty"


def box_rows(n: int, dim: int | None = None, offset: int = 0) -> tuple:
    dim = n if dim is None else dim
    rows = []
    for i in range(n):
        rows.append(LinearConstraint(((offset + i, ONE),), ">=", ZERO, dim))
        rows.append(LinearConstraint(((offset + i, ONE),), "<=", ONE, dim))
    return tuple(rows)


class Polytope:
    """Constraint system over ``n`` original and ``aux`` lifted variables.

    ``box`` asserts ``0 <= x_i <= 1`` for the original variables; the rows are
    added when the system is materialised (see :attr:`rows`).
    """

    def __init__(self, n: int, constraints: Iterable[LinearConstraint] = (), aux: int = 0,
                 box: bool = True, *, kind: str = FLAT, parts: Sequence["Polytope"] = (),
                 label: str | None = None):
        self.n = n
        self.kind = kind
        self.box = box
        self.parts = tuple(parts)
        self.label = label
        self._restrictions: dict = {}
        if kind == FLAT:
            self._constraints = tuple(constraints)
            self._aux = aux
            for c in self._constraints:
                if c.dim != n + aux:
                    raise ValueError(f"constraint dim {c.dim} != n+aux = {n + aux}")
        elif kind in (UNION, MEET):
            if not self.parts:
                raise ValueError("structured polytope needs parts")
            if any(p.n != n for p in self.parts):
                raise ValueError("parts disagree on the original dimension")
            self._constraints = None
            if kind == UNION:
                self._aux = sum(n + p.aux + 1 for p in self.parts)
            else:
                self._aux = sum(p.aux for p in self.parts)
        elif kind == EMPTY:
            self._constraints = (LinearConstraint((), ">=", ONE, n),)
            self._aux = 0
        else:
            raise ValueError(f"unknown polytope kind {kind!r}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls, n: int) -> "Polytope":
        return cls(n, kind=EMPTY, box=False, label="empty")

    @classmethod
    def cube(cls, n: int) -> "Polytope":
        return cls(n, (), box=True, label="cube")

    @classmethod
    def union(cls, parts: Sequence["Polytope"], prune: bool = True) -> "Polytope":
        """Convex hull of the union of ``parts`` (Balas formulation).

        With ``prune`` empty parts are dropped first; a single survivor is
        returned as is and no survivors give the empty polytope.
        """
        parts = list(parts)
        if not parts:
            raise ValueError("union of an empty part list")
        n = parts[0].n
        if prune:
            parts = [p for p in parts if not p.is_empty()]
            if not parts:
                return cls.empty(n)
            if len(parts) == 1:
                return parts[0]
        return cls(n, kind=UNION, parts=parts, box=False)

    @classmethod
    def meet(cls, members: Sequence["Polytope"]) -> "Polytope":
        members = list(members)
        if not members:
            raise ValueError("intersection of nothing")
        n = members[0].n
        if any(m.kind == EMPTY for m in members):
            return cls.empty(n)
        flat = []
        for m in members:
            flat.extend(m.parts if m.kind == MEET else [m])
        if len(flat) == 1:
            return flat[0]
        return cls(n, kind=MEET, parts=flat, box=False)

    # -- shape ----------------------------------------------------------------

    @property
    def aux(self) -> int:
        return self._aux

    @property
    def dim(self) -> int:
        return self.n + self._aux

    @property
    def lifted(self) -> bool:
        return self._aux > 0

    @property
    def constraints(self) -> tuple:
        """Materialised constraints (without the implicit box rows)."""
        if self._constraints is None:
            self._constraints = self._materialize()
        return self._constraints

    @cached_property
    def rows(self) -> tuple:
        """All constraints including the box rows when ``box`` is set."""
        if self.box:
            return self.constraints + box_rows(self.n, self.dim)
        return self.constraints

    def _materialize(self) -> tuple:
        n, dim = self.n, self.dim
        out = []
        if self.kind == MEET:
            offset = n
            for p in self.parts:
                index_map = {j: j for j in range(n)}
                index_map.update({n + k: offset + k for k in range(p.aux)})
                out.extend(c.embed(dim, index_map=index_map) for c in p.rows)
                offset += p.aux
            return tuple(out)
        # union: x | (z^l, w^l, lam_l) blocks
        offset = n
        lambdas = []
        copies = []
        for p in self.parts:
            lam = offset + n + p.aux
            lambdas.append(lam)
            copies.append(offset)
            for c in p.rows:
                terms = [(offset + j, v) for j, v in c.terms]
                if c.rhs:
                    terms.append((lam, -c.rhs))
                out.append(LinearConstraint(tuple(sorted(terms)), c.sense, ZERO, dim))
            out.append(LinearConstraint(((lam, ONE),), ">=", ZERO, dim))
            offset = lam + 1
        for i in range(n):
            terms = [(i, ONE)] + [(off + i, -ONE) for off in copies]
            out.append(LinearConstraint(tuple(terms), "=", ZERO, dim))
        out.append(LinearConstraint(tuple((lam, ONE) for lam in lambdas), "=", ONE, dim))
        return tuple(out)

    def coupling_rows(self) -> int:
        """Rows a union adds beyond its parts' own rows."""
        if self.kind != UNION:
            return 0
        return self.n + 1 + len(self.parts)

    # -- faces ----------------------------------------------------------------

    def restrict(self, j: int, a) -> "Polytope":
        """The face ``P ∩ {x_j = a}``.

        For ``a`` in {0, 1} the fixing is a face of the cube, so it commutes
        with convex hulls of parts inside the cube and is pushed down into
        unions and meets.
        """
        a = Q(a)
        key = (j, a)
        if key in self._restrictions:
            return self._restrictions[key]
        if not 0 <= j < self.n:
            raise IndexError(f"variable {j} outside 0..{self.n - 1}")
        if self.kind == EMPTY:
            out = self
        elif self.kind == UNION and a in (0, 1):
            out = Polytope.union([p.restrict(j, a) for p in self.parts], prune=True)
        elif self.kind == MEET:
            out = Polytope.meet([p.restrict(j, a) for p in self.parts])
        elif self.kind == FLAT:
            fix = LinearConstraint(((j, ONE),), "=", a, self.dim)
            out = Polytope(self.n, self._constraints + (fix,), self._aux, self.box,
                           label=self.label)
        else:
            fix = LinearConstraint(((j, ONE),), "=", a, self.dim)
            out = Polytope(self.n, self.constraints + (fix,), self._aux, self.box)
        self._restrictions[key] = out
        return out

    def restrict_many(self, fixings: Mapping[int, object] | Iterable[tuple[int, object]]) -> "Polytope":
        items = fixings.items() if isinstance(fixings, Mapping) else fixings
        out = self
        for j, a in sorted(items):
            out = out.restrict(j, a)
            if out.kind == EMPTY:
                break
        return out

    def with_constraints(self, extra: Iterable[LinearConstraint]) -> "Polytope":
        extra = tuple(extra)
        if self.kind == EMPTY:
            return self
        return Polytope(self.n, self.constraints + extra, self.aux, self.box)

    # -- LP questions -------------------------------------------------------

    def is_empty(self) -> bool:
        if "_empty" not in self.__dict__:
            if self.kind == EMPTY:
                self._empty = True
            elif self.kind == UNION:
                self._empty = all(p.is_empty() for p in self.parts)
            else:
                self._empty = feasibility(self.rows, self.dim).infeasible
        return self._empty

    def __repr__(self) -> str:
        tag = f" {self.label}" if self.label else ""
        if self.kind in (UNION, MEET):
            return f"<Polytope {self.kind}{tag} n={self.n} parts={len(self.parts)} aux={self.aux}>"
        return f"<Polytope {self.kind}{tag} n={self.n} aux={self.aux} rows={len(self.constraints)} box={self.box}>"

    # -- serialisation --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "aux": self.aux,
            "constraints": [c.to_json() for c in self.constraints],
            "box": self.box,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Polytope":
        cons = tuple(LinearConstraint.from_json(c) for c in obj["constraints"])
        return cls(int(obj["n"]), cons, int(obj.get("aux", 0)), bool(obj.get("box", True)))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _substitute(rows: Sequence[LinearConstraint], n: int, x: Sequence) -> tuple:
    """Fix the first ``n`` coordinates to ``x``; returns rows over the rest."""
    dim = rows[0].dim - n if rows else 0
    out = []
    for c in rows:
        shift = ZERO
        terms = []
        for j, v in c.terms:
            if j < n:
                shift += v * x[j]
            else:
                terms.append((j - n, v))
        out.append(LinearConstraint(tuple(terms), c.sense, c.rhs - shift, dim))
    return tuple(out)


def is_member(P: Polytope, x: Sequence) -> bool:
    """Exact membership: does some auxiliary assignment complete ``x``?"""
    x = tuple(Q(v) for v in x)
    if len(x) != P.n:
        raise ValueError(f"point has dim {len(x)}, polytope has n={P.n}")
    if P.kind == EMPTY:
        return False
    if not P.lifted:
        return all(c.satisfied(x) for c in P.rows)
    if P.kind == MEET:
        return all(is_member(m, x) for m in P.parts)
    if P.box and any(v < 0 or v > 1 for v in x):
        return False
    reduced = _substitute(P.rows, P.n, x)
    return not feasibility(reduced, P.aux).infeasible


def membership_certificate(P: Polytope, x: Sequence) -> LPOutcome:
    """The LP outcome behind :func:`is_member` (lifted systems only)."""
    x = tuple(Q(v) for v in x)
    reduced = _substitute(P.rows, P.n, x)
    return feasibility(reduced, P.aux)


def optimize(P: Polytope, objective: Sequence, direction: str = "min") -> LPOutcome:
    """Optimise a linear function of the original variables over ``P``.

    The returned point is the projection onto the original variables.
    """
    obj = tuple(Q(c) for c in objective)
    if len(obj) != P.n:
        raise ValueError("objective dimension mismatch")
    if P.kind == EMPTY:
        return LPOutcome("infeasible")
    full = obj + (ZERO,) * P.aux
    out = lp_solve(LPProblem(P.rows, full, direction, P.dim))
    if out.point is not None:
        out = LPOutcome(out.status, out.point[:P.n], out.value, out.certificate, out.ray, out.pivots)
    return out


def feasible_point(P: Polytope) -> tuple | None:
    if P.kind == EMPTY:
        return None
    out = feasibility(P.rows, P.dim)
    return out.point[:P.n] if out.optimal else None


def fixing_constraint(n: int, j: int, a) -> LinearConstraint:
    return eq({j: 1}, a, n)
