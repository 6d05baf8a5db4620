"""Exact rational linear programming.

Every LP is handed to a revised simplex that runs on the *dual* of the
problem: our systems have many more rows than variables, so the dual keeps
the basis as small as the variable count.  Pivoting follows Bland's
smallest-index rule, which guarantees termination with exact arithmetic.

Arithmetic inside the solver uses ``gmpy2.mpq``; everything crossing the
module boundary is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .numeric import ZERO, Q, format_rational

SENSES = (">=", "<=", "=")


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass(frozen=True)
class LinearConstraint:
    """``coeffs · x  (sense)  rhs`` with coefficients stored sparsely."""

    terms: tuple  # ((index, Fraction), ...) sorted by index, no zeros
    sense: str
    rhs: Fraction
    dim: int

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ValueError(f"unknown sense {self.sense!r}")
        if any(not 0 <= j < self.dim for j, _ in self.terms):
            raise ValueError("term index outside ambient dimension")

    @classmethod
    def make(cls, coeffs, sense: str, rhs, dim: int | None = None) -> "LinearConstraint":
        """Build from a dense sequence or a ``{index: coeff}`` mapping."""
        if isinstance(coeffs, Mapping):
            if dim is None:
                raise ValueError("dim required for sparse coefficients")
            items = coeffs.items()
        else:
            coeffs = list(coeffs)
            dim = len(coeffs) if dim is None else dim
            items = enumerate(coeffs)
        terms = tuple(sorted((int(j), Q(c)) for j, c in items if Q(c) != 0))
        return cls(terms, sense, Q(rhs), dim)

    @property
    def coeffs(self) -> tuple:
        dense = [ZERO] * self.dim
        for j, c in self.terms:
            dense[j] = c
        return tuple(dense)

    def lhs(self, x: Sequence) -> Fraction:
        return sum((c * x[j] for j, c in self.terms), ZERO)

    def satisfied(self, x: Sequence) -> bool:
        v = self.lhs(x)
        if self.sense == ">=":
            return v >= self.rhs
        if self.sense == "<=":
            return v <= self.rhs
        return v == self.rhs

    def normalized(self) -> list[tuple[tuple, Fraction]]:
        """Equivalent ``>=`` rows as ``(terms, rhs)`` pairs."""
        neg = tuple((j, -c) for j, c in self.terms)
        if self.sense == ">=":
            return [(self.terms, self.rhs)]
        if self.sense == "<=":
            return [(neg, -self.rhs)]
        return [(self.terms, self.rhs), (neg, -self.rhs)]

    def embed(self, dim: int, offset: int = 0, index_map: Mapping[int, int] | None = None):
        """Same constraint re-indexed into a larger ambient space."""
        if index_map is not None:
            terms = tuple(sorted((index_map[j], c) for j, c in self.terms))
        else:
            terms = tuple((j + offset, c) for j, c in self.terms)
        return LinearConstraint(terms, self.sense, self.rhs, dim)

    def to_json(self) -> dict:
        return {
            "coeffs": [format_rational(c) for c in self.coeffs],
            "sense": self.sense,
            "rhs": format_rational(self.rhs),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LinearConstraint":
        return cls.make([Q(c) for c in obj["coeffs"]], obj["sense"], Q(obj["rhs"]))

    def __str__(self) -> str:
        body = " + ".join(f"{format_rational(c)}*x{j + 1}" for j, c in self.terms) or "0"
        return f"{body} {self.sense} {format_rational(self.rhs)}"


def ge(coeffs, rhs, dim=None) -> LinearConstraint:
    return LinearConstraint.make(coeffs, ">=", rhs, dim)


def le(coeffs, rhs, dim=None) -> LinearConstraint:
    return LinearConstraint.make(coeffs, "<=", rhs, dim)


def eq(coeffs, rhs, dim=None) -> LinearConstraint:
    return LinearConstraint.make(coeffs, "=", rhs, dim)


@dataclass(frozen=True)
class LPProblem:
    constraints: tuple
    objective: tuple
    direction: str = "max"
    nvars: int = -1

    def __post_init__(self):
        nvars = len(self.objective) if self.nvars < 0 else self.nvars
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "objective", tuple(Q(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.direction not in ("max", "min"):
            raise ValueError("direction must be 'max' or 'min'")
        if len(self.objective) != nvars:
            raise ValueError("objective length differs from var count")
        for c in self.constraints:
            if c.dim != nvars:
                raise ValueError(f"constraint of dim {c.dim} in a {nvars}-variable LP")


@dataclass(frozen=True)
class LPOutcome:
    """Result of :func:`lp_solve`.

    ``certificate`` holds one multiplier per input constraint, signed so that
    ``>=`` rows get non-negative, ``<=`` rows non-positive and ``=`` rows free
    multipliers.  For an optimal outcome the multipliers reproduce the
    (minimisation-form) objective and the optimal value; for an infeasible one
    they combine to ``0·x >= positive``.  ``ray`` is an improving recession
    direction when the LP is unbounded.
    """

    status: str
    point: tuple | None = None
    value: Fraction | None = None
    certificate: tuple | None = None
    ray: tuple | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    @property
    def infeasible(self) -> bool:
        return self.status == "infeasible"


# --------------------------------------------------------------------------
# revised simplex on  min c·u  s.t.  A u = r, u >= 0, r >= 0


@dataclass
class _SimplexResult:
    status: str
    basis: list
    xB: list
    pi: list
    ray: dict | None = None
    pivots: int = 0


class _RevisedSimplex:
    def __init__(self, columns: list, rhs: list, cost: list):
        self.columns = columns  # list of [(row, mpq), ...]
        self.m = len(rhs)
        self.N = len(columns)
        self.rhs = rhs
        self.cost = cost
        m = self.m
        self.basis = [self.N + i for i in range(m)]
        self.Binv = [[mpq(1) if i == j else mpq(0) for j in range(m)] for i in range(m)]
        self.xB = list(rhs)
        self.pivots = 0
        self.stall_limit = 50

    def _column(self, j):
        if j >= self.N:
            return [(j - self.N, mpq(1))]
        return self.columns[j]

    def _pi(self, cost_of):
        pi = [mpq(0)] * self.m
        for i, b in enumerate(self.basis):
            cb = cost_of(b)
            if cb:
                row = self.Binv[i]
                for r in range(self.m):
                    if row[r]:
                        pi[r] += cb * row[r]
        return pi

    def _alpha(self, j):
        col = self._column(j)
        return [sum((row[r] * v for r, v in col if row[r]), mpq(0)) for row in self.Binv]

    def _pivot(self, r, alpha):
        piv = alpha[r]
        m = self.m
        rowr = self.Binv[r]
        if piv != 1:
            rowr = [x / piv for x in rowr]
            self.Binv[r] = rowr
            self.xB[r] = self.xB[r] / piv
        nz = [k for k in range(m) if rowr[k]]
        xr = self.xB[r]
        for i in range(m):
            f = alpha[i]
            if i == r or not f:
                continue
            row = self.Binv[i]
            for k in nz:
                row[k] -= f * rowr[k]
            if xr:
                self.xB[i] -= f * xr
        self.pivots += 1

    def run(self, cost_of, allow_artificial: bool):
        """Iterate to optimality; returns ``("optimal"|"unbounded", ray)``.

        Prices with the most negative reduced cost, switching to Bland's
        rule after a run of degenerate pivots so cycling cannot occur.
        """
        degenerate = 0
        pi = self._pi(cost_of)
        while True:
            in_basis = set(self.basis)
            bland = degenerate > self.stall_limit
            entering, best_d = None, mpq(0)
            limit = self.N + (self.m if allow_artificial else 0)
            for j in range(limit):
                if j in in_basis:
                    continue
                d = cost_of(j)
                for r, v in self._column(j):
                    if pi[r]:
                        d -= pi[r] * v
                if d < best_d:
                    entering, best_d = j, d
                    if bland:
                        break
            if entering is None:
                return "optimal", None, pi
            alpha = self._alpha(entering)
            best = None
            for i in range(self.m):
                a = alpha[i]
                if a > 0:
                    ratio = self.xB[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                ray = {entering: mpq(1)}
                for i in range(self.m):
                    if alpha[i]:
                        ray[self.basis[i]] = -alpha[i]
                return "unbounded", ray, pi
            degenerate = degenerate + 1 if best[0][0] == 0 else 0
            r = best[1]
            self._pivot(r, alpha)
            self.basis[r] = entering
            # keep the duals current: pi += d_j * (new row r of B^-1)
            rowr = self.Binv[r]
            for k in range(self.m):
                if rowr[k]:
                    pi[k] += best_d * rowr[k]

    def drive_out_artificials(self):
        for r in range(self.m):
            if self.basis[r] < self.N:
                continue
            rowr = self.Binv[r]
            in_basis = set(self.basis)
            for j in range(self.N):
                if j in in_basis:
                    continue
                v = sum((rowr[i] * a for i, a in self.columns[j] if rowr[i]), mpq(0))
                if v:
                    alpha = self._alpha(j)
                    self._pivot(r, alpha)
                    self.basis[r] = j
                    break
            # otherwise the row is redundant and its artificial stays at zero


def _simplex(columns, rhs, cost) -> _SimplexResult:
    N = len(columns)
    sx = _RevisedSimplex(columns, rhs, cost)
    if any(rhs):
        status, _, pi = sx.run(lambda j: mpq(1) if j >= N else mpq(0), allow_artificial=False)
        w = sum((x for b, x in zip(sx.basis, sx.xB) if b >= N), mpq(0))
        if w > 0:
            return _SimplexResult("infeasible", sx.basis, sx.xB, pi, pivots=sx.pivots)
    sx.drive_out_artificials()
    status, ray, pi = sx.run(lambda j: cost[j] if j < N else mpq(0), allow_artificial=False)
    return _SimplexResult(status, sx.basis, sx.xB, pi, ray, sx.pivots)


# --------------------------------------------------------------------------
# primal LP front end


@dataclass
class _Normalized:
    rows: list  # [(terms, rhs)] all ">="
    origin: list  # per row: list of (constraint index, sign)
    contradiction: int | None = None  # row index of an empty row 0 >= positive


def _normalize(constraints: Sequence[LinearConstraint]) -> _Normalized:
    rows, origin, seen = [], [], {}
    contradiction = None
    for k, con in enumerate(constraints):
        for idx, (terms, rhs) in enumerate(con.normalized()):
            sign = 1 if idx == 0 and con.sense != "<=" else -1
            if not terms:
                if rhs > 0 and contradiction is None:
                    rows.append((terms, rhs))
                    origin.append([(k, sign)])
                    contradiction = len(rows) - 1
                continue
            key = (terms, rhs)
            if key in seen:
                continue
            seen[key] = len(rows)
            rows.append((terms, rhs))
            origin.append([(k, sign)])
    return _Normalized(rows, origin, contradiction)


def _multipliers(norm: _Normalized, y: Mapping[int, object], ncons: int) -> tuple:
    mult = [ZERO] * ncons
    for i, val in y.items():
        if val:
            for k, sign in norm.origin[i]:
                mult[k] += sign * _frac(val)
    return tuple(mult)


def _dual_simplex_input(norm: _Normalized, cprime: Sequence, nvars: int):
    signs = [1 if c >= 0 else -1 for c in cprime]
    columns = []
    cost = []
    for terms, rhs in norm.rows:
        columns.append([(j, mpq(c.numerator * signs[j], c.denominator)) for j, c in terms])
        cost.append(-mpq(rhs.numerator, rhs.denominator))
    rhs = [mpq(abs(c.numerator), c.denominator) for c in cprime]
    return columns, rhs, cost, signs


def _feasibility(constraints, nvars) -> LPOutcome:
    norm = _normalize(constraints)
    ncons = len(constraints)
    if norm.contradiction is not None:
        cert = _multipliers(norm, {norm.contradiction: mpq(1)}, ncons)
        return LPOutcome("infeasible", certificate=cert)
    columns, rhs, cost, signs = _dual_simplex_input(norm, [ZERO] * nvars, nvars)
    res = _simplex(columns, rhs, cost)
    if res.status == "unbounded":
        ray = {i: v for i, v in res.ray.items() if i < len(columns)}
        return LPOutcome("infeasible", certificate=_multipliers(norm, ray, ncons), pivots=res.pivots)
    point = tuple(-_frac(p) for p in res.pi)
    return LPOutcome("optimal", point=point, value=ZERO, pivots=res.pivots)


def lp_solve(problem: LPProblem) -> LPOutcome:
    """Solve ``problem`` exactly.

    Optimal outcomes come with a basic optimal point and dual multipliers;
    infeasible ones with a Farkas certificate; unbounded ones with a feasible
    point and an improving ray.
    """
    n = problem.nvars
    constraints = problem.constraints
    flip = problem.direction == "max"
    cprime = [-c if flip else c for c in problem.objective]
    if not any(cprime):
        out = _feasibility(constraints, n)
        if out.optimal:
            return LPOutcome("optimal", out.point, ZERO, tuple([ZERO] * len(constraints)), pivots=out.pivots)
        return out

    norm = _normalize(constraints)
    if norm.contradiction is not None:
        return _feasibility(constraints, n)
    columns, rhs, cost, signs = _dual_simplex_input(norm, cprime, n)
    res = _simplex(columns, rhs, cost)
    if res.status == "infeasible":
        feas = _feasibility(constraints, n)
        if feas.infeasible:
            return LPOutcome("infeasible", certificate=feas.certificate, pivots=res.pivots + feas.pivots)
        ray = tuple(-signs[j] * _frac(res.pi[j]) for j in range(n))
        return LPOutcome("unbounded", point=feas.point, ray=ray, pivots=res.pivots + feas.pivots)
    if res.status == "unbounded":
        # an unbounded dual ray is itself a Farkas certificate
        ray = {i: v for i, v in res.ray.items() if i < len(columns)}
        return LPOutcome("infeasible", certificate=_multipliers(norm, ray, len(constraints)), pivots=res.pivots)
    point = tuple(-signs[j] * _frac(res.pi[j]) for j in range(n))
    y = {b: x for b, x in zip(res.basis, res.xB) if b < len(columns)}
    cert = _multipliers(norm, y, len(constraints))
    value = sum((c * x for c, x in zip(problem.objective, point)), ZERO)
    return LPOutcome("optimal", point, value, cert, pivots=res.pivots)


def lp_feasible_point(constraints: Sequence[LinearConstraint], nvars: int) -> tuple | None:
    out = _feasibility(tuple(constraints), nvars)
    return out.point if out.optimal else None


def feasibility(constraints: Sequence[LinearConstraint], nvars: int) -> LPOutcome:
    """Feasibility check returning a point or a Farkas certificate."""
    return _feasibility(tuple(constraints), nvars)


def verify_farkas(constraints: Sequence[LinearConstraint], certificate: Sequence) -> bool:
    """True iff the multipliers prove the system infeasible."""
    if certificate is None or len(certificate) != len(constraints):
        return False
    if not constraints:
        return False
    dim = constraints[0].dim
    combo = [ZERO] * dim
    rhs = ZERO
    for con, mu in zip(constraints, certificate):
        if not _sign_ok(con.sense, mu):
            return False
        for j, c in con.terms:
            combo[j] += mu * c
        rhs += mu * con.rhs
    return all(v == 0 for v in combo) and rhs > 0


def verify_optimal(problem: LPProblem, outcome: LPOutcome) -> bool:
    """Exact optimality check: primal feasibility plus a matching dual."""
    if not outcome.optimal:
        return False
    x = outcome.point
    if not all(c.satisfied(x) for c in problem.constraints):
        return False
    value = sum((c * v for c, v in zip(problem.objective, x)), ZERO)
    if value != outcome.value:
        return False
    sgn = -1 if problem.direction == "max" else 1
    target = [sgn * c for c in problem.objective]
    combo = [ZERO] * problem.nvars
    drhs = ZERO
    for con, mu in zip(problem.constraints, outcome.certificate):
        if not _sign_ok(con.sense, mu):
            return False
        for j, c in con.terms:
            combo[j] += mu * c
        drhs += mu * con.rhs
    return combo == target and drhs == sgn * value


def _sign_ok(sense: str, mu) -> bool:
    if sense == ">=":
        return mu >= 0
    if sense == "<=":
        return mu <= 0
    return True
