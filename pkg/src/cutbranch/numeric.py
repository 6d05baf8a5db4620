"""Exact rational scalars, vectors and small dense linear algebra.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors are tuples of fractions and matrices are tuples of
such rows; both are immutable so they can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
RVector = tuple  # tuple[Fraction, ...]
RMatrix = tuple  # tuple[RVector, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(value) -> Fraction:
    """Coerce ints, strings ("p/q") and fractions to a Fraction.

    Floats are refused: every number in the lab must be exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass 'p/q' or a Fraction")
    # gmpy2.mpq and anything else exposing numerator/denominator
    num, den = getattr(value, "numerator", None), getattr(value, "denominator", None)
    if num is None or den is None:
        raise TypeError(f"cannot interpret {value!r} as a rational")
    return Fraction(int(num), int(den))


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty rational literal")
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal literal {text!r} not accepted; use p/q")
    return Fraction(text)


def format_rational(q: Fraction) -> str:
    q = Q(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> RVector:
    return tuple(Q(v) for v in values)


def parse_vector(text: str) -> RVector:
    """Parse a comma separated list such as ``"1/3,1/3,0"``."""
    return tuple(parse_rational(t) for t in text.split(",") if t.strip())


def format_vector(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b) if x and y), ZERO)


def sub(a: Sequence, b: Sequence) -> RVector:
    return tuple(x - y for x, y in zip(a, b))


def is_integral(v: Sequence) -> bool:
    return all(Q(x).denominator == 1 for x in v)


def is_binary(v: Sequence) -> bool:
    return all(x == 0 or x == 1 for x in v)


def primitive(coeffs: Sequence, rhs=ZERO) -> tuple[tuple[int, ...], int]:
    """Scale ``(coeffs, rhs)`` to coprime integers with positive scaling.

    Used to compare hyperplanes and constraints up to positive multiples.
    """
    from math import gcd, lcm

    values = [Q(c) for c in coeffs] + [Q(rhs)]
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for i in ints:
        g = gcd(g, i)
    if g > 1:
        ints = [i // g for i in ints]
    return tuple(ints[:-1]), ints[-1]


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the first ``ncols`` columns (in place)."""
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


@dataclass(frozen=True)
class SystemSolution:
    """Classification of ``M x = rhs``.

    ``status`` is ``"unique"``, ``"inconsistent"`` or ``"underdetermined"``.
    For consistent systems ``point`` is a particular solution (free variables
    set to zero); ``nullspace`` spans the homogeneous solutions.
    """

    status: str
    point: RVector | None = None
    nullspace: tuple[RVector, ...] = ()

    @property
    def unique(self) -> bool:
        return self.status == "unique"


def solve_linear_system(M: Sequence[Sequence], rhs: Sequence) -> SystemSolution:
    if len(M) != len(rhs):
        raise ValueError("row count of M must equal len(rhs)")
    ncols = len(M[0]) if M else 0
    if any(len(row) != ncols for row in M):
        raise ValueError("ragged matrix")
    rows = [[Q(x) for x in row] + [Q(b)] for row, b in zip(M, rhs)]
    rows, pivots = _rref(rows, ncols)
    rank = len(pivots)
    if any(all(x == 0 for x in row[:ncols]) and row[ncols] != 0 for row in rows[rank:]):
        return SystemSolution("inconsistent")
    point = [ZERO] * ncols
    for i, c in enumerate(pivots):
        point[c] = rows[i][ncols]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(tuple(v))
    status = "unique" if not free else "underdetermined"
    return SystemSolution(status, tuple(point), tuple(basis))


def rank(vectors: Sequence[Sequence]) -> int:
    vectors = [list(map(Q, v)) for v in vectors]
    if not vectors:
        return 0
    _, pivots = _rref(vectors, len(vectors[0]))
    return len(pivots)


def nullspace(M: Sequence[Sequence], ncols: int | None = None) -> tuple[RVector, ...]:
    """Basis of ``{x : M x = 0}``."""
    if not M:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return tuple(tuple(ONE if i == j else ZERO for i in range(ncols)) for j in range(ncols))
    return solve_linear_system(M, [ZERO] * len(M)).nullspace


def affine_rank(points: Sequence[Sequence]) -> int:
    """``1 + rank`` of the differences to the first point.

    ``k`` points are affinely independent exactly when this returns ``k``.
    """
    if not points:
        raise ValueError("affine_rank of an empty point set")
    dim = len(points[0])
    if any(len(p) != dim for p in points):
        raise ValueError("points of unequal dimension")
    base = points[0]
    return 1 + rank([sub(p, base) for p in points[1:]]) if len(points) > 1 else 1


def affine_hull_equations(points: Sequence[Sequence]) -> tuple[tuple[RVector, Fraction], ...]:
    """Equations ``c·x = d`` cutting out the affine hull of ``points``."""
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    normals = nullspace(diffs, len(base)) if diffs else nullspace([], len(base))
    return tuple((c, dot(c, base)) for c in normals)
