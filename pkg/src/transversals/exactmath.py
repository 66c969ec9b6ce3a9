"""Exact rational linear algebra on points, flats and hyperplanes.

All coordinates are :class:`fractions.Fraction`.  Internally, elimination
runs on rows cleared to primitive integer vectors (row scaling never changes
rank, span or null space), which keeps the arithmetic exact and fast.
Pivots are always taken from the smallest available row index so that every
derived object (dependence weights, flat bases, hyperplanes) is reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, EmptyInput, RankTooHigh, TransversalError

Point = tuple  # tuple[Fraction, ...]


def as_point(coords) -> Point:
    """Convert an iterable of ints, strings ("3/4") or fractions to a point."""
    return tuple(c if type(c) is Fraction else Fraction(c) for c in coords)


def dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u, v) -> Point:
    return tuple(a - b for a, b in zip(u, v))


def add(u, v) -> Point:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u) -> Point:
    return tuple(c * a for a in u)


def combination(weights, points, dimension) -> Point:
    """Return ``sum(w * p)`` over matching weights and points."""
    acc = [Fraction(0)] * dimension
    for w, p in zip(weights, points):
        if w:
            for i, x in enumerate(p):
                acc[i] += w * x
    return tuple(acc)


def _check_dims(points, dimension=None) -> int:
    if dimension is None:
        dimension = len(points[0])
    for p in points:
        if len(p) != dimension:
            raise DimensionMismatch(
                f"expected {dimension} coordinates, got {len(p)}")
    return dimension


# -- integer row elimination ---------------------------------------------

def integer_row(row) -> list:
    """Scale a rational row to a primitive integer row with the same span."""
    den = 1
    for x in row:
        d = x.denominator if isinstance(x, Fraction) else 1
        if d != 1:
            den = den * d // math.gcd(den, d)
    out = [int(x * den) for x in row] if den != 1 else [int(x) for x in row]
    return _primitive(out)


def _primitive(row: list) -> list:
    g = math.gcd(*row)
    if g > 1:
        row = [x // g for x in row]
    return row


def reduce_rows(rows: Sequence[Sequence[int]], ncols: int):
    """Fully reduce integer rows.

    Returns ``(reduced, pivots)`` where ``reduced`` holds the nonzero rows of
    a reduced echelon form scaled to primitive integers with positive
    pivots, and ``pivots[i]`` is the pivot column of ``reduced[i]``.
    """
    work = [list(r) for r in rows]
    pivots = []
    top = 0
    for c in range(ncols):
        p = top
        while p < len(work) and not work[p][c]:
            p += 1
        if p == len(work):
            continue
        work[top], work[p] = work[p], work[top]
        prow = work[top]
        if prow[c] < 0:
            prow = work[top] = [-x for x in prow]
        f = prow[c]
        for i in range(len(work)):
            g = work[i][c] if i != top else 0
            if g:
                work[i] = _primitive([f * x - g * y for x, y in zip(work[i], prow)])
        pivots.append(c)
        top += 1
        if top == len(work):
            break
    return work[:top], pivots


def rank(rows) -> int:
    rows = [integer_row(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    return len(reduce_rows(rows, len(rows[0]))[0])


def null_space(rows, ncols: int) -> list:
    """Integer basis of ``{x : row . x = 0 for every row}``.

    One vector per free column, in increasing free-column order.
    """
    int_rows = [r for r in (integer_row(r) for r in rows) if any(r)]
    reduced, pivots = reduce_rows(int_rows, ncols) if int_rows else ([], [])
    lead = 1
    for r, c in zip(reduced, pivots):
        lead = lead * r[c] // math.gcd(lead, r[c])
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [0] * ncols
        v[f] = lead
        for r, c in zip(reduced, pivots):
            if r[f]:
                v[c] = -r[f] * (lead // r[c])
        basis.append(_primitive(v))
    return basis


def rref(rows) -> list:
    """Reduced row echelon form (pivots equal to 1) of rational rows."""
    int_rows = [r for r in (integer_row(r) for r in rows) if any(r)]
    if not int_rows:
        return []
    reduced, pivots = reduce_rows(int_rows, len(int_rows[0]))
    return [tuple(Fraction(x, r[c]) for x in r) for r, c in zip(reduced, pivots)]


def solve(matrix, rhs) -> Optional[Point]:
    """One exact solution of ``matrix @ x = rhs`` (free variables zero), or None."""
    ncols = len(matrix[0]) if matrix else 0
    rows = [integer_row(list(r) + [b]) for r, b in zip(matrix, rhs)]
    rows = [r for r in rows if any(r)]
    if not rows:
        return tuple(Fraction(0) for _ in range(ncols))
    reduced, pivots = reduce_rows(rows, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for r, c in zip(reduced, pivots):
        x[c] = Fraction(r[ncols], r[c])
    return tuple(x)


# -- domain types ----------------------------------------------------------

@dataclass(frozen=True)
class PointFamily:
    """Ambient dimension plus an ordered list of finite point sets."""

    dimension: int
    sets: tuple

    def __post_init__(self):
        if self.dimension < 1:
            raise DimensionMismatch("dimension must be at least 1")
        sets = tuple(tuple(as_point(p) for p in s) for s in self.sets)
        if not sets:
            raise EmptyInput("a family needs at least one set")
        for s in sets:
            _check_dims(s, self.dimension) if s else None
        object.__setattr__(self, "sets", sets)

    @property
    def k(self) -> int:
        return len(self.sets)

    def points(self):
        """All points, set by set."""
        return [p for s in self.sets for p in s]


@dataclass(frozen=True)
class Flat:
    """Affine subspace ``base + span(basis)``; basis vectors are independent."""

    base: Point
    basis: tuple = ()

    def __post_init__(self):
        base = as_point(self.base)
        basis = tuple(as_point(v) for v in self.basis)
        _check_dims(basis, len(base)) if basis else None
        if rank(basis) != len(basis):
            raise TransversalError("flat basis vectors are linearly dependent")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.base)

    def equations(self):
        """Rows ``n`` (with offsets ``n . base``) whose common zero set is the flat."""
        normals = null_space(self.basis, self.dimension) if self.basis else [
            [int(i == j) for j in range(self.dimension)] for i in range(self.dimension)]
        return [(tuple(Fraction(x) for x in n), dot(n, self.base)) for n in normals]

    def coordinates(self, point) -> Optional[Point]:
        """Coefficients of ``point - base`` in the basis, or None if off the flat."""
        diff = sub(as_point(point), self.base)
        if not self.basis:
            return () if not any(diff) else None
        cols = [[v[i] for v in self.basis] for i in range(self.dimension)]
        return solve(cols, diff)


@dataclass(frozen=True)
class Hyperplane:
    """``{x : normal . x = offset}`` kept with the first nonzero normal entry 1."""

    normal: Point
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        normal = as_point(self.normal)
        offset = Fraction(self.offset)
        lead = next((x for x in normal if x), None)
        if lead is None:
            raise TransversalError("hyperplane normal must be nonzero")
        if lead != 1:
            normal = tuple(x / lead for x in normal)
            offset = offset / lead
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", offset)

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def side(self, point) -> Fraction:
        """Signed residual ``normal . point - offset``."""
        return dot(self.normal, point) - self.offset

    def contains(self, point) -> bool:
        return self.side(point) == 0

    def count(self, points) -> int:
        """Incidences with ``points``, counted with multiplicity."""
        return sum(1 for p in points if self.side(p) == 0)

    def key(self):
        """Sort key for the deterministic hyperplane order."""
        return self.normal + (self.offset,)


# -- operations -------------------------------------------------------------

def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty point list."""
    if not points:
        raise EmptyInput("affine rank of an empty point list")
    points = [as_point(p) for p in points]
    _check_dims(points)
    base = points[0]
    return rank([sub(p, base) for p in points[1:]])


def affine_dependence(points) -> Optional[Point]:
    """Nonzero weights summing to 0 with ``sum(w * p) = 0``, or None.

    The weights come from the first free column of the elimination and are
    scaled so the first nonzero weight is +1.
    """
    if not points:
        raise EmptyInput("affine dependence of an empty point list")
    points = [as_point(p) for p in points]
    dimension = _check_dims(points)
    rows = [[p[i] for p in points] for i in range(dimension)]
    rows.append([1] * len(points))
    kernel = null_space(rows, len(points))
    if not kernel:
        return None
    v = kernel[0]
    lead = next(x for x in v if x)
    return tuple(Fraction(x, lead) for x in v)


def flat_from_points(points) -> Flat:
    """Affine hull of the points: base is the first point, basis is an RREF."""
    if not points:
        raise EmptyInput("flat through an empty point list")
    points = [as_point(p) for p in points]
    _check_dims(points)
    base = points[0]
    return Flat(base, tuple(rref([sub(p, base) for p in points[1:]])))


def flat_contains(flat: Flat, point) -> bool:
    point = as_point(point)
    if len(point) != flat.dimension:
        raise DimensionMismatch(
            f"point has {len(point)} coordinates, flat lives in R^{flat.dimension}")
    diff = sub(point, flat.base)
    if not any(diff):
        return True
    return rank(list(flat.basis) + [diff]) == flat.dim


def hyperplane_through(points, dimension: int) -> Hyperplane:
    """Canonical hyperplane containing all points.

    When the points span less than a hyperplane, the normal is the projection
    of the first coordinate axis (by index) that is not parallel to their
    affine hull onto its orthogonal complement.
    """
    if not points:
        raise EmptyInput("hyperplane through an empty point list")
    points = [as_point(p) for p in points]
    _check_dims(points, dimension)
    base = points[0]
    diffs = rref([sub(p, base) for p in points[1:]])
    if len(diffs) >= dimension:
        raise RankTooHigh(f"points affinely span R^{dimension}")
    normals = [tuple(Fraction(x) for x in n) for n in null_space(diffs, dimension)]
    if len(normals) == 1:
        normal = normals[0]
    else:
        normal = _project_axis(normals, dimension)
    return Hyperplane(normal, dot(normal, base))


def _project_axis(basis, dimension) -> Point:
    """Projection onto span(basis) of the first axis with nonzero projection."""
    gram = [[dot(u, v) for v in basis] for u in basis]
    for j in range(dimension):
        rhs = [u[j] for u in basis]
        if not any(rhs):
            continue
        coeffs = solve(gram, rhs)
        return combination(coeffs, basis, dimension)
    raise AssertionError("orthogonal complement is trivial")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_point(p: Iterable) -> list:
    return [format_rational(Fraction(x)) for x in p]
