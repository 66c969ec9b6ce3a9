"""Exact linear programming and the convex-hull subroutines built on it.

The solver is a dense two-phase tableau simplex with Bland's rule, so pivot
sequences (and therefore returned vertices and certificates) are fully
deterministic.  Pivoting runs on ``gmpy2.mpq``; everything crossing the
module boundary is a :class:`fractions.Fraction`.

Variables are free unless listed in ``LPInstance.nonnegative``.  Infeasible
instances carry a Farkas certificate read off the phase-one duals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from gmpy2 import mpq

from .errors import DimensionMismatch, EmptyInput, MalformedInstance
from .exactmath import Flat, Point, as_point, combination, dot

LE, EQ, GE = "<=", "=", ">="

_ZERO = mpq(0)
_ONE = mpq(1)


def _to_mpq(x: Fraction):
    return mpq(x.numerator, x.denominator)


def _exact_row(row) -> tuple:
    """Keep ints and fractions as they are; parse anything else exactly."""
    return tuple(c if type(c) is int or type(c) is Fraction else Fraction(c) for c in row)


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple
    relation: str
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _exact_row(self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))
        if self.relation not in (LE, EQ, GE):
            raise MalformedInstance(f"unknown relation {self.relation!r}")

    def holds(self, x) -> bool:
        lhs = dot(self.coeffs, x)
        if self.relation == LE:
            return lhs <= self.rhs
        if self.relation == GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass(frozen=True)
class LPInstance:
    variables: int
    constraints: tuple
    objective: Optional[tuple] = None
    sense: str = "max"
    nonnegative: frozenset = frozenset()

    def __post_init__(self):
        cons = tuple(c if isinstance(c, Constraint) else Constraint(*c)
                     for c in self.constraints)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "nonnegative", frozenset(self.nonnegative))
        if self.variables < 0:
            raise MalformedInstance("negative variable count")
        for c in cons:
            if len(c.coeffs) != self.variables:
                raise MalformedInstance(
                    f"constraint row has {len(c.coeffs)} entries, expected {self.variables}")
        if self.objective is not None:
            obj = as_point(self.objective)
            if len(obj) != self.variables:
                raise MalformedInstance("objective length differs from variable count")
            object.__setattr__(self, "objective", obj)
        if self.sense not in ("max", "min"):
            raise MalformedInstance(f"unknown sense {self.sense!r}")
        if any(not 0 <= j < self.variables for j in self.nonnegative):
            raise MalformedInstance("nonnegative index out of range")

    def satisfied_by(self, x) -> bool:
        if any(x[j] < 0 for j in self.nonnegative):
            return False
        return all(c.holds(x) for c in self.constraints)


@dataclass(frozen=True)
class FarkasCertificate:
    """Multipliers on the constraints, each read in ``<=`` orientation.

    Inequality multipliers are nonnegative, equality multipliers are free.
    The combination has zero coefficients on free variables, nonnegative
    coefficients on nonnegative variables, and right-hand side -1.
    """

    multipliers: tuple

    def combination(self, instance: LPInstance):
        """Return ``(coefficients, rhs)`` of the combined inequality."""
        coeffs = [Fraction(0)] * instance.variables
        rhs = Fraction(0)
        for y, c in zip(self.multipliers, instance.constraints):
            sign = -1 if c.relation == GE else 1
            for j, a in enumerate(c.coeffs):
                coeffs[j] += sign * y * a
            rhs += sign * y * c.rhs
        return tuple(coeffs), rhs

    def verify(self, instance: LPInstance) -> bool:
        if len(self.multipliers) != len(instance.constraints):
            return False
        for y, c in zip(self.multipliers, instance.constraints):
            if c.relation != EQ and y < 0:
                return False
        coeffs, rhs = self.combination(instance)
        for j, a in enumerate(coeffs):
            if a < 0 or (a != 0 and j not in instance.nonnegative):
                return False
        return rhs < 0


@dataclass(frozen=True)
class Feasible:
    assignment: tuple


@dataclass(frozen=True)
class Optimal:
    assignment: tuple
    value: Fraction


@dataclass(frozen=True)
class Infeasible:
    certificate: FarkasCertificate


@dataclass(frozen=True)
class Unbounded:
    assignment: tuple
    ray: tuple


LPOutcome = Union[Feasible, Optimal, Infeasible, Unbounded]


class _Tableau:
    """Standard-form tableau: columns are split free variables, nonnegative
    variables, slacks, then one artificial per row; last entry is the rhs."""

    def __init__(self, instance: LPInstance):
        self.instance = instance
        self.var_cols = []
        ncols = 0
        for j in range(instance.variables):
            if j in instance.nonnegative:
                self.var_cols.append(((ncols, 1),))
                ncols += 1
            else:
                self.var_cols.append(((ncols, 1), (ncols + 1, -1)))
                ncols += 2
        self.slack = {}
        for i, c in enumerate(instance.constraints):
            if c.relation != EQ:
                self.slack[i] = ncols
                ncols += 1
        m = len(instance.constraints)
        self.art0 = ncols
        self.width = ncols + m
        self.rows = []
        self.signs = []
        for i, c in enumerate(instance.constraints):
            row = [_ZERO] * (self.width + 1)
            for j, a in enumerate(c.coeffs):
                if a:
                    q = _to_mpq(a)
                    for col, sg in self.var_cols[j]:
                        row[col] = q if sg > 0 else -q
            if i in self.slack:
                row[self.slack[i]] = _ONE if c.relation == LE else -_ONE
            row[self.width] = _to_mpq(c.rhs)
            sign = 1
            if c.rhs < 0 or (c.rhs == 0 and c.relation == GE):
                sign = -1
                row = [-x for x in row]
            row[self.art0 + i] = _ONE
            self.rows.append(row)
            self.signs.append(sign)
        # a slack with coefficient +1 after the sign flip starts in the basis;
        # only the remaining rows need a (costed) artificial
        self.basis = []
        self.cost = []
        for i, row in enumerate(self.rows):
            col = self.slack.get(i)
            if col is not None and row[col] == 1:
                self.basis.append(col)
                self.cost.append(_ZERO)
            else:
                self.basis.append(self.art0 + i)
                self.cost.append(_ONE)
        self.obj = None

    def pivot(self, r: int, c: int):
        prow = self.rows[r]
        piv = prow[c]
        if piv != 1:
            prow = [x / piv for x in prow]
            self.rows[r] = prow
        nz = [j for j, x in enumerate(prow) if x]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[c]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = self.obj[c]
        if f:
            obj = self.obj
            for j in nz:
                obj[j] -= f * prow[j]
        self.basis[r] = c

    def run(self, allowed: int):
        """Minimize the current objective row over columns ``< allowed``.

        Returns None at optimality or the entering column of an unbounded ray.
        """
        rhs = len(self.rows[0]) - 1 if self.rows else 0
        while True:
            obj = self.obj
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = row[rhs] / a
                    if best is None or ratio < best[0] or (
                            ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)

    def values(self, ncols: int) -> list:
        z = [_ZERO] * ncols
        rhs = len(self.rows[0]) - 1 if self.rows else 0
        for i, b in enumerate(self.basis):
            if b < ncols:
                z[b] = self.rows[i][rhs]
        return z

    def to_vars(self, z) -> tuple:
        return tuple(_to_fraction(sum((sg * z[col] for col, sg in cols), _ZERO))
                     for cols in self.var_cols)


def lp_solve(instance: LPInstance) -> LPOutcome:
    """Solve an LP exactly.

    Without an objective the outcome is :class:`Feasible` or
    :class:`Infeasible`; with one it is :class:`Optimal`, :class:`Unbounded`
    or :class:`Infeasible`.
    """
    if not isinstance(instance, LPInstance):
        raise MalformedInstance("lp_solve expects an LPInstance")
    tab = _Tableau(instance)
    m = len(tab.rows)
    width = tab.width
    # phase one: minimize the sum of artificials
    tab.obj = [_ZERO] * (width + 1)
    for row, cost in zip(tab.rows, tab.cost):
        if not cost:
            continue
        for j in range(tab.art0):
            if row[j]:
                tab.obj[j] -= row[j]
        tab.obj[width] -= row[width]
    tab.run(tab.art0)
    if tab.obj[width] != 0:
        return Infeasible(_farkas(tab))

    # drive zero-level artificials out of the basis, drop redundant rows
    keep = []
    for i in range(m):
        if tab.basis[i] >= tab.art0:
            col = next((j for j in range(tab.art0) if tab.rows[i][j]), None)
            if col is None:
                continue
            tab.pivot(i, col)
        keep.append(i)
    tab.rows = [tab.rows[i][:tab.art0] + [tab.rows[i][width]] for i in keep]
    tab.basis = [tab.basis[i] for i in keep]

    if instance.objective is None:
        return Feasible(tab.to_vars(tab.values(tab.art0)))

    sgn = -1 if instance.sense == "max" else 1
    cost = [_ZERO] * (tab.art0 + 1)
    for j, c in enumerate(instance.objective):
        if c:
            q = _to_mpq(c) * sgn
            for col, sg in tab.var_cols[j]:
                cost[col] = q if sg > 0 else -q
    obj = cost[:]
    for i, b in enumerate(tab.basis):
        cb = cost[b]
        if cb:
            row = tab.rows[i]
            for j in range(tab.art0 + 1):
                if row[j]:
                    obj[j] -= cb * row[j]
    tab.obj = obj
    enter = tab.run(tab.art0)
    z = tab.values(tab.art0)
    x = tab.to_vars(z)
    if enter is not None:
        r = [_ZERO] * tab.art0
        r[enter] = _ONE
        for i, b in enumerate(tab.basis):
            r[b] = -tab.rows[i][enter]
        return Unbounded(x, tab.to_vars(r))
    return Optimal(x, dot(instance.objective, x))


def _farkas(tab: _Tableau) -> FarkasCertificate:
    # phase-one duals: y_i = cost_i - reduced cost of artificial i
    instance = tab.instance
    mult = []
    rhs = _ZERO
    for i, c in enumerate(instance.constraints):
        y = tab.cost[i] - tab.obj[tab.art0 + i]
        u = -tab.signs[i] * y
        u = -u if c.relation == GE else u
        mult.append(u)
        if c.rhs:
            rhs += (-u if c.relation == GE else u) * _to_mpq(c.rhs)
    return FarkasCertificate(tuple(_to_fraction(q / -rhs) for q in mult))


# -- convex hull subroutines ------------------------------------------------

@dataclass(frozen=True)
class Intersecting:
    point: Point
    weights_a: tuple
    weights_b: tuple


@dataclass(frozen=True)
class Separated:
    """Oriented separator: ``normal . p - offset >= margin`` on side A and
    ``<= -margin`` on side B, with every normal entry in [-1, 1]."""

    normal: Point
    offset: Fraction
    margin: Fraction

    @property
    def hyperplane(self):
        from .exactmath import Hyperplane
        return Hyperplane(self.normal, self.offset)


SeparationResult = Union[Intersecting, Separated]


@dataclass
class Counter:
    """Work counters threaded through the search routines."""

    candidates: int = 0
    lps: int = 0

    def merge(self, other: "Counter"):
        self.candidates += other.candidates
        self.lps += other.lps


def _check_sides(a, b):
    if not a or not b:
        raise EmptyInput("both point lists must be nonempty")
    a = [as_point(p) for p in a]
    b = [as_point(p) for p in b]
    dimension = len(a[0])
    for p in a + b:
        if len(p) != dimension:
            raise DimensionMismatch("points of different dimensions")
    return a, b, dimension


def hulls_intersect(a, b, counter: Optional[Counter] = None) -> SeparationResult:
    """Decide whether conv(a) and conv(b) meet.

    On intersection, return a common point with convex weights on both
    sides.  Otherwise return the max-margin separator under the box
    normalization ``-1 <= normal_j <= 1``.
    """
    a, b, dimension = _check_sides(a, b)
    na, nb = len(a), len(b)
    cons = [Constraint([1] * na + [0] * nb, EQ, 1),
            Constraint([0] * na + [1] * nb, EQ, 1)]
    for c in range(dimension):
        cons.append(Constraint([p[c] for p in a] + [-q[c] for q in b], EQ, 0))
    lp = LPInstance(na + nb, tuple(cons), nonnegative=frozenset(range(na + nb)))
    if counter is not None:
        counter.lps += 1
    out = lp_solve(lp)
    if isinstance(out, Feasible):
        wa = out.assignment[:na]
        wb = out.assignment[na:]
        return Intersecting(combination(wa, a, dimension), wa, wb)

    # variables: normal (dimension), offset, margin
    n = dimension + 2
    cons = []
    for p in a:
        cons.append(Constraint(list(p) + [-1, -1], GE, 0))
    for q in b:
        cons.append(Constraint(list(q) + [-1, 1], LE, 0))
    for j in range(dimension):
        unit = [0] * n
        unit[j] = 1
        cons.append(Constraint(unit, LE, 1))
        cons.append(Constraint(unit, GE, -1))
    objective = [0] * (n - 1) + [1]
    if counter is not None:
        counter.lps += 1
    out = lp_solve(LPInstance(n, tuple(cons), objective, "max"))
    assert isinstance(out, Optimal) and out.value > 0, out
    x = out.assignment
    return Separated(x[:dimension], x[dimension], x[dimension + 1])


def flat_hull_point(flat: Flat, s, counter: Optional[Counter] = None):
    """``(point, weights)`` for a point of ``flat`` inside conv(s), or None."""
    if not s:
        raise EmptyInput("empty point set")
    s = [as_point(p) for p in s]
    for p in s:
        if len(p) != flat.dimension:
            raise DimensionMismatch("point and flat dimensions differ")
    if flat.dim == flat.dimension:
        weights = (Fraction(1),) + (Fraction(0),) * (len(s) - 1)
        return s[0], weights
    cons = [Constraint([1] * len(s), EQ, 1)]
    for normal, offset in flat.equations():
        cons.append(Constraint([dot(normal, p) for p in s], EQ, offset))
    if counter is not None:
        counter.lps += 1
    out = lp_solve(LPInstance(len(s), tuple(cons), nonnegative=frozenset(range(len(s)))))
    if isinstance(out, Infeasible):
        return None
    w = out.assignment
    return combination(w, s, flat.dimension), w


def flat_meets_hull(flat: Flat, s, counter: Optional[Counter] = None) -> Optional[Point]:
    """A point of ``flat`` inside conv(s), or None when they are disjoint."""
    hit = flat_hull_point(flat, s, counter)
    return None if hit is None else hit[0]
