"""Exact decision procedures for finite and segment transversals, and MaxHyp.

A finite family has an m-flat meeting every set exactly when some choice of
one point per set has affine rank at most m.  The search is depth-first over
the sets in index order, so the first certificate found is the
lexicographically smallest choice vector.

Two exact pruning rules are used, depending on the family:

* *rank mode*: the linear rank of the homogenized chosen points may never
  exceed m + 1;
* *equation mode*: every affine dependence of a choice lies in the space K of
  weight vectors annihilated by all functionals that are constant on each
  set.  When dim K equals the number of dependences a certificate needs,
  K is exactly the dependence space of every certificate, so the search
  reduces to the linear equations ``sum_j kappa_j x_j = 0`` for a basis of
  K, checked coordinate by coordinate against the sums reachable from the
  remaining sets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from ._parallel import first_hit
from .errors import BadTarget, DimensionMismatch, EmptyInput
from .exactmath import (Flat, Hyperplane, PointFamily, affine_rank, as_point,
                        flat_from_points, hyperplane_through, null_space,
                        _primitive)
from .lpcore import EQ, GE, LE, Constraint, Counter, Infeasible, LPInstance, lp_solve

SUMSET_CAP = 4096


@dataclass(frozen=True)
class TransversalCertificate:
    """One chosen point index per set and a flat through the chosen points."""

    chosen: tuple
    flat: Flat

    def points(self, family: PointFamily):
        return [family.sets[i][j] for i, j in enumerate(self.chosen)]


@dataclass(frozen=True)
class SegmentFamily:
    dimension: int
    segments: tuple

    def __post_init__(self):
        segs = tuple((as_point(p), as_point(q)) for p, q in self.segments)
        for p, q in segs:
            if len(p) != self.dimension or len(q) != self.dimension:
                raise DimensionMismatch("segment endpoint of wrong dimension")
        object.__setattr__(self, "segments", segs)


@dataclass(frozen=True)
class MaxHypReport:
    hyperplane: Hyperplane
    count: int


def segment_meets(h: Hyperplane, p, q) -> bool:
    sp, sq = h.side(p), h.side(q)
    return (sp <= 0 <= sq) or (sq <= 0 <= sp)


# -- finite families ---------------------------------------------------------

def _integer_sets(family: PointFamily):
    """Points scaled by one common denominator (affine dependences survive)."""
    den = 1
    for p in family.points():
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [[[int(x * den) for x in p] for p in s] for s in family.sets]


def _dependence_space(isets, D):
    """Basis of K: weight vectors orthogonal to every set-constant functional."""
    rows = []
    for s in isets:
        first = s[0]
        for p in s[1:]:
            diff = [a - b for a, b in zip(p, first)] + [0]
            if any(diff):
                rows.append(diff)
    functionals = null_space(rows, D + 1) if rows else [
        [int(i == j) for j in range(D + 1)] for i in range(D + 1)]
    constants = [[sum(c * x for c, x in zip(psi, s[0])) + psi[D] for s in isets]
                 for psi in functionals]
    return null_space(constants, len(isets))


class _EquationSearch:
    """DFS for choices satisfying ``sum_j kappa_j x_j = 0`` for each kappa."""

    def __init__(self, isets, D, kernel):
        self.sets = isets
        k = len(isets)
        self.rows = []      # per constraint: values[j][p]
        self.impossible = False
        for kappa in kernel:
            for c in range(D):
                vals = [[kappa[j] * p[c] for p in s] for j, s in enumerate(isets)]
                if all(len(set(v)) == 1 for v in vals):
                    # no freedom left: the fixed total must already vanish
                    if sum(v[0] for v in vals):
                        self.impossible = True
                    continue
                self.rows.append(vals)
        # suffix reachable sums, or None when too many; plus interval bounds
        self.reach = []
        self.bounds = []
        for vals in self.rows:
            reach = [None] * (k + 1)
            lo = [0] * (k + 1)
            hi = [0] * (k + 1)
            reach[k] = {0}
            for j in range(k - 1, -1, -1):
                lo[j] = lo[j + 1] + min(vals[j])
                hi[j] = hi[j + 1] + max(vals[j])
                nxt = reach[j + 1]
                if nxt is not None and len(nxt) * len(set(vals[j])) <= SUMSET_CAP:
                    reach[j] = {a + b for a in set(vals[j]) for b in nxt}
            self.reach.append(reach)
            self.bounds.append((lo, hi))

    def feasible(self, depth, partial) -> bool:
        for q, total in enumerate(partial):
            r = self.reach[q][depth]
            if r is not None:
                if -total not in r:
                    return False
            else:
                lo, hi = self.bounds[q]
                if not lo[depth] <= -total <= hi[depth]:
                    return False
        return True

    def search(self, prefix, counter: Counter):
        if self.impossible:
            return None
        partial = [0] * len(self.rows)
        for j, p in enumerate(prefix):
            for q, vals in enumerate(self.rows):
                partial[q] += vals[j][p]
        if not self.feasible(len(prefix), partial):
            return None
        choice = list(prefix)
        return self._dfs(len(prefix), partial, choice, counter)

    def _dfs(self, depth, partial, choice, counter):
        if depth == len(self.sets):
            return tuple(choice)
        rows = self.rows
        for p in range(len(self.sets[depth])):
            counter.candidates += 1
            nxt = [t + vals[depth][p] for t, vals in zip(partial, rows)]
            if self.feasible(depth + 1, nxt):
                choice.append(p)
                found = self._dfs(depth + 1, nxt, choice, counter)
                if found is not None:
                    return found
                choice.pop()
        return None


class _RankSearch:
    """DFS keeping the linear rank of homogenized chosen points <= m + 1."""

    def __init__(self, isets, m: int):
        self.vectors = [[_primitive(p + [1]) for p in s] for s in isets]
        self.limit = m + 1
        self.k = len(isets)

    @staticmethod
    def _reduce(echelon, v):
        for c, r in echelon:
            if v[c]:
                f, g = r[c], v[c]
                v = _primitive([f * x - g * y for x, y in zip(v, r)])
        return v

    def search(self, prefix, counter: Counter):
        echelon = []
        for j, p in enumerate(prefix):
            v = self._reduce(echelon, self.vectors[j][p])
            if any(v):
                echelon.append((next(i for i, x in enumerate(v) if x), v))
        if len(echelon) > self.limit:
            return None
        return self._dfs(len(prefix), echelon, list(prefix), counter)

    def _dfs(self, depth, echelon, choice, counter):
        if len(echelon) + (self.k - depth) <= self.limit:
            return tuple(choice) + (0,) * (self.k - depth)
        for p, vec in enumerate(self.vectors[depth]):
            counter.candidates += 1
            v = self._reduce(echelon, vec)
            if any(v):
                if len(echelon) == self.limit:
                    continue
                grown = echelon + [(next(i for i, x in enumerate(v) if x), v)]
            else:
                grown = echelon
            choice.append(p)
            found = self._dfs(depth + 1, grown, choice, counter)
            if found is not None:
                return found
            choice.pop()
        return None


def _make_search(family: PointFamily, m: int):
    isets = _integer_sets(family)
    needed = family.k - 1 - m
    kernel = _dependence_space(isets, family.dimension)
    if len(kernel) < needed:
        return None
    if len(kernel) == needed:
        return _EquationSearch(isets, family.dimension, kernel)
    return _RankSearch(isets, m)


def _search_task(args):
    search, prefix = args
    counter = Counter()
    return search.search(prefix, counter), counter


def finite_flat_transversal(family: PointFamily, m: int, workers: int = 1,
                            counter: Optional[Counter] = None
                            ) -> Optional[TransversalCertificate]:
    """Lexicographically first choice of one point per set lying on an m-flat."""
    if m < 0 or m > family.dimension:
        raise BadTarget(f"target {m} outside 0..{family.dimension}")
    if any(not s for s in family.sets):
        return None
    k = family.k
    if k - 1 <= m:
        chosen = (0,) * k
    else:
        search = _make_search(family, m)
        if search is None:
            return None
        # branch on the first set with a real choice; earlier sets are forced
        split = next((j for j, s in enumerate(family.sets) if len(s) > 1), k - 1)
        tasks = [(search, (0,) * split + (p,)) for p in range(len(family.sets[split]))]
        _, chosen = first_hit(_search_task, tasks, workers, counter)
        if chosen is None:
            return None
    pts = [family.sets[i][j] for i, j in enumerate(chosen)]
    return TransversalCertificate(tuple(chosen), flat_from_points(pts))


def hyperplane_transversal_points(family: PointFamily, workers: int = 1,
                                  counter: Optional[Counter] = None):
    return finite_flat_transversal(family, family.dimension - 1, workers, counter)


# -- segment families ----------------------------------------------------------

def _side_row(point, sign):
    """Row of ``sign * (a . point - a0) >= 0`` over variables (a, a0)."""
    return [sign * x for x in point] + [-sign]


class _SegmentSearch:
    def __init__(self, segs: SegmentFamily):
        self.D = segs.dimension
        # integer endpoints: scaling points by den scales a0 by den
        self.den = 1
        for p, q in segs.segments:
            for x in p + q:
                self.den = self.den * x.denominator // math.gcd(self.den, x.denominator)
        scaled = [(tuple(int(x * self.den) for x in p), tuple(int(x * self.den) for x in q))
                  for p, q in segs.segments]
        self.fixed = []
        self.free = []
        for p, q in scaled:
            if p == q:
                self.fixed.append(Constraint(_side_row(p, 1), EQ, 0))
            else:
                self.free.append((p, q))
        # parametrize the equalities once: (a, a0) = sum_t y_t z_t
        self.Z = null_space([c.coeffs for c in self.fixed], self.D + 1) if self.fixed else [
            [int(i == j) for j in range(self.D + 1)] for i in range(self.D + 1)]
        self._reduced = {}

    def _reduce(self, c: Constraint):
        row = tuple(sum(x * z[j] for j, x in enumerate(c.coeffs)) for z in self.Z)
        return Constraint(row, c.relation, c.rhs)

    def reduced_orientation(self, i, bit):
        key = (i, bit)
        if key not in self._reduced:
            self._reduced[key] = [self._reduce(c) for c in self.orientation(i, bit)]
        return self._reduced[key]

    def orientation(self, i, bit):
        p, q = self.free[i]
        sp, sq = (1, -1) if bit == 0 else (-1, 1)
        return [Constraint(_side_row(p, sp), GE, 0), Constraint(_side_row(q, sq), GE, 0)]

    def constraints(self, bits):
        cons = list(self.fixed)
        for i, b in enumerate(bits):
            cons.extend(self.orientation(i, b))
        return cons

    def _lift(self, y):
        return tuple(sum(t * z[j] for t, z in zip(y, self.Z)) for j in range(self.D + 1))

    def solve(self, bits, counter):
        """A feasible (a, a0) with a != 0 for the pattern, or None.

        Work in the coordinates y of the equality solution space, where the
        pattern is a cone {y : G y >= 0}.  One LP (maximize sum t subject to
        G y >= t, 0 <= t <= 1) finds a relative-interior point y* and the
        implicit equalities E (rows with t = 0).  The cone spans exactly
        null(G_E), so it contains a point with a != 0 iff some vector of
        null(G_E) has a != 0; stepping from y* along such a vector stays in
        the cone.
        """
        if not self.Z:
            return None
        G = [c.coeffs for i, b in enumerate(bits) for c in self.reduced_orientation(i, b)]
        r, m = len(self.Z), len(G)
        if m:
            cons = []
            for i, row in enumerate(G):
                cons.append(Constraint(tuple(row) + tuple(-int(i == j) for j in range(m)), GE, 0))
                cons.append(Constraint((0,) * r + tuple(int(i == j) for j in range(m)), LE, 1))
            counter.lps += 1
            out = lp_solve(LPInstance(r + m, tuple(cons), objective=(0,) * r + (1,) * m,
                                      nonnegative=frozenset(range(r, r + m))))
            x = out.assignment
            ystar, t = x[:r], x[r:]
            implicit = [G[i] for i in range(m) if t[i] == 0]
        else:
            ystar, implicit = (0,) * r, []
        lifted = self._lift(ystar)
        if any(lifted[:self.D]):
            return lifted
        span = null_space(implicit, r) if implicit else [
            [int(i == j) for j in range(r)] for i in range(r)]
        v = next((v for v in span if any(self._lift(v)[:self.D])), None)
        if v is None:
            return None
        eps = 1
        for row in G:
            gv = sum(a * b for a, b in zip(row, v))
            if gv < 0:
                gy = sum(a * b for a, b in zip(row, ystar))
                eps = min(eps, gy / -gv)
        if eps == 0:
            return None
        return self._lift([a + eps * b for a, b in zip(ystar, v)])

    def solve_best(self, bits, counter):
        """Most central hyperplane for a feasible pattern.

        Each normalization a_j = +1 / -1 is solved with the box |a_i| <= 1
        while maximizing the common slack t of the orientation inequalities
        (0 <= t <= 1).  The largest t wins, ties by canonical key.
        """
        n = self.D + 2
        cons = []
        for c in self.fixed:
            cons.append(Constraint(c.coeffs + (0,), EQ, 0))
        for i, b in enumerate(bits):
            for c in self.orientation(i, b):
                cons.append(Constraint(c.coeffs + (-1,), GE, 0))
        for i in range(self.D):
            unit = [0] * n
            unit[i] = 1
            cons.append(Constraint(unit, LE, 1))
            cons.append(Constraint(unit, GE, -1))
        cap = [0] * n
        cap[-1] = 1
        cons.append(Constraint(cap, LE, 1))
        cons.append(Constraint(cap, GE, 0))
        best = None
        for j in range(self.D):
            for sign in (1, -1):
                unit = [0] * n
                unit[j] = 1
                counter.lps += 1
                out = lp_solve(LPInstance(n, tuple(cons + [Constraint(unit, EQ, sign)]),
                                          objective=tuple(cap)))
                if isinstance(out, Infeasible):
                    continue
                x = out.assignment
                h = Hyperplane(x[:self.D], x[self.D] / self.den)
                rank = (-x[-1], h.key())
                if best is None or rank < best[0]:
                    best = (rank, h)
        return None if best is None else best[1]

    @staticmethod
    def _satisfies(x, cons):
        return all(c.holds(x) for c in cons)

    def dfs(self, bits, witness, counter):
        if len(bits) == len(self.free):
            counter.candidates += 1
            return self.solve_best(bits, counter)
        for b in (0, 1):
            child = bits + (b,)
            w = witness
            if w is None or not self._satisfies(w, self.orientation(len(bits), b)):
                w = self.solve(child, counter)
            if w is None:
                continue
            found = self.dfs(child, w, counter)
            if found is not None:
                return found
        return None


def _segment_task(args):
    segs, bits = args
    counter = Counter()
    search = _SegmentSearch(segs)
    w = search.solve(bits, counter)
    found = None if w is None else search.dfs(bits, w, counter)
    return found, counter


def segment_hyperplane_transversal(segs: SegmentFamily, workers: int = 1,
                                   counter: Optional[Counter] = None
                                   ) -> Optional[Hyperplane]:
    """A hyperplane meeting every (closed) segment, or None.

    Orientation patterns are enumerated in increasing binary order (first
    nondegenerate segment most significant).  For the first feasible pattern
    every normalization a_j = +1, a_j = -1 is solved and the hyperplane with
    the smallest canonical key is returned.
    """
    if not segs.segments:
        raise EmptyInput("no segments")
    free = sum(1 for p, q in segs.segments if p != q)
    depth = min(2, free)
    tasks = [(segs, tuple((t >> (depth - 1 - i)) & 1 for i in range(depth)))
             for t in range(2 ** depth)]
    _, h = first_hit(_segment_task, tasks, workers, counter)
    return h


# -- MaxHyp ------------------------------------------------------------------

def _scaled_integer_points(points):
    den = 1
    for p in points:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    return [[int(x * den) for x in p] for p in points]


def _normal_of(diffs, D):
    """Integer normal of D-1 integer difference vectors (zero when dependent)."""
    basis = null_space(diffs, D)
    return basis[0] if len(basis) == 1 else None


_NUMPY_BOUND = 10 ** 4


def _candidates_numpy(ints, D):
    """All D-subsets with their integer normals, offsets and counts (D <= 3)."""
    P = np.array(ints, dtype=np.int64)
    k = len(ints)
    idx = np.array(list(combinations(range(k), D)), dtype=np.int64)
    if D == 1:
        N = np.ones((len(idx), 1), dtype=np.int64)
    elif D == 2:
        d = P[idx[:, 1]] - P[idx[:, 0]]
        N = np.stack([d[:, 1], -d[:, 0]], axis=1)
    else:
        N = np.cross(P[idx[:, 1]] - P[idx[:, 0]], P[idx[:, 2]] - P[idx[:, 0]])
    offsets = np.einsum("ij,ij->i", N, P[idx[:, 0]])
    valid = np.any(N != 0, axis=1)
    counts = np.zeros(len(idx), dtype=np.int64)
    step = max(1, 2_000_000 // max(k, 1))
    for s in range(0, len(idx), step):
        counts[s:s + step] = (P @ N[s:s + step].T == offsets[s:s + step]).sum(axis=0)
    counts[~valid] = -1
    return idx, counts


def maxhyp_exact(points, dimension: int, counter: Optional[Counter] = None) -> MaxHypReport:
    """Maximum number of points (with multiplicity) on one hyperplane.

    Ties go to the lexicographically smallest canonical hyperplane.
    """
    if not points:
        raise EmptyInput("maxhyp of an empty point list")
    points = [as_point(p) for p in points]
    if affine_rank(points) <= dimension - 1:
        return MaxHypReport(hyperplane_through(points, dimension), len(points))
    ints = _scaled_integer_points(points)
    D = dimension
    best_count = -1
    best = []
    if D <= 3 and max(abs(x) for p in ints for x in p) <= _NUMPY_BOUND:
        idx, counts = _candidates_numpy(ints, D)
        if counter is not None:
            counter.candidates += len(idx)
        best_count = int(counts.max())
        best = [tuple(int(i) for i in row) for row in idx[counts == best_count]]
    else:
        seen = {}
        for sub in combinations(range(len(points)), D):
            if counter is not None:
                counter.candidates += 1
            base = ints[sub[0]]
            normal = _normal_of([[a - b for a, b in zip(ints[i], base)] for i in sub[1:]], D)
            if normal is None:
                continue
            off = sum(a * b for a, b in zip(normal, base))
            key = (tuple(normal), off) if next(x for x in normal if x) > 0 else (
                tuple(-x for x in normal), -off)
            if key not in seen:
                seen[key] = sum(1 for p in ints if sum(a * b for a, b in zip(normal, p)) == off)
            c = seen[key]
            if c > best_count:
                best_count, best = c, [sub]
            elif c == best_count:
                best.append(sub)
    planes = {hyperplane_through([points[i] for i in sub], D) for sub in best}
    plane = min(planes, key=Hyperplane.key)
    count = plane.count(points)
    assert count == best_count
    return MaxHypReport(plane, count)
