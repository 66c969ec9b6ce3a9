"""Instance generators for the hardness reductions, and brute-force oracles.

Every constructor is a pure function from a combinatorial instance to a
point (or segment) family.  The oracles decide the combinatorial source
problems exhaustively and are used to check that the constructors preserve
yes/no answers.  Set and item indices are 0-based; graph vertices keep the
labels 1..n of the input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import (BadK, BudgetExceeded, MalformedInstance, NoOriginSet,
                     PreconditionViolated, SetTooLarge)
from .exactmath import PointFamily, integer_row
from .solvers import SegmentFamily

DEFAULT_BUDGET = 1 << 22


@dataclass(frozen=True)
class SubsetSumInstance:
    a: tuple
    b: int

    def __post_init__(self):
        a = tuple(int(x) for x in self.a)
        if not a:
            raise MalformedInstance("SubsetSum needs at least one number")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b))


@dataclass(frozen=True)
class BinPackingInstance:
    """Weights, bin count and capacity.  ``equal`` asks for exactly full bins."""

    w: tuple
    bins: int
    capacity: int
    equal: bool = False

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if any(x < 1 for x in w):
            raise MalformedInstance("weights must be positive")
        if self.bins < 1 or self.capacity < 1:
            raise MalformedInstance("bins and capacity must be positive")
        object.__setattr__(self, "w", w)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = set()
        for e in self.edges:
            i, j = sorted(e)
            if i == j or not 1 <= i <= self.n or not 1 <= j <= self.n:
                raise MalformedInstance(f"bad edge {tuple(e)}")
            edges.add((i, j))
        object.__setattr__(self, "edges", frozenset(edges))

    def adjacent(self, i, j) -> bool:
        return (min(i, j), max(i, j)) in self.edges


class TriviallyNo:
    """Marker for a bin-packing instance that fails on arithmetic alone."""

    def __init__(self, reason):
        self.reason = reason

    def __repr__(self):
        return f"TriviallyNo({self.reason!r})"


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return v


# -- SubsetSum -> hyperplane transversal ---------------------------------------

def subsetsum_to_hyptrans(inst: SubsetSumInstance) -> PointFamily:
    n = len(inst.a)
    sets = []
    for i, a in enumerate(inst.a):
        e = _unit(n, i)
        sets.append([[a] + e, [0] + e])
    sets.append([[-inst.b] + [-1] * n])
    sets.append([[0] * (n + 1)])
    return PointFamily(n + 1, sets)


# -- bin packing ---------------------------------------------------------------

def binpacking_to_equal(inst: BinPackingInstance):
    total = inst.bins * inst.capacity
    if sum(inst.w) > total:
        return TriviallyNo("total weight exceeds k*b")
    if any(x > inst.capacity for x in inst.w):
        return TriviallyNo("an item exceeds the capacity")
    pad = total - sum(inst.w)
    return BinPackingInstance(inst.w + (1,) * pad, inst.bins, inst.capacity, equal=True)


def equalbin_to_flattrans(inst: BinPackingInstance):
    """(family, target) with kn+2 sets in R^{k+n+kn} and target kn."""
    n, k, b = len(inst.w), inst.bins, inst.capacity
    d = k + n + k * n
    sets = []
    for i in range(n):
        for j in range(k):
            v = [0] * d
            v[j] = inst.w[i]
            v[k + i] = 1
            v[k + n + i * k + j] = 1
            u = [0] * d
            u[k + n + i * k + j] = 1
            sets.append([v, u])
    sets.append([[-b] * k + [-1] * (n + k * n)])
    sets.append([[0] * d])
    return PointFamily(d, sets), k * n


# -- flat transversal -> hyperplane transversal --------------------------------

def _check_origin_last(family: PointFamily):
    last = family.sets[-1]
    if len(last) != 1 or any(last[0]):
        raise PreconditionViolated("the last set must be exactly {0}")


def flattrans_to_hyptrans(family: PointFamily, mode: str = "repaired") -> PointFamily:
    """Hyperplane-transversal instance equivalent to an (m-2)-transversal question.

    The source has m sets with the last one {0}, so an (m-2)-transversal
    exists iff some choice from S_1..S_{m-1} is linearly dependent.

    ``paper`` pads in R^{D+2} with singletons (0,..,0,1,i); three or more of
    these are collinear, so the output is answer-preserving only when no
    padding is needed.  ``repaired`` stays in R^D and pads with g = D+1-m
    singletons q_j, q_j[r] = T_j^r, T_j = N^(D^j) (r, j from 0).  Expanding
    the determinant along the padding columns gives a polynomial in N whose
    coefficients are the maximal minors of the chosen points, with distinct
    exponents; N exceeds the Hadamard/Cauchy bound on those minors, so the
    determinant vanishes only when the chosen points are dependent.
    """
    _check_origin_last(family)
    m, D = family.k, family.dimension
    if m > D + 1:
        raise PreconditionViolated(f"m = {m} exceeds D+1 = {D + 1}")
    if m == D + 1:
        return family
    originals = [list(s) for s in family.sets[:-1]]
    if mode == "paper":
        dim = D + 2
        sets = [[list(p) + [0, 0] for p in s] for s in originals]
        sets += [[[0] * D + [1, i]] for i in range(m, D + 3)]
        sets.append([[0] * dim])
        return PointFamily(dim, sets)
    if mode != "repaired":
        raise ValueError(f"unknown mode {mode!r}")
    g = D + 1 - m
    norm2 = 0
    for s in originals:
        for p in s:
            row = integer_row(list(p))
            norm2 = max(norm2, sum(x * x for x in row))
    B = math.isqrt(norm2) + 1
    N = B ** (m - 1) + 1
    sets = [list(s) for s in originals]
    for j in range(g):
        T = N ** (D ** j)
        sets.append([[T ** r for r in range(D)]])
    sets.append([[0] * D])
    return PointFamily(D, sets)


# -- two-point families -> segments ------------------------------------------------

def twopoint_to_segments(family: PointFamily, mode: str = "paper") -> SegmentFamily:
    """Segment family whose hyperplane transversals mirror the point family's.

    Each set {A, B} becomes the segment AB and the gadget segment from -A
    to 2B.  In ``paper`` mode both are lifted to R^{D+k}, the gadget by the
    private unit vector e_i.  In ``planar`` mode nothing is lifted: a
    hyperplane through 0 meets both AB and (-A)(2B) only through A or B.
    """
    D, k = family.dimension, family.k
    for i, s in enumerate(family.sets):
        if len(s) > 2:
            raise SetTooLarge(f"set {i} has {len(s)} points")
        if not s:
            raise MalformedInstance(f"set {i} is empty")
    if not any(len(s) == 1 and not any(s[0]) for s in family.sets):
        raise NoOriginSet("no set is exactly {0}")
    segs = []
    if mode == "paper":
        dim = D + k
        for i, s in enumerate(family.sets):
            A, B = s[0], s[-1]
            pad = [0] * k
            lift = _unit(k, i)
            segs.append((list(A) + pad, list(B) + pad))
            segs.append(([-x for x in A] + lift, [2 * x for x in B] + lift))
    elif mode == "planar":
        dim = D
        for s in family.sets:
            A, B = s[0], s[-1]
            segs.append((A, B))
            segs.append(([-x for x in A], [2 * x for x in B]))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    origin = [0] * dim
    segs.append((origin, origin))
    return SegmentFamily(dim, segs)


# -- clique -> flat transversal ------------------------------------------------------

def clique_to_flattrans(g: Graph, k: int):
    """(family, target) with k^2+2k+2 sets in R^{k^2+4k} and target k^2+2k.

    Gadget (alpha, beta) selects vertex i for row alpha and vertex j for
    column beta, encoded as k^i and k^j on the row/column coordinates; the
    row and column gadgets cancel k copies of k^i only when all gadgets of
    a row (column) agree on the vertex.
    """
    n = g.n
    if k < 2 or k > n:
        raise BadK(f"k = {k} must satisfy 2 <= k <= n = {n}")
    kp, kpp = k * k + 2 * k, k * k + 3 * k
    dim = k * k + 4 * k

    def point(entries):
        v = [0] * dim
        for x, val in entries:
            v[x - 1] += val
        return v

    sets = []
    for alpha in range(1, k + 1):
        for beta in range(1, k + 1):
            f = (alpha - 1) * k + beta
            if alpha == beta:
                pts = [point([(f, 1), (kp + alpha, k ** i), (kpp + alpha, k ** i)])
                       for i in range(1, n + 1)]
            else:
                pts = []
                for i, j in sorted(g.edges):
                    for a, b in ((i, j), (j, i)):
                        pts.append(point([(f, 1), (kp + alpha, k ** a), (kpp + beta, k ** b)]))
                pts.sort()
            sets.append(pts)
    for alpha in range(1, k + 1):
        f = k * k + alpha
        sets.append([point([(f, 1), (kp + alpha, -k ** (i + 1))]) for i in range(1, n + 1)])
    for beta in range(1, k + 1):
        f = k * k + k + beta
        sets.append([point([(f, 1), (kpp + beta, -k ** (i + 1))]) for i in range(1, n + 1)])
    sets.append([[0] * dim])
    sets.append([[-1 if x < kp else 0 for x in range(dim)]])
    return PointFamily(dim, sets), kp


# -- oracles ---------------------------------------------------------------------------

def _budget(size, budget):
    if size > budget:
        raise BudgetExceeded(f"search space {size} exceeds budget {budget}")


def solve_subsetsum(inst: SubsetSumInstance, budget: int = DEFAULT_BUDGET):
    """Smallest-first index set (possibly empty) with sum b, or None."""
    n = len(inst.a)
    _budget(2 ** n, budget)
    for r in range(n + 1):
        for sub in combinations(range(n), r):
            if sum(inst.a[i] for i in sub) == inst.b:
                return frozenset(sub)
    return None


def solve_equalbin(inst: BinPackingInstance, budget: int = DEFAULT_BUDGET):
    """Bin index per item with every bin filled to exactly the capacity, or None."""
    n, k = len(inst.w), inst.bins
    _budget(k ** n, budget)
    if sum(inst.w) != k * inst.capacity:
        return None
    for assign in product(range(k), repeat=n):
        loads = [0] * k
        for w, j in zip(inst.w, assign):
            loads[j] += w
        if all(x == inst.capacity for x in loads):
            return assign
    return None


def has_clique(g: Graph, k: int, budget: int = DEFAULT_BUDGET):
    """First k-clique (vertex labels) in lexicographic order, or None."""
    _budget(math.comb(g.n, k), budget)
    for sub in combinations(range(1, g.n + 1), k):
        if all(g.adjacent(i, j) for i, j in combinations(sub, 2)):
            return frozenset(sub)
    return None
