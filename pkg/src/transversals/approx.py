"""Grouping approximation for MaxHyp on a plain point list.

With k points in R^D and f(k) = log k / log log k:

* k <= D: one hyperplane holds every point;
* f(k) < D: any D points span (or lie on) a hyperplane, giving count >= D;
* otherwise: split the points into groups of ceil(f(k)), try every
  hyperplane spanned by D points of a single group, keep the best.

Floating point is used only to pick the case and the group size; every
reported hyperplane and count is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import EmptyInput
from .exactmath import Hyperplane, affine_rank, as_point, hyperplane_through
from .lpcore import Counter

ALL_POINTS = "AllPoints"
ANY_D_POINTS = "AnyDPoints"
GROUPED = "Grouped"


@dataclass(frozen=True)
class ApproxReport:
    hyperplane: Hyperplane
    count: int
    case: str
    fk: float
    group_size: Optional[int] = None


def f_of_k(k: int) -> float:
    """log2 k / log2 log2 k, or 1 for k <= 4."""
    if k < 1:
        raise ValueError("k must be positive")
    if k <= 4:
        return 1.0
    lg = math.log2(k)
    return lg / math.log2(lg)


def groups_of(k: int, size: int, D: int):
    """Index ranges of consecutive groups; a tail shorter than D joins its predecessor."""
    bounds = list(range(0, k, size))
    groups = [list(range(b, min(b + size, k))) for b in bounds]
    if len(groups) > 1 and len(groups[-1]) < D:
        groups[-2].extend(groups.pop())
    return groups


def approx_maxhyp(points, dimension: int, counter: Optional[Counter] = None) -> ApproxReport:
    if not points:
        raise EmptyInput("approx_maxhyp of an empty point list")
    points = [as_point(p) for p in points]
    k, D = len(points), dimension
    fk = f_of_k(k)
    if k <= D:
        h = hyperplane_through(points, D)
        return ApproxReport(h, h.count(points), ALL_POINTS, fk)
    if fk < D:
        h = hyperplane_through(points[:D], D)  # D points never span R^D
        return ApproxReport(h, h.count(points), ANY_D_POINTS, fk)

    size = math.ceil(fk)
    best = None
    seen = set()
    for group in groups_of(k, size, D):
        local = [points[i] for i in group]
        cands = []
        if affine_rank(local) <= D - 1:
            cands.append(hyperplane_through(local, D))
        for sub in combinations(local, D):
            if affine_rank(list(sub)) == D - 1:
                cands.append(hyperplane_through(list(sub), D))
        for h in cands:
            if h in seen:
                continue
            seen.add(h)
            if counter is not None:
                counter.candidates += 1
            rank = (-h.count(points), h.key())
            if best is None or rank < best[0]:
                best = (rank, h)
    h = best[1]
    return ApproxReport(h, h.count(points), GROUPED, fk, size)
