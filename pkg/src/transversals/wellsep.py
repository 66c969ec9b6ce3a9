"""Well-separation: the split-enumeration decision procedure and both
directions of the flat/witness correspondence.

A family S_0..S_{k-1} is well-separated when for every proper index set I
the hulls conv(S_I) and conv(S_rest) are disjoint.  Failure is certified
two ways: by a witness split with a common point, and by a flat of
dimension at most k-2 meeting every hull.  The two are interconverted by
collapsing weights per set (witness -> flat) and by Radon's theorem inside
the flat (flat -> witness).

Set indices are 0-based.  Splits are enumerated in canonical order: masks
containing set 0, by increasing binary code.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ._parallel import first_hit
from .errors import EmptySet, FlatMissesSet, InvalidWitness, PreconditionViolated, TooFewPoints
from .exactmath import (Flat, PointFamily, affine_dependence, as_point,
                        combination, flat_from_points)
from .lpcore import Counter, Intersecting, flat_hull_point, hulls_intersect


@dataclass(frozen=True)
class WitnessPartition:
    """A proper split I of the sets and a point in both side hulls.

    ``weights[i]`` holds the convex weights on the points of set i; the
    weights of the sets in I sum to 1, as do those of the other sets.
    """

    I: tuple
    point: tuple
    weights: tuple

    def complement(self, k):
        return tuple(i for i in range(k) if i not in self.I)

    def side_weights(self, side):
        return [w for i in side for w in self.weights[i]]

    def check(self, family: PointFamily):
        """Raise InvalidWitness unless the witness is exact for ``family``."""
        k = family.k
        inside = set(self.I)
        if not inside or len(inside) >= k or not inside <= set(range(k)):
            raise InvalidWitness(f"I={self.I} is not a proper subset of the sets")
        if len(self.weights) != k or any(
                len(w) != len(s) for w, s in zip(self.weights, family.sets)):
            raise InvalidWitness("weights do not match the family shape")
        if any(x < 0 for w in self.weights for x in w):
            raise InvalidWitness("negative weight")
        point = as_point(self.point)
        for side in (self.I, self.complement(k)):
            ws = self.side_weights(side)
            pts = [p for i in side for p in family.sets[i]]
            if sum(ws) != 1:
                raise InvalidWitness("side weights do not sum to 1")
            if combination(ws, pts, family.dimension) != point:
                raise InvalidWitness("weights do not reproduce the point")


@dataclass(frozen=True)
class WellSeparated:
    splits: int = 0


@dataclass(frozen=True)
class NotWellSeparated:
    witness: WitnessPartition
    flat: Flat


WellSepResult = Union[WellSeparated, NotWellSeparated]


@dataclass(frozen=True)
class RadonPartition:
    I: tuple
    J: tuple
    point: tuple
    weights_I: tuple
    weights_J: tuple


def radon_partition(points) -> RadonPartition:
    """Split an affinely dependent point list into two hull-meeting parts.

    I collects the negative weights of the dependence, J the positive ones;
    zero-weight indices are dropped.  Any list of at least D+2 points in R^D
    qualifies, as does any smaller list that happens to be dependent.
    """
    points = [as_point(p) for p in points]
    if not points:
        raise TooFewPoints("no points")
    lam = affine_dependence(points)
    if lam is None:
        raise TooFewPoints(
            f"{len(points)} affinely independent points have no Radon partition")
    I = tuple(i for i, x in enumerate(lam) if x < 0)
    J = tuple(i for i, x in enumerate(lam) if x > 0)
    total = sum(lam[j] for j in J)
    wI = tuple(-lam[i] / total for i in I)
    wJ = tuple(lam[j] / total for j in J)
    point = combination(wJ, [points[j] for j in J], len(points[0]))
    return RadonPartition(I, J, point, wI, wJ)


def _witness(k, negative, positive, point, weights):
    """Canonical witness: I is whichever side contains set 0."""
    I = tuple(sorted(negative))
    if 0 not in I:
        I = tuple(i for i in range(k) if i not in set(negative))
    return WitnessPartition(I, tuple(point), tuple(tuple(w) for w in weights))


def _check_family(family: PointFamily):
    for i, s in enumerate(family.sets):
        if not s:
            raise EmptySet(i)


def _split_task(args):
    family, mask = args
    counter = Counter()
    a = [i for i in range(family.k) if mask >> i & 1]
    b = [i for i in range(family.k) if not mask >> i & 1]
    out = hulls_intersect([p for i in a for p in family.sets[i]],
                          [p for i in b for p in family.sets[i]], counter)
    counter.candidates += 1
    if not isinstance(out, Intersecting):
        return None, counter
    weights = []
    ia = ib = 0
    for i, s in enumerate(family.sets):
        if mask >> i & 1:
            weights.append(out.weights_a[ia:ia + len(s)])
            ia += len(s)
        else:
            weights.append(out.weights_b[ib:ib + len(s)])
            ib += len(s)
    return WitnessPartition(tuple(a), out.point, tuple(weights)), counter


def is_well_separated(family: PointFamily, workers: int = 1,
                      counter: Optional[Counter] = None) -> WellSepResult:
    _check_family(family)
    k, D = family.k, family.dimension
    if k >= D + 2:
        firsts = [s[0] for s in family.sets]
        rp = radon_partition(firsts)
        weights = [[Fraction(0)] * len(s) for s in family.sets]
        for i, w in zip(rp.I, rp.weights_I):
            weights[i][0] = w
        for j, w in zip(rp.J, rp.weights_J):
            weights[j][0] = w
        wit = _witness(k, rp.I, rp.J, rp.point, weights)
        return NotWellSeparated(wit, flat_certificate_from_witness(family, wit))
    masks = [m for m in range(1, (1 << k) - 1) if m & 1]
    _, wit = first_hit(_split_task, [(family, m) for m in masks], workers, counter)
    if wit is None:
        return WellSeparated(len(masks))
    return NotWellSeparated(wit, flat_certificate_from_witness(family, wit))


def flat_certificate_from_witness(family: PointFamily, witness: WitnessPartition) -> Flat:
    """Flat of dimension at most k-2 meeting every hull, built from a witness.

    Each set with positive weight collapses to its weighted average; a set
    with zero weight contributes its first point.  The positive sets carry
    an affine dependence, so the k collapsed points span at most k-2
    dimensions.
    """
    _check_family(family)
    witness.check(family)
    reps = []
    for s, w in zip(family.sets, witness.weights):
        t = sum(w)
        reps.append(combination([x / t for x in w], s, family.dimension) if t else s[0])
    flat = flat_from_points(reps)
    if flat.dim > family.k - 2:
        raise InvalidWitness(f"collapsed points span dimension {flat.dim} > k-2")
    for i, s in enumerate(family.sets):
        if flat_hull_point(flat, s) is None:
            raise InvalidWitness(f"certificate flat misses set {i}")
    return flat


def witness_from_flat(family: PointFamily, flat: Flat,
                      counter: Optional[Counter] = None) -> WitnessPartition:
    """Witness split from a flat of dimension at most k-2 meeting every hull."""
    _check_family(family)
    k = family.k
    if flat.dim > k - 2:
        raise PreconditionViolated(f"flat of dimension {flat.dim} exceeds k-2 = {k - 2}")
    hits = []
    for i, s in enumerate(family.sets):
        hit = flat_hull_point(flat, s, counter)
        if hit is None:
            raise FlatMissesSet(i)
        hits.append(hit)
    coords = [flat.coordinates(y) for y, _ in hits]
    rp = radon_partition(coords)
    side = {i: w for i, w in zip(rp.I, rp.weights_I)}
    side.update({j: w for j, w in zip(rp.J, rp.weights_J)})
    weights = [tuple(side.get(i, Fraction(0)) * x for x in w) for i, (_, w) in enumerate(hits)]
    point = combination(rp.weights_J, [hits[j][0] for j in rp.J], family.dimension)
    wit = _witness(k, rp.I, rp.J, point, weights)
    wit.check(family)
    return wit
