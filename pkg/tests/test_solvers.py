from fractions import Fraction as F
import random
from itertools import product

import pytest

from transversals.errors import BadTarget, EmptyInput
from transversals.exactmath import Hyperplane, PointFamily, affine_rank, flat_contains
from transversals.lpcore import Counter
from transversals.reductions import SubsetSumInstance, subsetsum_to_hyptrans
from transversals.solvers import (SegmentFamily, finite_flat_transversal, hyperplane_transversal_points,
                                  maxhyp_exact, segment_hyperplane_transversal, segment_meets)

from oracles import transversal_oracle


def test_subsetsum_yes_certificate():
    fam = subsetsum_to_hyptrans(SubsetSumInstance((1,), 1))
    cert = finite_flat_transversal(fam, 1)
    assert cert.chosen == (0, 0, 0)
    assert cert.flat.dim == 1
    assert all(flat_contains(cert.flat, p) for p in cert.points(fam))


def test_subsetsum_no():
    fam = subsetsum_to_hyptrans(SubsetSumInstance((1,), 2))
    assert finite_flat_transversal(fam, 1) is None


def test_trivial_k_minus_one_transversal():
    fam = PointFamily(3, [[(0, 0, 0), (1, 2, 3)], [(4, 4, 4)], [(9, 0, 1)]])
    assert finite_flat_transversal(fam, 2).chosen == (0, 0, 0)
    fam2 = PointFamily(2, [[(0, 0)], [(7, 3)]])
    assert hyperplane_transversal_points(fam2) is not None


def test_collinear_singletons():
    assert hyperplane_transversal_points(PointFamily(2, [[(0, 0)], [(1, 1)], [(2, 2)]])) is not None
    assert hyperplane_transversal_points(PointFamily(2, [[(0, 0)], [(1, 0)], [(0, 1)]])) is None


def test_bad_target_and_empty_set():
    fam = PointFamily(2, [[(0, 0)], [(1, 0)]])
    with pytest.raises(BadTarget):
        finite_flat_transversal(fam, 3)
    with pytest.raises(BadTarget):
        finite_flat_transversal(fam, -1)
    assert finite_flat_transversal(PointFamily(2, [[(0, 0)], [], [(1, 1)]]), 1) is None


def _random_family(rng):
    D = rng.randint(1, 4)
    k = rng.randint(2, 5)
    sets = [[tuple(rng.randint(-2, 2) for _ in range(D)) for _ in range(rng.randint(1, 3))]
            for _ in range(k)]
    return PointFamily(D, sets), rng.randint(0, D)


def test_fixed_equation_with_nonzero_total():
    # every set is pinned along the equation, but 1 and 2 can never coincide
    fam = PointFamily(1, [[(1,)], [(1,), (-1,)], [(2,), (0,), (1,)], [(2,)], [(-2,), (1,)]])
    assert finite_flat_transversal(fam, 0) is None


def test_matches_product_oracle_and_is_lexicographic():
    rng = random.Random(31)
    for _ in range(250):
        fam, m = _random_family(rng)
        cert = finite_flat_transversal(fam, m)
        assert (cert is not None) == transversal_oracle(fam.sets, m)
        if cert is not None:
            pts = cert.points(fam)
            assert affine_rank(pts) <= m and cert.flat.dim <= m
            assert all(flat_contains(cert.flat, p) for p in pts)
            first = next(c for c in product(*[range(len(s)) for s in fam.sets])
                         if affine_rank([fam.sets[i][j] for i, j in enumerate(c)]) <= m)
            assert cert.chosen == first


def test_parallel_matches_serial():
    fam = subsetsum_to_hyptrans(SubsetSumInstance((1, 2, 3), 5))
    a = finite_flat_transversal(fam, fam.dimension - 1, workers=1)
    b = finite_flat_transversal(fam, fam.dimension - 1, workers=3)
    assert a == b and a is not None


def test_counter_counts_candidates():
    c = Counter()
    finite_flat_transversal(subsetsum_to_hyptrans(SubsetSumInstance((1, 2, 3), 5)), 3, counter=c)
    assert c.candidates > 0
    # too small a dependence space: answered without enumerating
    c = Counter()
    assert finite_flat_transversal(subsetsum_to_hyptrans(SubsetSumInstance((1, 1), 5)), 2, counter=c) is None
    assert c.candidates == 0


def test_segments_straddling_axis():
    segs = SegmentFamily(2, [((x, F(-1, 2)), (x, F(1, 2))) for x in (-1, 0, 1)])
    assert segment_hyperplane_transversal(segs) == Hyperplane((0, 1), 0)


def test_segments_no_transversal():
    segs = SegmentFamily(2, [((0, 0), (1, 0)), ((0, 3), (1, 3)), ((3, 3), (4, 3))])
    assert segment_hyperplane_transversal(segs) is None


def test_degenerate_collinear_segments():
    segs = SegmentFamily(2, [((0, 0), (0, 0)), ((1, 1), (1, 1)), ((3, 3), (3, 3))])
    assert segment_hyperplane_transversal(segs) == Hyperplane((1, -1), 0)
    with pytest.raises(EmptyInput):
        segment_hyperplane_transversal(SegmentFamily(2, []))


def test_segment_answers_meet_everything():
    rng = random.Random(17)
    found = 0
    for _ in range(60):
        D = rng.randint(1, 3)
        segs = [tuple(tuple(rng.randint(-3, 3) for _ in range(D)) for _ in range(2))
                for _ in range(rng.randint(1, D + 2))]
        h = segment_hyperplane_transversal(SegmentFamily(D, segs))
        if len(segs) <= D:
            assert h is not None
        if h is not None:
            found += 1
            assert all(segment_meets(h, p, q) for p, q in segs)
    assert found > 0


def test_segment_no_implies_point_no():
    # segments are supersets of their endpoints: a yes on endpoints is a yes on segments
    rng = random.Random(4)
    for _ in range(40):
        segs = [tuple((rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(2)) for _ in range(4)]
        point_yes = hyperplane_transversal_points(PointFamily(2, [list(s) for s in segs])) is not None
        seg_yes = segment_hyperplane_transversal(SegmentFamily(2, segs)) is not None
        assert seg_yes or not point_yes


def test_maxhyp_examples():
    rep = maxhyp_exact([(0, 0), (1, 1), (2, 2), (5, 0)], 2)
    assert rep.count == 3 and rep.hyperplane == Hyperplane((1, -1), 0)
    assert maxhyp_exact([(1, 2, 3)], 3).count == 1
    assert maxhyp_exact([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)], 3).count == 4
    with pytest.raises(EmptyInput):
        maxhyp_exact([], 2)


def _brute_maxhyp(points, D):
    from itertools import combinations
    from transversals.exactmath import hyperplane_through
    best = 0
    for sub in combinations(points, D):
        if affine_rank(list(sub)) == D - 1:
            h = hyperplane_through(list(sub), D)
            best = max(best, h.count(points))
    return best


def test_maxhyp_matches_brute_force_with_rationals():
    rng = random.Random(8)
    for _ in range(40):
        D = rng.randint(2, 4)
        pts = [tuple(F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(D))
               for _ in range(rng.randint(D + 1, D + 5))]
        rep = maxhyp_exact(pts, D)
        if affine_rank(pts) == D:
            assert rep.count == _brute_maxhyp(pts, D)
        assert rep.hyperplane.count(pts) == rep.count
