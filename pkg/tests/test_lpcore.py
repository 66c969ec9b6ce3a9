from fractions import Fraction as F
import random

import pytest

from transversals.errors import DimensionMismatch, EmptyInput, MalformedInstance
from transversals.exactmath import flat_from_points, Flat
from transversals.lpcore import (Constraint, Counter, Feasible, Infeasible, Intersecting, LPInstance,
                                 Optimal, Separated, Unbounded, flat_hull_point, flat_meets_hull,
                                 hulls_intersect, lp_solve)

from oracles import lp_feasible_oracle


def test_bounded_max():
    out = lp_solve(LPInstance(1, [([1], "<=", 3)], [1], "max", {0}))
    assert out == Optimal((3,), 3)


def test_infeasible_pair_certificate():
    lp = LPInstance(1, [([1], ">=", 1), ([1], "<=", 0)])
    out = lp_solve(lp)
    assert isinstance(out, Infeasible)
    assert out.certificate.multipliers == (1, 1)
    assert out.certificate.combination(lp) == ((0,), -1)
    assert out.certificate.verify(lp)


def test_unbounded_ray():
    lp = LPInstance(1, [], [1], "max", {0})
    out = lp_solve(lp)
    assert isinstance(out, Unbounded)
    assert out.ray == (1,)


def test_min_sense_and_free_variable():
    lp = LPInstance(2, [([1, 1], "=", 4), ([1, -1], ">=", F(1, 2))], [1, 0], "min")
    out = lp_solve(lp)
    assert isinstance(out, Optimal) and out.value == F(9, 4)
    assert lp.satisfied_by(out.assignment)


def test_malformed_rows():
    with pytest.raises(MalformedInstance):
        LPInstance(2, [([1], "<=", 0)])
    with pytest.raises(MalformedInstance):
        Constraint([1], "<", 0)


def test_tampered_certificate_rejected():
    lp = LPInstance(1, [([1], ">=", 1), ([1], "<=", 0)])
    cert = lp_solve(lp).certificate
    bad = type(cert)((F(1), F(2)))
    assert not bad.verify(lp)
    assert not type(cert)((F(-1), F(1))).verify(lp)


def _random_lp(rng):
    n = rng.randint(1, 4)
    cons = []
    for _ in range(rng.randint(1, 5)):
        cons.append(([rng.randint(-3, 3) for _ in range(n)], rng.choice(["<=", "=", ">="]),
                     rng.randint(-4, 4)))
    nonneg = {j for j in range(n) if rng.random() < 0.5}
    return n, cons, nonneg


def test_feasibility_matches_vertex_oracle():
    rng = random.Random(2024)
    for _ in range(150):
        n, cons, nonneg = _random_lp(rng)
        lp = LPInstance(n, cons, nonnegative=nonneg)
        out = lp_solve(lp)
        assert isinstance(out, Feasible) == lp_feasible_oracle(n, cons, nonneg)
        if isinstance(out, Feasible):
            assert lp.satisfied_by(out.assignment)
        else:
            assert out.certificate.verify(lp)


def test_optimum_is_feasible_and_not_beaten_by_vertices():
    rng = random.Random(5)
    for _ in range(80):
        n, cons, nonneg = _random_lp(rng)
        box = [([1 if j == i else 0 for j in range(n)], "<=", 5) for i in range(n)]
        box += [([1 if j == i else 0 for j in range(n)], ">=", -5) for i in range(n)]
        obj = [rng.randint(-2, 2) for _ in range(n)]
        lp = LPInstance(n, cons + box, obj, "max", nonneg)
        out = lp_solve(lp)
        if isinstance(out, Infeasible):
            continue
        assert isinstance(out, Optimal)
        assert lp.satisfied_by(out.assignment)
        # nothing strictly better is feasible
        better = cons + box + [(obj, ">=", out.value + F(1, 1000))]
        assert not lp_feasible_oracle(n, better, nonneg)


def test_hulls_separated_one_dimension():
    out = hulls_intersect([(0,)], [(1,)])
    assert isinstance(out, Separated)
    assert out.margin == F(1, 2)
    assert out.hyperplane.offset * out.hyperplane.normal[0] == F(1, 2) * out.hyperplane.normal[0] ** 2


def test_hulls_intersect_segment_contains_point():
    out = hulls_intersect([(0,), (2,)], [(1,)])
    assert out == Intersecting((1,), (F(1, 2), F(1, 2)), (1,))


def test_hulls_intersect_triangle():
    out = hulls_intersect([(0, 0), (2, 0), (0, 2)], [(F(1, 2), F(1, 2))])
    assert isinstance(out, Intersecting) and out.point == (F(1, 2), F(1, 2))
    assert sum(out.weights_a) == 1


def test_hulls_intersect_errors_and_counter():
    with pytest.raises(EmptyInput):
        hulls_intersect([], [(0,)])
    with pytest.raises(DimensionMismatch):
        hulls_intersect([(0,)], [(0, 1)])
    c = Counter()
    hulls_intersect([(0,)], [(1,)], c)
    assert c.lps == 2


def test_separator_really_separates():
    rng = random.Random(9)
    for _ in range(60):
        a = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(3)]
        b = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(2)]
        out = hulls_intersect(a, b)
        if isinstance(out, Separated):
            n, off, mg = out.normal, out.offset, out.margin
            assert mg > 0 and all(abs(x) <= 1 for x in n)
            assert all(sum(x * y for x, y in zip(n, p)) - off >= mg for p in a)
            assert all(sum(x * y for x, y in zip(n, q)) - off <= -mg for q in b)
        else:
            assert all(w >= 0 for w in out.weights_a + out.weights_b)


def test_flat_meets_hull_examples():
    axis = flat_from_points([(0, 0), (1, 0)])
    assert flat_meets_hull(axis, [(1, -1), (1, 1)]) == (1, 0)
    assert flat_meets_hull(axis, [(0, 1), (1, 2)]) is None
    plane = Flat((0, 0), ((1, 0), (0, 1)))
    assert flat_hull_point(plane, [(3, 4), (5, 6)]) == ((3, 4), (1, 0))
