import math
import random

import pytest

from transversals.approx import (ALL_POINTS, ANY_D_POINTS, GROUPED, approx_maxhyp, f_of_k,
                                 groups_of)
from transversals.errors import EmptyInput
from transversals.solvers import maxhyp_exact


def test_f_of_k_values():
    assert f_of_k(2) == 1
    assert f_of_k(16) == 2.0
    assert f_of_k(65536) == 4.0
    assert math.isclose(f_of_k(5), math.log2(5) / math.log2(math.log2(5)))
    with pytest.raises(ValueError):
        f_of_k(0)


def test_groups_merge_short_tail():
    assert groups_of(7, 3, 2) == [[0, 1, 2], [3, 4, 5, 6]]
    assert groups_of(6, 3, 2) == [[0, 1, 2], [3, 4, 5]]
    assert groups_of(5, 2, 2) == [[0, 1], [2, 3, 4]]


def test_all_points_case():
    pts = [(1, 2, 3, 4, 5), (0, 0, 0, 0, 1), (7, 7, 0, 0, 0)]
    rep = approx_maxhyp(pts, 5)
    assert rep.case == ALL_POINTS and rep.count == 3


def test_any_d_points_case():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]
    rep = approx_maxhyp(pts, 3)
    assert rep.case == ANY_D_POINTS and rep.count >= 3


def test_grouped_finds_the_line():
    pts = [(i, 0) for i in range(8)] + [(i, i * i + 1) for i in range(1, 9)]
    rep = approx_maxhyp(pts, 2)
    assert rep.case == GROUPED and rep.fk == 2.0 and rep.group_size == 2
    assert rep.count == 8
    assert rep.hyperplane.count(pts) == 8


def test_empty():
    with pytest.raises(EmptyInput):
        approx_maxhyp([], 2)


def test_guarantee_on_random_inputs():
    rng = random.Random(3)
    for _ in range(60):
        D = rng.randint(1, 3)
        k = rng.randint(1, 30)
        pts = [tuple(rng.randint(-4, 4) for _ in range(D)) for _ in range(k)]
        rep = approx_maxhyp(pts, D)
        opt = maxhyp_exact(pts, D).count
        assert rep.hyperplane.count(pts) == rep.count <= opt
        if k <= D:
            assert rep.count == opt
        else:
            assert rep.count >= D
        assert rep.count * k >= opt * f_of_k(k) / 2
