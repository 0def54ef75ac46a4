import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from hellybox.boxlift import (
    FOUND,
    NO_BOX,
    UNBOUNDED,
    axis_project,
    lift_family,
    lift_halfspace,
    max_lattice_box,
    parse_corner_mode,
    subfamily_check,
)
from hellybox.constructions import cross_polytope_family, figure1_family, hypercube_family
from hellybox.errors import DomainError, ScaleError
from hellybox.lattice import Box, lattice_count_box
from hellybox.polyhedra import Halfspace, Polyhedron


def random_halfspace(rng, d, bound=3):
    normal = [rng.randint(-bound, bound) for _ in range(d)]
    if not any(normal):
        normal[rng.randrange(d)] = 1
    return Halfspace(tuple(normal), Fraction(rng.randint(-bound, 4 * bound), rng.randint(1, 3)))


def random_bounded_family(rng, B=4):
    frame = Polyhedron(2, tuple(Halfspace(n, B) for n in ((1, 0), (-1, 0), (0, 1), (0, -1))), "frame")
    sets = [frame]
    for _ in range(rng.randint(1, 3)):
        sets.append(Polyhedron(2, tuple(random_halfspace(rng, 2) for _ in range(rng.randint(1, 2)))))
    return sets, B


def brute_max_box(sets, B, t):
    """Largest lattice count over integer boxes with edges >= t inside every set."""
    pts = [(x, y) for x in range(-B, B + 1) for y in range(-B, B + 1)
           if all(P.contains((x, y)) for P in sets)]
    inside = set(pts)
    best = None
    for (x0, y0), (x1, y1) in itertools.product(pts, repeat=2):
        if x1 - x0 < t or y1 - y0 < t:
            continue
        if (x0, y1) in inside and (x1, y0) in inside:
            c = (x1 - x0 + 1) * (y1 - y0 + 1)
            best = c if best is None else max(best, c)
    return best


class TestLift:
    def test_lift_signs(self):
        h = lift_halfspace(Halfspace((2, -3), 5))
        assert h.normal == (0, -3, 2, 0) and h.offset == 5

    def test_lift_matches_vertex_containment(self):
        rng = random.Random(1)
        for _ in range(2000):
            d = rng.randint(1, 3)
            fam = [Polyhedron(d, tuple(random_halfspace(rng, d) for _ in range(rng.randint(1, 3))))
                   for _ in range(rng.randint(1, 3))]
            lo = [Fraction(rng.randint(-8, 8), rng.randint(1, 3)) for _ in range(d)]
            hi = [l + Fraction(rng.randint(0, 8), rng.randint(1, 3)) for l in lo]
            box = Box(tuple(lo), tuple(hi))
            by_vertices = all(P.contains(v) for P in fam for v in box.vertices())
            assert lift_family(fam).contains(lo, hi) == by_vertices

    def test_lift_rejects_reversed_corners(self):
        L = lift_family([Polyhedron(1, (Halfspace((1,), 5),))])
        assert not L.contains((2,), (1,))

    def test_axis_project_matches_linear_programming(self):
        rng = random.Random(2)
        for _ in range(200):
            fam = [Polyhedron(2, tuple(random_halfspace(rng, 2) for _ in range(3)))]
            L = lift_family(fam)
            proj = axis_project(L, 0)
            keep = 1
            rest = proj.bounds(keep)
            A = np.array([[float(c) for c in h.normal] for h in L.constraints])
            b = np.array([float(h.offset) for h in L.constraints])
            c = np.zeros(4)
            c[keep] = 1
            res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * 4, method="highs")
            if res.status == 2:
                assert rest is None
            elif res.status == 0:
                assert rest is not None and rest[0] is not None
                assert abs(float(rest[0]) - res.fun) < 1e-7
            else:
                assert rest is not None and rest[0] is None

    def test_axis_project_range(self):
        with pytest.raises(DomainError):
            axis_project(lift_family([Polyhedron(2)]), 4)


class TestCornerModes:
    def test_parse(self):
        assert parse_corner_mode("integer", 2) == ((True, True), (True, True))
        assert parse_corner_mode("real", 1) == ((False,), (False,))
        assert parse_corner_mode(("integer", "ri"), 2) == ((True, True), (False, True))
        assert parse_corner_mode("ir,real", 2) == ((True, False), (False, False))
        with pytest.raises(DomainError):
            parse_corner_mode("rri", 2)

    def test_integer_corners_are_integral(self):
        assert max_lattice_box(figure1_family().sets, 1, "integer").status == NO_BOX
        res = max_lattice_box(hypercube_family(2, 3).sets, 1, "integer")
        assert res.status == FOUND and res.count == 16
        assert all(v.denominator == 1 for v in res.box.lower + res.box.upper)

    def test_real_mode_allows_fractional_box_without_points(self):
        P = Polyhedron(1, (Halfspace((1,), Fraction(2, 3)), Halfspace((-1,), Fraction(-1, 3))))
        res = max_lattice_box([P], Fraction(1, 4), "real")
        assert res.status == FOUND and res.count == 0
        assert res.box.edges()[0] >= Fraction(1, 4)
        assert max_lattice_box([P], Fraction(1, 4), "integer").status == NO_BOX


class TestMaxLatticeBox:
    def test_matches_brute_force(self):
        rng = random.Random(3)
        mismatches = 0
        for _ in range(10**3):
            sets, B = random_bounded_family(rng)
            t = rng.choice([0, 0, 1, 2])
            want = brute_max_box(sets, B, t)
            mode = "real" if t == 0 else "integer"
            got = max_lattice_box(sets, t, mode)
            if want is None:
                mismatches += not (got.status == NO_BOX or (got.status == FOUND and got.count == 0))
            else:
                mismatches += not (got.status == FOUND and got.count == want)
        assert mismatches == 0

    def test_found_box_is_inside(self):
        rng = random.Random(4)
        for _ in range(200):
            sets, _ = random_bounded_family(rng)
            res = max_lattice_box(sets, 0, "real")
            if res.status == FOUND:
                assert lift_family(sets).contains(res.box.lower, res.box.upper)
                assert lattice_count_box(res.box) == res.count

    def test_figure1(self):
        F = figure1_family()
        assert max_lattice_box(F.sets, 0).count == 3
        assert subfamily_check(F.sets, 5, 4).passed

    def test_hypercube_unbounded_growth(self):
        F = hypercube_family(2, 3)
        assert max_lattice_box(F.sets, 3).count == 16
        for idx in itertools.combinations(range(4), 3):
            sub = [F.sets[i] for i in idx]
            res = max_lattice_box(sub, 3)
            assert res.status == UNBOUNDED
            big = res.grown(250)
            assert lattice_count_box(big) >= 10**3
            assert min(big.edges()) >= 3
            assert lift_family(sub).contains(big.lower, big.upper)

    def test_cross_polytope_plane(self):
        F = cross_polytope_family(2)
        assert max_lattice_box(F.sets, 0).count == 3
        for idx in itertools.combinations(range(4), 3):
            res = max_lattice_box([F.sets[i] for i in idx], 1)
            assert res.count == 4 and res.exhaustive

    def test_cross_polytope_space_has_no_thick_box(self):
        # the (2^d - 1)-subfamilies in d = 3 are bounded and admit no 1-thick box
        F = cross_polytope_family(3)
        for idx in itertools.combinations(range(8), 7):
            res = max_lattice_box([F.sets[i] for i in idx], 1)
            assert res.status == NO_BOX and res.exhaustive
        assert max_lattice_box(F.sets, 0).count == 3

    def test_empty_intersection(self):
        P = Polyhedron(1, (Halfspace((1,), 0),))
        Q = Polyhedron(1, (Halfspace((-1,), -1),))
        assert max_lattice_box([P, Q]).status == NO_BOX

    def test_degenerate_boxes_need_zero_thickness(self):
        with pytest.raises(DomainError):
            max_lattice_box(figure1_family().sets, 1, max_dim=1)

    def test_dimension_guard(self):
        with pytest.raises(ScaleError):
            max_lattice_box([Polyhedron(4)])

    def test_subfamily_check_reports_failure(self):
        F = cross_polytope_family(2)
        res = subfamily_check(F.sets, 4, 4, 1)
        assert not res.passed and res.failing == (0, 1, 2, 3)
