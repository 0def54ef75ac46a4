import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from hellybox.errors import DomainError
from hellybox.polyhedra import Halfspace, LinearSystem, Polyhedron, coordinate_bounds, intersect


def random_rows(rng, nvars, count, bound=4):
    rows = []
    for _ in range(count):
        coeffs = [rng.randint(-bound, bound) for _ in range(nvars)]
        if not any(coeffs):
            coeffs[0] = 1
        rows.append((coeffs, Fraction(rng.randint(-3 * bound, 6 * bound), rng.randint(1, 3))))
    return rows


def lp_bounds(rows, nvars, var):
    A = np.array([[float(c) for c in r[0]] for r in rows])
    b = np.array([float(r[1]) for r in rows])
    out = []
    for sign in (1, -1):
        c = np.zeros(nvars)
        c[var] = sign
        res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * nvars, method="highs")
        if res.status == 2:
            return None
        out.append(None if res.status == 3 else sign * res.fun)
    return out  # [min, max]


def test_halfspace_rejects_zero_normal():
    with pytest.raises(DomainError):
        Halfspace((0, 0), 1)


def test_polyhedron_json_round_trip():
    P = Polyhedron(2, (Halfspace((1, 2), Fraction(1, 3)),), "P")
    assert Polyhedron.from_json(P.to_json(), 2) == P
    assert P.contains((0, 0)) and not P.contains((1, 1))


def test_intersect_dimension_mismatch():
    with pytest.raises(DomainError):
        intersect([Polyhedron(2), Polyhedron(3)])


def test_bounds_match_linear_programming():
    rng = random.Random(5)
    for _ in range(300):
        nvars = rng.randint(1, 3)
        rows = random_rows(rng, nvars, rng.randint(1, 7))
        sys = LinearSystem.build(nvars, rows)
        for var in range(nvars):
            got = sys.bounds(var)
            want = lp_bounds(rows, nvars, var)
            if want is None:
                assert got is None
                continue
            assert got is not None
            lo, hi = got
            for exact, approx in ((lo, want[0]), (hi, want[1])):
                if approx is None:
                    assert exact is None
                else:
                    assert exact is not None and abs(float(exact) - approx) < 1e-7


def test_find_point_is_feasible():
    rng = random.Random(6)
    for _ in range(300):
        nvars = rng.randint(1, 3)
        rows = random_rows(rng, nvars, rng.randint(1, 7))
        sys = LinearSystem.build(nvars, rows)
        p = sys.find_point()
        assert (p is not None) == sys.is_feasible()
        if p is not None:
            assert all(sum(c * v for c, v in zip(coeffs, p)) <= r for coeffs, r in rows)


def test_infeasible_system():
    sys = LinearSystem.build(1, [((1,), 0), ((-1,), -1)])
    assert not sys.is_feasible()
    assert sys.bounds(0) is None


def test_coordinate_bounds():
    square = Polyhedron(2, (Halfspace((1, 0), 2), Halfspace((-1, 0), 0), Halfspace((0, 1), 3)))
    assert coordinate_bounds(square) == [(0, 2), (None, 3)]
