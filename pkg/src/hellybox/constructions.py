"""Concrete sets and families: primes, polynomial and power sets, the
counterexample families, and the syndetic set with infinite Helly number.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import ConstructionError, DomainError, ScaleError, check_guard
from .exact import SurdScalar, convex_hull2, is_strictly_convex
from .family import FamilyInstance, halfplane_family
from .polyhedra import Halfspace, Polyhedron

SIEVE_LIMIT = 2**32
SIEVE_BLOCK = 1 << 20  # odd numbers per segment
SET_GUARD = 10**7


# ---------------------------------------------------------------------------
# Primes
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24 with these bases."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _small_primes(limit: int) -> np.ndarray:
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def prime_segments(lo: int, hi: int, block: int = SIEVE_BLOCK) -> Iterator[np.ndarray]:
    """Yield the primes in [lo, hi] as int64 arrays, one sieve segment at a time."""
    if lo > hi:
        raise DomainError("prime window requires lo <= hi")
    if hi > SIEVE_LIMIT:
        raise ScaleError(f"sieve limit is {SIEVE_LIMIT}, got hi={hi}")
    lo = max(lo, 0)
    if lo <= 2 <= hi:
        yield np.array([2], dtype=np.int64)
    base = _small_primes(math.isqrt(hi) + 1)[1:]  # odd base primes
    start = max(3, lo) | 1  # first odd candidate
    while start <= hi:
        count = min(block, (hi - start) // 2 + 1)
        flags = np.ones(count, dtype=bool)
        stop = start + 2 * count
        for p in base:
            p = int(p)
            if p * p >= stop:
                break
            m = max(p * p, -(-start // p) * p)
            if m % 2 == 0:
                m += p
            if m < stop:
                flags[(m - start) // 2 :: p] = False
        if start == 1:
            flags[0] = False
        values = start + 2 * np.flatnonzero(flags).astype(np.int64)
        yield values
        start = stop


def prime_window(lo: int, hi: int) -> list:
    """Consecutive primes in [lo, hi] via a segmented sieve."""
    out = []
    for seg in prime_segments(lo, hi):
        out.extend(int(v) for v in seg)
    return out


# ---------------------------------------------------------------------------
# Polynomial and power sets
# ---------------------------------------------------------------------------


def _poly_eval(coeffs: Sequence[int], n: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = value * n + c
    return value


def polynomial_set(coeffs: Sequence[int], n_range: tuple) -> list:
    """Sorted distinct values sum c_i n^i for integer n in [lo, hi] (coefficients ascending)."""
    lo, hi = n_range
    if hi < lo:
        raise DomainError("empty range")
    check_guard(hi - lo + 1, SET_GUARD, "polynomial set size")
    return sorted({_poly_eval(coeffs, n) for n in range(lo, hi + 1)})


def power_set(n_range: tuple, base: Optional[int] = None, exponent: Optional[int] = None) -> list:
    """{base^n} or {n^exponent} for integer n in the range; exactly one form must be given."""
    if (base is None) == (exponent is None):
        raise DomainError("give exactly one of base or exponent")
    lo, hi = n_range
    if hi < lo or (base is not None and lo < 0):
        raise DomainError("invalid range for power set")
    check_guard(hi - lo + 1, SET_GUARD, "power set size")
    if base is not None:
        if base < 2:
            raise DomainError("base must be at least 2")
        return [base**n for n in range(lo, hi + 1)]
    return sorted({n**exponent for n in range(lo, hi + 1)})


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def figure1_family() -> FamilyInstance:
    """Six half-planes whose intersection is a hexagon holding three lattice points in a row.

    Any five of them leave a region containing a box with four lattice points.
    """
    rows = [
        ((-1, 0), 1),  # x >= -1
        ((1, 0), 1),  # x <= 1
        ((-1, 2), 2),  # x - 2y >= -2
        ((-1, -2), 2),  # x + 2y >= -2
        ((1, 2), 2),  # x + 2y <= 2
        ((1, -2), 2),  # x - 2y <= 2
    ]
    return halfplane_family(2, rows, "F")


def hypercube_family(d: int, t: int) -> FamilyInstance:
    """The 2d halfspaces 0 <= x_i and x_i <= t, one set each."""
    if d < 1 or t < 0:
        raise DomainError("need d >= 1 and t >= 0")
    rows = []
    for i in range(d):
        e = [0] * d
        e[i] = -1
        rows.append((tuple(e), 0))
        e = [0] * d
        e[i] = 1
        rows.append((tuple(e), t))
    return halfplane_family(d, rows, "C")


def cross_polytope_family(d: int) -> FamilyInstance:
    """The 2^d halfspaces sum s_i x_i <= 1 over sign vectors s."""
    if d < 1:
        raise DomainError("need d >= 1")
    rows = [(signs, 1) for signs in itertools.product((1, -1), repeat=d)]
    return halfplane_family(d, rows, "X")


def cube_vertex_family(d: int) -> FamilyInstance:
    """The sets conv({0,1}^d minus x), one per cube vertex x (d <= 3).

    Each is the unit cube cut by the plane through the neighbours of x.
    """
    if not 1 <= d <= 3:
        raise DomainError("cube vertex family is provided for 1 <= d <= 3")
    faces = []
    for i in range(d):
        e = [0] * d
        e[i] = -1
        faces.append(Halfspace(tuple(e), 0))
        e = [0] * d
        e[i] = 1
        faces.append(Halfspace(tuple(e), 1))
    sets = []
    for x in itertools.product((0, 1), repeat=d):
        normal = tuple(1 if xi else -1 for xi in x)
        cut = Halfspace(normal, sum(x) - 1)
        sets.append(Polyhedron(d, tuple(faces) + (cut,), "Q-" + "".join(map(str, x))))
    return FamilyInstance(d, tuple(sets))


# ---------------------------------------------------------------------------
# Syndetic construction
# ---------------------------------------------------------------------------

DEFAULT_ALPHA = SurdScalar(Fraction(1), Fraction(1), 2)


@dataclass(frozen=True)
class Convergent:
    q: int
    p: int


def dirichlet_convergents(alpha: SurdScalar, count: int) -> list:
    """Continued-fraction convergents p/q with p - q*alpha > 0, in order.

    Each returned pair is checked to satisfy 0 < p - q*alpha < 1/q, and the
    quotients p/q are checked to decrease strictly.
    """
    if not isinstance(alpha, SurdScalar) or alpha.is_rational():
        raise DomainError("alpha must be an irrational quadratic surd")
    if alpha <= 2:
        raise DomainError("alpha must exceed 2")
    if count < 1:
        raise DomainError("count must be positive")
    out = []
    x = alpha
    p_prev, p = 1, x.floor()
    q_prev, q = 0, 1
    a = p
    while len(out) < count:
        if (alpha * q - p).sign() < 0:
            out.append(Convergent(q, p))
        x = (x - a).inverse()
        a = x.floor()
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    for c in out:
        gap = -(alpha * c.q - c.p)
        if not (gap.sign() > 0 and (gap - Fraction(1, c.q)).sign() < 0):
            raise AssertionError(f"convergent {c} fails 0 < p - q*alpha < 1/q")
        if math.gcd(c.p, c.q) != 1:
            raise AssertionError(f"convergent {c} is not reduced")
    for c, d in zip(out, out[1:]):
        if not c.p * d.q > d.p * c.q:
            raise AssertionError("convergent quotients are not strictly decreasing")
    return out


def _interval_hit(intervals, m) -> Optional[int]:
    for idx, (lo, hi) in enumerate(intervals):
        if lo <= m <= hi:
            return idx
    return None


def _strip_heights(alpha: SurdScalar, width: int) -> list:
    """ceil(alpha*u) for u = 0..width: the unique integer height in [alpha*u, alpha*u + 1)."""
    return [(alpha * u).ceil() for u in range(width + 1)]


@dataclass(frozen=True)
class SyndeticConstruction:
    alpha: SurdScalar
    convergents: tuple
    polygons: tuple  # untranslated P_n vertex lists, n = 1..nMax
    translations: tuple  # integer vectors w_n
    window_bound: int
    projection_gap: int
    set_a: tuple
    classes: dict = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return len(self.polygons)

    def translated(self, n: int) -> list:
        wx, wy = self.translations[n - 1]
        return [(x + wx, y + wy) for x, y in self.polygons[n - 1]]

    def x_interval(self, n: int) -> tuple:
        q = self.translated(n)
        return min(v[0] for v in q), max(v[0] for v in q)

    def y_interval(self, n: int) -> tuple:
        q = self.translated(n)
        return min(v[1] for v in q), max(v[1] for v in q)

    def to_json(self) -> dict:
        return {
            "type": "syndetic",
            "alpha": self.alpha.format(),
            "convergents": [[c.q, c.p] for c in self.convergents],
            "polygons": [[list(v) for v in poly] for poly in self.polygons],
            "translations": [list(w) for w in self.translations],
            "window_bound": self.window_bound,
            "projection_gap": self.projection_gap,
            "set_a": list(self.set_a),
            "classes": self.classes,
        }

    @classmethod
    def from_json(cls, data: dict) -> "SyndeticConstruction":
        return cls(
            SurdScalar.parse(data["alpha"]),
            tuple(Convergent(int(q), int(p)) for q, p in data["convergents"]),
            tuple(tuple((int(x), int(y)) for x, y in poly) for poly in data["polygons"]),
            tuple((int(x), int(y)) for x, y in data["translations"]),
            int(data["window_bound"]),
            int(data["projection_gap"]),
            tuple(int(a) for a in data["set_a"]),
            data.get("classes", {}),
        )


def _polygon_vertices(convs: list, n: int) -> tuple:
    """Vertices 0, v_0, ..., v_{n-1} with v_k the partial sums from the least j having q_j > n."""
    j = next(i for i, c in enumerate(convs) if c.q > n)
    if j + n > len(convs):
        raise ConstructionError(f"not enough convergents for P_{n}")
    verts = [(0, 0)]
    x = y = 0
    for c in convs[j : j + n]:
        x += c.q
        y += c.p
        verts.append((x, y))
    return tuple(verts)


def build_syndetic(
    alpha: SurdScalar = DEFAULT_ALPHA,
    n_max: int = 4,
    window_bound: int = 10**5,
    projection_gap: int = 2,
) -> SyndeticConstruction:
    """Build polygons P_1..P_nMax, place them greedily and grow the 2-syndetic set around them."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if projection_gap < 0:
        raise DomainError("projection gap must be nonnegative")
    check_guard(window_bound, SET_GUARD, "syndetic window")
    convs = []
    need = 1
    while True:
        convs = dirichlet_convergents(alpha, need)
        if any(c.q > n_max for c in convs) and len(convs) - next(
            i for i, c in enumerate(convs) if c.q > n_max
        ) >= n_max:
            break
        need += 1
    polygons = tuple(_polygon_vertices(convs, n) for n in range(1, n_max + 1))

    translations = []
    cursor = 0
    for n, poly in enumerate(polygons, start=1):
        width = max(v[0] for v in poly)
        height = max(v[1] for v in poly)
        wx = cursor
        wy = wx + width + projection_gap
        cursor = wy + height + projection_gap
        if wy + height > window_bound:
            raise ConstructionError(
                f"window bound {window_bound} cannot host P_{n} (needs {wy + height})"
            )
        translations.append((wx, wy))

    xs = []
    ys = []
    removed = {}
    b_set = set()
    for n, (poly, (wx, wy)) in enumerate(zip(polygons, translations), start=1):
        width = max(v[0] for v in poly)
        height = max(v[1] for v in poly)
        xs.append((wx, wx + width))
        ys.append((wy, wy + height))
        heights = _strip_heights(alpha, width)
        removed[n] = sorted({wy + h for h in heights if h <= height})
        for x, y in poly:
            b_set.update((x + wx, y + wy))
    removed_all = set().union(*removed.values())
    pi1, pi2, pi3 = [], [], []
    set_a = []
    for m in range(window_bound + 1):
        if _interval_hit(xs, m) is not None:
            pi1.append(m)
            set_a.append(m)
        elif _interval_hit(ys, m) is not None:
            pi2.append(m)
            if m not in removed_all or m in b_set:
                set_a.append(m)
        else:
            pi3.append(m)
            set_a.append(m)
    classes = {
        "pi1": [list(iv) for iv in xs],
        "pi2": [list(iv) for iv in ys],
        "pi3_count": len(pi3),
        "removed": {str(n): v for n, v in removed.items()},
        "B": sorted(b_set),
    }
    return SyndeticConstruction(
        alpha, tuple(convs), polygons, tuple(translations), window_bound, projection_gap, tuple(set_a), classes
    )


@dataclass
class SyndeticReport:
    valid: bool
    violations: list

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [{"check": c, "detail": d} for c, d in self.violations]}


def _column_bounds(hull: list, x) -> tuple:
    """Exact (low, high) of a convex polygon's vertical section at abscissa x."""
    lo = hi = None
    n = len(hull)
    for i in range(n):
        a, b = hull[i], hull[(i + 1) % n]
        if a[0] == b[0]:
            if a[0] == x:
                for y in (a[1], b[1]):
                    lo = y if lo is None else min(lo, y)
                    hi = y if hi is None else max(hi, y)
            continue
        if min(a[0], b[0]) <= x <= max(a[0], b[0]):
            y = a[1] + Fraction(b[1] - a[1], b[0] - a[0]) * (x - a[0])
            lo = y if lo is None else min(lo, y)
            hi = y if hi is None else max(hi, y)
    return lo, hi


def polygon_empty_in_product(vertices: Sequence, values: Sequence[int]) -> Optional[tuple]:
    """First point of values^2 strictly inside conv(vertices), or None.

    Scans columns x in values strictly between the extreme abscissae and
    bisects the sorted values for anything strictly between the section's
    bounds. A two-vertex polygon is checked along its open segment.
    """
    values = sorted(values)
    members = set(values)
    hull = convex_hull2(vertices)
    if len(hull) == 1:
        return None
    if len(hull) == 2:
        (x0, y0), (x1, y1) = hull
        steps = math.gcd(abs(x1 - x0), abs(y1 - y0))
        dx, dy = (x1 - x0) // steps, (y1 - y0) // steps
        for k in range(1, steps):
            pt = (x0 + k * dx, y0 + k * dy)
            if pt[0] in members and pt[1] in members:
                return pt
        return None
    xmin = min(v[0] for v in hull)
    xmax = max(v[0] for v in hull)
    for x in values[bisect.bisect_right(values, xmin) :]:
        if x >= xmax:
            break
        lo, hi = _column_bounds(hull, x)
        i = bisect.bisect_right(values, lo)
        if i < len(values) and values[i] < hi:
            return (x, values[i])
    return None


def verify_syndetic(c: SyndeticConstruction) -> SyndeticReport:
    """Check gaps, emptiness of every Q_n in A^2, projection disjointness and the removal rule."""
    violations = []
    a = list(c.set_a)
    a_set = set(a)
    W = c.window_bound
    # (i) gaps
    if not a:
        violations.append(("gaps", "set A is empty"))
    else:
        if a != sorted(a_set):
            violations.append(("gaps", "set A is not strictly increasing"))
        if a[0] > 1 or a[-1] < W - 1:
            violations.append(("gaps", f"set A does not reach both window ends: [{a[0]}, {a[-1]}]"))
        for u, v in zip(a, a[1:]):
            if v - u > 2:
                violations.append(("gaps", f"gap {v - u} between {u} and {v}"))
                break
    # (iii) projections pairwise disjoint
    intervals = []
    for n in range(1, c.n_max + 1):
        intervals.append((c.x_interval(n), f"pi1(Q_{n})"))
        intervals.append((c.y_interval(n), f"pi2(Q_{n})"))
    for (i1, name1), (i2, name2) in itertools.combinations(intervals, 2):
        if i1[0] <= i2[1] and i2[0] <= i1[1]:
            violations.append(("projections", f"{name1} = {list(i1)} meets {name2} = {list(i2)}"))
    for n in range(1, c.n_max + 1):
        poly = c.polygons[n - 1]
        q = c.translated(n)
        wx, wy = c.translations[n - 1]
        # (ii) Q_n is an empty polygon in A^2 within the window
        if len(poly) != n + 1:
            violations.append(("polygon", f"P_{n} has {len(poly)} vertices, expected {n + 1}"))
        if any(not (0 <= x <= W and 0 <= y <= W) for x, y in q):
            violations.append(("polygon", f"Q_{n} leaves the window [0, {W}]^2"))
        hull = convex_hull2(q)
        if len(hull) != len(q):
            violations.append(("polygon", f"Q_{n} has {len(hull)} hull vertices, expected {len(q)}"))
        elif len(q) >= 3 and not is_strictly_convex(hull):
            violations.append(("polygon", f"Q_{n} is not strictly convex"))
        missing = [v for v in q if v[0] not in a_set or v[1] not in a_set]
        if missing:
            violations.append(("polygon", f"vertex {missing[0]} of Q_{n} is not in A^2"))
        inside = polygon_empty_in_product(q, a)
        if inside is not None:
            violations.append(("polygon", f"point {inside} of A^2 lies inside Q_{n}"))
        # strip membership of P_n: 0 <= y - alpha x < 1
        for x, y in poly:
            s = c.alpha * (-x) + y
            if s.sign() < 0 or (s - 1).sign() >= 0:
                violations.append(("polygon", f"vertex {(x, y)} of P_{n} lies outside the strip"))
        # (iv) removal rule: strip heights never hit two consecutive integers
        width = max(v[0] for v in poly)
        height = max(v[1] for v in poly)
        heights = sorted({wy + h for h in _strip_heights(c.alpha, width) if h <= height})
        for u, v in zip(heights, heights[1:]):
            if v - u < 2:
                violations.append(("removal", f"strip of Q_{n} covers consecutive heights {u}, {v}"))
                break
        # strip points of A^2 must come from B^2: M_n cap A^2 = M_n cap B^2
        b_vals = {v for pt in q for v in pt}
        for u, h in enumerate(_strip_heights(c.alpha, width)):
            x, y = wx + u, wy + h
            if h <= height and x in a_set and y in a_set and not (x in b_vals and y in b_vals):
                violations.append(("strip", f"strip point {(x, y)} of M_{n} is in A^2 but not B^2"))
                break
    return SyndeticReport(not violations, violations)
