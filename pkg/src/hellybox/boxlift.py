"""Lifting families of convex sets to the space of box corners.

A box bx(x, y) lies in {a.z <= c} exactly when its a-maximising corner
does, i.e. when sum_{a_i>0} a_i y_i + sum_{a_i<0} a_i x_i <= c. Every
search here works on that lifted description.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, ScaleError, check_guard
from .exact import as_scalar
from .lattice import Box, lattice_count_box
from .polyhedra import Halfspace, LinearSystem, Polyhedron, _primitive, coordinate_bounds, intersect

MAX_SEARCH_DIM = 3
DEFAULT_WINDOW = 24
SUBFAMILY_GUARD = 10**6


# ---------------------------------------------------------------------------
# Lifting
# ---------------------------------------------------------------------------


def lift_halfspace(h: Halfspace) -> Halfspace:
    """The lifted constraint over (x_1..x_d, y_1..y_d)."""
    d = h.dim
    coeffs = [Fraction(0)] * (2 * d)
    for i, a in enumerate(h.normal):
        if a > 0:
            coeffs[d + i] = a
        elif a < 0:
            coeffs[i] = a
    return Halfspace(tuple(coeffs), h.offset)


def ordering_constraints(d: int, thickness=0) -> list:
    """x_i - y_i <= -t for every coordinate (t = 0 gives y >= x)."""
    t = as_scalar(thickness)
    out = []
    for i in range(d):
        coeffs = [0] * (2 * d)
        coeffs[i], coeffs[d + i] = 1, -1
        out.append(Halfspace(tuple(coeffs), -t))
    return out


@dataclass(frozen=True)
class LiftedSystem:
    """B_F for a family: lifted constraints plus the ordering y >= x.

    ``provenance[j]`` is the index of the source set of constraint j, or
    ``None`` for ordering constraints.
    """

    dim: int
    constraints: tuple
    provenance: tuple

    @property
    def nvars(self) -> int:
        return 2 * self.dim

    def linear_system(self) -> LinearSystem:
        return LinearSystem.build(self.nvars, [(h.normal, h.offset) for h in self.constraints])

    def contains(self, x: Sequence, y: Sequence) -> bool:
        point = list(x) + list(y)
        return all(h.contains(point) for h in self.constraints)


def lift_family(family: Sequence[Polyhedron], dim: Optional[int] = None) -> LiftedSystem:
    if dim is None:
        if not family:
            raise DomainError("an empty family needs an explicit dimension")
        dim = family[0].dim
    cons, prov = [], []
    for idx, poly in enumerate(family):
        if poly.dim != dim:
            raise DomainError("all polyhedra must share a dimension")
        for h in poly.constraints:
            cons.append(lift_halfspace(h))
            prov.append(idx)
    for h in ordering_constraints(dim):
        cons.append(h)
        prov.append(None)
    return LiftedSystem(dim, tuple(cons), tuple(prov))


def axis_project(system, var: int) -> LinearSystem:
    """Fourier-Motzkin projection along one variable of a lifted (or plain) system."""
    if isinstance(system, LiftedSystem):
        system = system.linear_system()
    if not 0 <= var < system.nvars:
        raise DomainError(f"variable index {var} out of range")
    return system.eliminate(var)


# ---------------------------------------------------------------------------
# Corner modes
# ---------------------------------------------------------------------------


def parse_corner_mode(mode, d: int) -> tuple:
    """Normalise a corner mode to (lower_is_int, upper_is_int) tuples of bools.

    Accepts ``"integer"``/``"real"`` per side, a string of ``i``/``r`` letters
    per coordinate, or a pair of either, e.g. ``("integer", "rri")``.
    """
    if isinstance(mode, str):
        parts = [p.strip() for p in mode.split(",")]
        if len(parts) == 1:
            parts = parts * 2
    else:
        parts = list(mode)
    if len(parts) != 2:
        raise DomainError(f"corner mode {mode!r} needs a lower and an upper part")

    def side(spec):
        if isinstance(spec, (tuple, list)) and all(isinstance(v, bool) for v in spec):
            if len(spec) != d:
                raise DomainError("per-coordinate corner mode has wrong length")
            return tuple(spec)
        spec = str(spec).lower()
        if spec in ("integer", "int", "z"):
            return (True,) * d
        if spec in ("real", "r"):
            return (False,) * d
        if len(spec) == d and set(spec) <= {"i", "r"}:
            return tuple(c == "i" for c in spec)
        raise DomainError(f"cannot parse corner mode part {spec!r}")

    return side(parts[0]), side(parts[1])


# ---------------------------------------------------------------------------
# Search results
# ---------------------------------------------------------------------------


FOUND = "FOUND"
NO_BOX = "NO_BOX"
UNBOUNDED = "UNBOUNDED"


@dataclass
class BoxSearchResult:
    """Outcome of :func:`max_lattice_box`.

    ``exhaustive`` is False only when the region was unbounded and had to be
    clipped to a window without an exactness argument; the count is then a
    lower bound on the true maximum.
    """

    status: str
    box: Optional[Box] = None
    count: int = 0
    ray: Optional[tuple] = None
    exhaustive: bool = True
    window: Optional[list] = None

    def at_least(self, n: int) -> bool:
        return self.status == UNBOUNDED or (self.status == FOUND and self.count >= n)

    def grown(self, steps: int) -> Box:
        """For UNBOUNDED results: the seed box moved ``steps`` times along the ray."""
        if self.status != UNBOUNDED:
            raise DomainError("only unbounded results carry a growth ray")
        d = self.box.dim
        dx, dy = self.ray[:d], self.ray[d:]
        return Box(
            tuple(l + steps * s for l, s in zip(self.box.lower, dx)),
            tuple(h + steps * s for h, s in zip(self.box.upper, dy)),
        )

    def to_json(self) -> dict:
        out = {"status": self.status, "count": self.count, "exhaustive": self.exhaustive}
        if self.box is not None:
            out["box"] = self.box.to_json()
        if self.ray is not None:
            out["ray"] = [str(v) for v in self.ray]
        if self.window is not None:
            out["window"] = [[str(a), str(b)] for a, b in self.window]
        return out


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _integer_vector(values) -> tuple:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return tuple(v // g for v in ints) if g else tuple(ints)


def _box_fits(poly: Polyhedron, x: Sequence, y: Sequence) -> bool:
    for h in poly.constraints:
        s = 0
        for a, lo, hi in zip(h.normal, x, y):
            s += a * (hi if a > 0 else lo)
        if s > h.offset:
            return False
    return True


def growth_ray(poly: Polyhedron, thickness=0) -> Optional[tuple]:
    """An integer recession direction of B_F along which some edge grows, or None."""
    d = poly.dim
    rows = [(lift_halfspace(h).normal, 0) for h in poly.constraints]
    for h in ordering_constraints(d):
        rows.append((h.normal, 0))
    # sum(dy - dx) >= 1
    rows.append((tuple([1] * d + [-1] * d), -1))
    point = LinearSystem.build(2 * d, rows).find_point()
    if point is None:
        return None
    return _integer_vector(point)


def _recession_direction_2d(poly: Polyhedron) -> Optional[tuple]:
    """For an unbounded planar polyhedron without box growth: (r, is_line)."""
    normals = [h.normal for h in poly.constraints]
    cands = []
    for a in normals:
        cands.append((-a[1], a[0]))
        cands.append((a[1], -a[0]))
    inside = []
    for u in cands:
        if all(a[0] * u[0] + a[1] * u[1] <= 0 for a in normals):
            inside.append(_integer_vector(u))
    if not inside:
        return None
    r = inside[0]
    is_line = (-r[0], -r[1]) in inside
    return r, is_line


def _vertices_2d(poly: Polyhedron) -> list:
    verts = []
    cons = poly.constraints
    for h1, h2 in itertools.combinations(cons, 2):
        (a, b), (c, e) = h1.normal, h2.normal
        det = a * e - b * c
        if det == 0:
            continue
        x = (h1.offset * e - b * h2.offset) / det
        y = (a * h2.offset - c * h1.offset) / det
        if poly.contains((x, y)):
            verts.append((x, y))
    return verts


def _max_edge(poly: Polyhedron, i: int) -> Optional[Fraction]:
    """Largest y_i - x_i over boxes inside poly (None if unbounded)."""
    d = poly.dim
    rows = [(lift_halfspace(h).normal, h.offset) for h in poly.constraints]
    rows += [(h.normal, h.offset) for h in ordering_constraints(d)]
    # add variable s = y_i - x_i as an extra column
    width = 2 * d + 1
    ext = [(tuple(c) + (0,), r) for c, r in rows]
    link = [0] * width
    link[i], link[d + i], link[2 * d] = -1, 1, -1
    ext.append((tuple(link), 0))
    ext.append((tuple(-v for v in link), 0))
    iv = LinearSystem.build(width, ext).bounds(2 * d)
    if iv is None:
        return Fraction(0)
    return iv[1]


def _clip(poly: Polyhedron, extra: list) -> Polyhedron:
    return Polyhedron(poly.dim, poly.constraints + tuple(extra))


def _cube(center: Sequence, radius: int) -> list:
    d = len(center)
    out = []
    for i in range(d):
        e = [0] * d
        e[i] = 1
        out.append(Halfspace(tuple(e), center[i] + radius))
        e = [0] * d
        e[i] = -1
        out.append(Halfspace(tuple(e), -(center[i] - radius)))
    return out


# ---------------------------------------------------------------------------
# Candidate search
# ---------------------------------------------------------------------------


def _realise(poly, a, b, t, lower_int, upper_int) -> Optional[Box]:
    """A t-thick box in poly, with the requested corner integrality, containing [a, b].

    Lifted constraints are nonincreasing in every x_i and nondecreasing in
    every y_i, so each corner is pushed as far inward as thickness allows;
    only coordinates with both corners real and a thickness deficit keep a
    free split parameter, decided by exact elimination.
    """
    d = len(a)
    x, y = [None] * d, [None] * d
    free = []  # (coord, deficit)
    for i in range(d):
        deficit = t - (b[i] - a[i])
        if deficit <= 0:
            x[i], y[i] = Fraction(a[i]), Fraction(b[i])
        elif lower_int[i] and upper_int[i]:
            return None
        elif lower_int[i]:
            x[i], y[i] = Fraction(a[i]), a[i] + t
        elif upper_int[i]:
            x[i], y[i] = b[i] - t, Fraction(b[i])
        else:
            free.append((i, deficit))
    if not free:
        return Box(tuple(x), tuple(y)) if _box_fits(poly, x, y) else None
    # variables lambda_j in [0, deficit_j]: x = a - lambda, y = b + deficit - lambda
    k = len(free)
    pos = {i: j for j, (i, _) in enumerate(free)}
    rows = []
    for h in poly.constraints:
        coeffs = [Fraction(0)] * k
        rhs = h.offset
        for i, c in enumerate(h.normal):
            if c == 0:
                continue
            if i in pos:
                j = pos[i]
                deficit = free[j][1]
                if c > 0:  # uses y_i = b_i + deficit - lambda
                    rhs -= c * (b[i] + deficit)
                    coeffs[j] -= c
                else:  # uses x_i = a_i - lambda
                    rhs -= c * a[i]
                    coeffs[j] -= c
            else:
                rhs -= c * (y[i] if c > 0 else x[i])
        rows.append((coeffs, rhs))
    for j, (_, deficit) in enumerate(free):
        e = [0] * k
        e[j] = 1
        rows.append((list(e), deficit))
        e[j] = -1
        rows.append((list(e), 0))
    sol = LinearSystem.build(k, rows).find_point()
    if sol is None:
        return None
    for j, (i, deficit) in enumerate(free):
        x[i] = a[i] - sol[j]
        y[i] = b[i] + deficit - sol[j]
    return Box(tuple(x), tuple(y))


def _lattice_points(region: Polyhedron, ranges: list) -> set:
    """Integer points of ``region`` inside the coordinate ranges.

    Rows are scaled to coprime integers with floored right-hand sides, which
    is exact on integer points; the grid is tested with int64 arithmetic when
    no product can overflow, with Python integers otherwise.
    """
    rows = []
    for h in region.constraints:
        coeffs, rhs = _primitive(h.normal, h.offset)
        rows.append((coeffs, math.floor(rhs)))
    if not rows:
        return set(itertools.product(*(range(l, h + 1) for l, h in ranges)))
    reach = max(max(abs(l), abs(h)) for l, h in ranges) + 1
    big = max(max(abs(c) for c in coeffs) for coeffs, _ in rows)
    if big * reach * len(ranges) < 2**62 and max(abs(r) for _, r in rows) < 2**62:
        axes = [np.arange(l, h + 1, dtype=np.int64) for l, h in ranges]
        grid = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
        A = np.array([c for c, _ in rows], dtype=np.int64)
        b = np.array([r for _, r in rows], dtype=np.int64)
        ok = np.all(grid @ A.T <= b, axis=1)
        return set(map(tuple, grid[ok].tolist()))
    return {
        p
        for p in itertools.product(*(range(l, h + 1) for l, h in ranges))
        if all(sum(c * z for c, z in zip(coeffs, p)) <= r for coeffs, r in rows)
    }


def _search_region(region, poly, t, lower_int, upper_int, max_dim, target):
    """Best (count, box) over lattice sub-boxes lying in ``region``; fits checked in ``poly``."""
    bounds = coordinate_bounds(region)
    if bounds is None:
        return 0, None
    d = region.dim
    ranges = []
    for lo, hi in bounds:
        lo_i, hi_i = math.ceil(lo), math.floor(hi)
        if lo_i > hi_i:
            return 0, None
        ranges.append((lo_i, hi_i))
    size = math.prod(h - l + 1 for l, h in ranges)
    check_guard(size, 10**6, "lattice points in search region")
    inside = _lattice_points(region, ranges)
    if not inside:
        return 0, None

    best_count, best_box = 0, None

    def corners_in(lo, hi):
        return all(c in inside for c in itertools.product(*zip(lo, hi)))

    for a in sorted(inside):
        upper_cap = math.prod(ranges[i][1] - a[i] + 1 for i in range(d))
        if upper_cap <= best_count and best_box is not None:
            continue
        # depth-first over b, coordinate by coordinate, pruning by containment
        def rec(i, b, grown):
            nonlocal best_count, best_box
            if i == d:
                cnt = math.prod(b[j] - a[j] + 1 for j in range(d))
                if cnt > best_count or best_box is None:
                    box = _realise(poly, a, b, t, lower_int, upper_int)
                    if box is not None:
                        real = lattice_count_box(box)
                        if real > best_count or best_box is None:
                            best_count, best_box = real, box
                return
            for v in range(a[i], ranges[i][1] + 1):
                g = grown + (v > a[i])
                if max_dim is not None and g > max_dim:
                    break
                b[i] = v
                if not corners_in(a, b):
                    break
                # optimistic bound for the remaining coordinates
                cap = math.prod(b[j] - a[j] + 1 for j in range(i + 1)) * math.prod(
                    ranges[j][1] - a[j] + 1 for j in range(i + 1, d)
                )
                if best_box is not None and cap <= best_count:
                    continue
                rec(i + 1, b, g)
                if target is not None and best_count >= target:
                    return
            b[i] = a[i]

        rec(0, list(a), 0)
        if target is not None and best_count >= target:
            break
    return best_count, best_box


def _real_relaxation_box(poly, t, lower_int, upper_int, region) -> Optional[Box]:
    """Any t-thick box with the corner integrality, ignoring lattice points."""
    d = poly.dim
    rows = [(lift_halfspace(h).normal, h.offset) for h in poly.constraints]
    rows += [(h.normal, h.offset) for h in ordering_constraints(d, t)]
    base = LinearSystem.build(2 * d, rows)
    int_vars = [i for i in range(d) if lower_int[i]] + [d + i for i in range(d) if upper_int[i]]
    if not int_vars:
        p = base.find_point()
        return None if p is None else Box(tuple(p[:d]), tuple(p[d:]))
    if len(int_vars) == 2 * d:
        # all corners integral: every candidate is a lattice sub-box the
        # region search has already tried
        return None
    bounds = coordinate_bounds(region)
    if bounds is None:
        return None
    ranges = []
    for v in int_vars:
        lo, hi = bounds[v % d]
        ranges.append(range(math.ceil(lo), math.floor(hi) + 1))
    for values in itertools.product(*ranges):
        sys = base
        for v, val in zip(int_vars, values):
            sys = sys.restrict(v, val)
        p = sys.find_point()
        if p is not None:
            for v, val in zip(int_vars, values):
                p[v] = Fraction(val)
            return Box(tuple(p[:d]), tuple(p[d:]))
    return None


def max_lattice_box(
    family: Sequence[Polyhedron],
    thickness=0,
    corner_mode="real",
    *,
    dim: Optional[int] = None,
    max_dim: Optional[int] = None,
    target: Optional[int] = None,
    window: int = DEFAULT_WINDOW,
) -> BoxSearchResult:
    """Maximise the lattice count of a t-thick box inside the family's intersection.

    ``corner_mode`` fixes which corner coordinates must be integers (see
    :func:`parse_corner_mode`). ``max_dim`` restricts to boxes with at most
    that many nondegenerate edges. With ``target`` set the search stops as
    soon as a box with that many points is found (the count is then not
    necessarily maximal). Ties go to the lexicographically least lattice
    sub-box (lower, upper).
    """
    family = list(family)
    if dim is None:
        if not family:
            raise DomainError("an empty family needs an explicit dimension")
        dim = family[0].dim
    if dim > MAX_SEARCH_DIM:
        raise ScaleError(f"box search supports d <= {MAX_SEARCH_DIM}, got {dim}")
    t = as_scalar(thickness)
    if t < 0:
        raise DomainError("thickness must be nonnegative")
    if max_dim is not None and max_dim < dim and t > 0:
        raise DomainError("degenerate boxes cannot be t-thick for t > 0")
    lower_int, upper_int = parse_corner_mode(corner_mode, dim)
    poly = intersect(family) if family else Polyhedron(dim)

    bounds = coordinate_bounds(poly)
    if bounds is None:
        return BoxSearchResult(NO_BOX)
    bounded = all(lo is not None and hi is not None for lo, hi in bounds)

    region, exhaustive = poly, True
    if not bounded:
        ray = growth_ray(poly, t) if max_dim is None or max_dim >= dim else None
        center = [round(v) for v in LinearSystem.build(
            dim, [(h.normal, h.offset) for h in poly.constraints]).find_point()]
        if ray is not None:
            clipped = _clip(poly, _cube(center, window))
            count, box = _search_region(clipped, poly, t, lower_int, upper_int, max_dim, 1)
            if box is not None and count >= 1:
                return BoxSearchResult(UNBOUNDED, box, count, ray, True,
                                       coordinate_bounds(clipped))
            exhaustive = False
            region = clipped
        elif dim == 2 and max_dim is None:
            region = _fundamental_region_2d(poly)
        else:
            region, exhaustive = _clip(poly, _cube(center, window)), False

    count, box = _search_region(region, poly, t, lower_int, upper_int, max_dim, target)
    if box is None:
        box = _real_relaxation_box(poly, t, lower_int, upper_int, region)
        if box is None or (max_dim is not None and max_dim < dim):
            return BoxSearchResult(NO_BOX, exhaustive=exhaustive)
        count = lattice_count_box(box)
    win = None if region is poly else coordinate_bounds(region)
    return BoxSearchResult(FOUND, box, count, None, exhaustive, win)


def _fundamental_region_2d(poly: Polyhedron) -> Polyhedron:
    """A bounded piece of an unbounded planar region containing a translate of every box.

    Without box growth the recession cone is a ray or a line spanned by an
    integer vector r. Boxes deep enough along r can be shifted back by -r
    without leaving the region, so only boxes whose r-height lies below the
    last vertex plus |r|^2 plus the largest possible r-spread of a box need
    be examined.
    """
    found = _recession_direction_2d(poly)
    if found is None:
        raise DomainError("expected an unbounded planar region")
    r, is_line = found
    rr = r[0] * r[0] + r[1] * r[1]
    spread = sum(abs(r[i]) * _max_edge(poly, i) for i in range(2))
    if is_line:
        low = Fraction(0)
        # shift reference so the strip slab is anchored at a feasible point
        p = LinearSystem.build(2, [(h.normal, h.offset) for h in poly.constraints]).find_point()
        low = r[0] * p[0] + r[1] * p[1]
        extra = [
            Halfspace((-r[0], -r[1]), -low),
            Halfspace((r[0], r[1]), low + rr + spread),
        ]
    else:
        verts = _vertices_2d(poly)
        top = max(r[0] * v[0] + r[1] * v[1] for v in verts)
        extra = [Halfspace((r[0], r[1]), top + rr + spread)]
    return _clip(poly, extra)


# ---------------------------------------------------------------------------
# Subfamily checks
# ---------------------------------------------------------------------------


@dataclass
class SubfamilyCheck:
    passed: bool
    checked: int
    failing: Optional[tuple] = None
    result: Optional[BoxSearchResult] = None
    exhaustive: bool = True

    def to_json(self) -> dict:
        out = {"passed": self.passed, "checked": self.checked, "exhaustive": self.exhaustive}
        if self.failing is not None:
            out["failing_subfamily"] = list(self.failing)
            out["best"] = self.result.to_json()
        return out


def _check_one(args):
    family, idx, n, t, mode, dim, max_dim = args
    res = max_lattice_box([family[i] for i in idx], t, mode, dim=dim, max_dim=max_dim, target=n)
    return idx, res, res.at_least(n)


def subfamily_check(
    family: Sequence[Polyhedron],
    size: int,
    min_points: int = 1,
    thickness=0,
    corner_mode="real",
    *,
    dim: Optional[int] = None,
    max_dim: Optional[int] = None,
    threads: int = 1,
) -> SubfamilyCheck:
    """Does every ``size``-subfamily contain a t-thick box with ``min_points`` lattice points?

    Families with at most ``size`` members are checked as a whole. Returns
    the first failing subfamily in lexicographic index order.
    """
    family = list(family)
    if dim is None:
        if not family:
            raise DomainError("an empty family needs an explicit dimension")
        dim = family[0].dim
    m = len(family)
    h = min(size, m)
    check_guard(math.comb(m, h), SUBFAMILY_GUARD, "subfamilies")
    jobs = ((family, idx, min_points, thickness, corner_mode, dim, max_dim)
            for idx in itertools.combinations(range(m), h))
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            return _collect(pool.map(_check_one, jobs, chunksize=16))
    return _collect(map(_check_one, jobs))


def _collect(results) -> SubfamilyCheck:
    exhaustive = True
    checked = 0
    for idx, res, ok in results:
        checked += 1
        exhaustive &= res.exhaustive
        if not ok:
            return SubfamilyCheck(False, checked, idx, res, exhaustive)
    return SubfamilyCheck(True, checked, None, None, exhaustive)
