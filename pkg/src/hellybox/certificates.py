"""Empty-polygon certificates, Hoffman's criterion oracles, the gap-ratio
scanner for product sets A x A, and Helly-number bound records.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError, PredicateViolation, check_guard
from .exact import (
    Point2,
    as_scalar,
    convex_hull2,
    format_scalar,
    is_strictly_convex,
    load_scalar,
    orientation,
)
from .hulls import in_convex_hull

INTERSECT_EMPTY_GUARD = 12
MAX_INTERSECT_GUARD = 16
POLYGON_DP_GUARD = 10**4


# ---------------------------------------------------------------------------
# Host sets
# ---------------------------------------------------------------------------


def factor_values(factor: dict, lo, hi) -> list:
    """Sorted elements of a one-dimensional generator within [lo, hi]."""
    from .constructions import polynomial_set, prime_window

    lo, hi = as_scalar(lo), as_scalar(hi)
    kind = factor.get("generator")
    ilo, ihi = math.ceil(lo), math.floor(hi)
    if kind == "explicit":
        return sorted({as_scalar(v) if not isinstance(v, int) else v for v in factor["values"] if lo <= v <= hi})
    if kind == "primes":
        return prime_window(max(ilo, 0), ihi) if ihi >= 2 else []
    if kind == "power":
        base = int(factor["base"])
        out, v = [], 1
        while v <= ihi:
            if v >= ilo:
                out.append(v)
            v *= base
        return out
    if kind == "polynomial":
        coeffs = [int(c) for c in factor["coefficients"]]
        n_lo = int(factor.get("n_min", 0))
        vals = []
        n = n_lo
        prev = None
        # increasing on the scanned range, so stop once past hi
        while True:
            v = sum(c * n**i for i, c in enumerate(coeffs))
            if prev is not None and v <= prev:
                raise DomainError("polynomial generator must be strictly increasing from n_min")
            if v > ihi:
                break
            if v >= ilo:
                vals.append(v)
            prev = v
            n += 1
            check_guard(n - n_lo, 10**7, "polynomial host size")
        return vals
    raise DomainError(f"unknown generator {kind!r}")


def host_points(host: dict, window: tuple) -> list:
    """Points of the host set A x A inside the square window [lo, hi]^2."""
    if host.get("kind", "product") != "product":
        raise DomainError(f"unsupported host kind {host.get('kind')!r}")
    lo, hi = window
    vals = factor_values(host["factor"], lo, hi)
    return [Point2(x, y) for x in vals for y in vals]


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolygonCertificate:
    """A claimed empty convex polygon in a discrete host set, scoped to a window."""

    vertices: tuple
    host: dict
    window: tuple
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(Point2.of(*v) for v in self.vertices))
        object.__setattr__(self, "window", tuple(as_scalar(w) for w in self.window))

    def to_json(self) -> dict:
        return {
            "type": "polygon",
            "vertices": [[format_scalar(v.x), format_scalar(v.y)] for v in self.vertices],
            "host": self.host,
            "window": [format_scalar(w) for w in self.window],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolygonCertificate":
        if data.get("type") != "polygon":
            raise DomainError("not a polygon certificate")
        return cls(
            tuple((load_scalar(x), load_scalar(y)) for x, y in data["vertices"]),
            data["host"],
            tuple(load_scalar(w) for w in data["window"]),
            data.get("provenance", {}),
        )


@dataclass(frozen=True)
class RatioRunCertificate:
    """A run of nonincreasing gap ratios t(b) >= ... >= t(b+m) with k strict steps."""

    values: tuple
    base_index: int
    run_length: int
    strict_count: int
    host: dict = field(default_factory=dict)
    window: tuple = ()
    provenance: dict = field(default_factory=dict)

    @property
    def lower_bound(self) -> int:
        return self.strict_count + 4

    def to_json(self) -> dict:
        return {
            "type": "ratio-run",
            "values": [format_scalar(v) for v in self.values],
            "base_index": self.base_index,
            "run_length": self.run_length,
            "strict_count": self.strict_count,
            "lower_bound": self.lower_bound,
            "host": self.host,
            "window": [format_scalar(w) for w in self.window],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "RatioRunCertificate":
        if data.get("type") != "ratio-run":
            raise DomainError("not a ratio-run certificate")
        return cls(
            tuple(load_scalar(v) for v in data["values"]),
            int(data["base_index"]),
            int(data["run_length"]),
            int(data["strict_count"]),
            data.get("host", {}),
            tuple(load_scalar(w) for w in data.get("window", [])),
            data.get("provenance", {}),
        )


def certificate_from_json(data: dict):
    kind = data.get("type")
    if kind == "polygon":
        return PolygonCertificate.from_json(data)
    if kind == "ratio-run":
        return RatioRunCertificate.from_json(data)
    raise DomainError(f"unknown certificate type {kind!r}")


# ---------------------------------------------------------------------------
# Empty polygons
# ---------------------------------------------------------------------------


@dataclass
class EmptinessReport:
    valid: bool
    reason: str = ""
    offender: Optional[tuple] = None

    def to_json(self) -> dict:
        out = {"valid": self.valid, "reason": self.reason}
        if self.offender is not None:
            out["offender"] = [[format_scalar(c) for c in p] for p in self.offender]
        return out


def check_empty_polygon(cert: PolygonCertificate, S: Iterable) -> EmptinessReport:
    """Check convex position, membership in S and that no point of S is strictly inside."""
    verts = list(cert.vertices)
    points = {tuple(as_scalar(c) for c in p) for p in S}
    if not verts:
        return EmptinessReport(False, "certificate has no vertices")
    if len(set(verts)) != len(verts):
        return EmptinessReport(False, "repeated vertex")
    n = len(verts)
    if n >= 3:
        for i in range(n):
            tri = (verts[i - 2], verts[i - 1], verts[i])
            if orientation(*tri) <= 0:
                return EmptinessReport(False, "triple not in strictly convex counterclockwise position", tri)
        if not is_strictly_convex(verts):
            return EmptinessReport(False, "vertex walk winds more than once")
    for v in verts:
        if tuple(v) not in points:
            return EmptinessReport(False, "vertex not in the host set", (v,))
    if cert.window:
        lo, hi = cert.window
        for v in verts:
            if not (lo <= v.x <= hi and lo <= v.y <= hi):
                return EmptinessReport(False, "vertex outside the certified window", (v,))
    if n == 2:
        a, b = verts
        for p in sorted(points):
            if p != tuple(a) and p != tuple(b) and orientation(a, b, p) == 0:
                if min(a.x, b.x) <= p[0] <= max(a.x, b.x) and min(a.y, b.y) <= p[1] <= max(a.y, b.y):
                    return EmptinessReport(False, "point of S on the open segment", (Point2(*p),))
    if n >= 3:
        xmin, xmax = min(v.x for v in verts), max(v.x for v in verts)
        ymin, ymax = min(v.y for v in verts), max(v.y for v in verts)
        for p in sorted(points):
            if xmin < p[0] < xmax and ymin < p[1] < ymax:
                if all(orientation(verts[i - 1], verts[i], p) > 0 for i in range(n)):
                    return EmptinessReport(False, "point of S strictly inside", (Point2(*p),))
    return EmptinessReport(True, "valid")


def verify_polygon_certificate(cert: PolygonCertificate) -> EmptinessReport:
    """Materialise the certificate's host within its window and check it."""
    return check_empty_polygon(cert, host_points(cert.host, cert.window))


def check_intersect_empty(X: Sequence, S: Iterable) -> bool:
    """True if no point of S lies in conv(X minus x) for every x in X."""
    X = [tuple(p) for p in X]
    check_guard(len(X), INTERSECT_EMPTY_GUARD, "intersect-empty set size")
    if not X:
        raise DomainError("X must be nonempty")
    d = len(X[0])
    if d > 3:
        raise DomainError("intersect-empty checks are provided for d <= 3")
    if len(X) == 1:
        # conv of the empty set is empty, so the intersection is empty
        return True
    hulls = [X[:i] + X[i + 1 :] for i in range(len(X))]
    for s in S:
        s = tuple(s)
        if all(in_convex_hull(s, h) for h in hulls):
            return False
    return True


def _in_convex_position(X: list) -> bool:
    return all(not in_convex_hull(x, X[:i] + X[i + 1 :]) for i, x in enumerate(X))


def max_intersect_empty(S: Sequence) -> tuple:
    """Largest intersect-empty subset of a finite S, by exhaustive search (|S| <= 16).

    Returns (size, witness). A point of X inside the hull of the others lies
    in every conv(X minus x), so only subsets in convex position can qualify.
    """
    pts = sorted(set(tuple(p) for p in S))
    check_guard(len(pts), MAX_INTERSECT_GUARD, "exhaustive intersect-empty search")
    if not pts:
        return 0, ()
    for size in range(len(pts), 0, -1):
        for X in itertools.combinations(pts, size):
            X = list(X)
            if size > 2 and not _in_convex_position(X):
                continue
            if _intersect_empty_unchecked(X, pts):
                return size, tuple(X)
    return 0, ()


def _intersect_empty_unchecked(X, S) -> bool:
    if len(X) == 1:
        return True
    hulls = [X[:i] + X[i + 1 :] for i in range(len(X))]
    return not any(all(in_convex_hull(s, h) for h in hulls) for s in S)


def max_empty_convex_polygon(S: Sequence) -> tuple:
    """Largest empty convex polygon with vertices in a finite planar S.

    Returns (vertex count, counterclockwise witness). Segments count as 2
    when their open interior avoids S, single points as 1. The program fixes
    the lowest vertex p, orders the points above p by angle and extends
    convex chains p -> c_i -> c_j whose fan triangles p c_i c_j are empty;
    each fan diagonal p c_j must also avoid S on its open segment.
    O(|S|^4) overall.
    """
    pts = sorted({(as_scalar(p[0]), as_scalar(p[1])) for p in S}, key=lambda q: (q[1], q[0]))
    check_guard(len(pts), POLYGON_DP_GUARD, "empty polygon search")
    if len(pts) <= 1:
        return len(pts), tuple(Point2(*p) for p in pts)
    best = (1, (pts[0],))
    for a, b in itertools.combinations(sorted(pts), 2):
        if not any(p != a and p != b and _on_open_segment(p, a, b) for p in pts):
            best = (2, (a, b))
            break
    for pi, p in enumerate(pts):
        cand = pts[pi + 1 :]

        def cmp(u, v, p=p):
            o = orientation(p, u, v)
            if o:
                return -o
            du = abs(u[0] - p[0]) + abs(u[1] - p[1])
            dv = abs(v[0] - p[0]) + abs(v[1] - p[1])
            return (du > dv) - (du < dv)

        cand.sort(key=functools.cmp_to_key(cmp))
        m = len(cand)
        if m < 2:
            continue
        clear = [not any(_on_open_segment(q, p, c) for q in cand) for c in cand]
        empty = {}
        for i in range(m):
            for j in range(i + 1, m):
                if orientation(p, cand[i], cand[j]) > 0:
                    tri = (p, cand[i], cand[j])
                    empty[i, j] = not any(
                        all(orientation(tri[r - 1], tri[r], q) > 0 for r in range(3)) for q in cand
                    )
        f = {}
        parent = {}
        for (i, j), ok in empty.items():
            if ok:
                f[i, j] = 3
        for j in range(m):
            for i in range(j):
                val = f.get((i, j))
                if val is None or not clear[j]:
                    continue
                for k in range(j + 1, m):
                    if not empty.get((j, k)) or orientation(cand[i], cand[j], cand[k]) <= 0:
                        continue
                    if val + 1 > f.get((j, k), 0):
                        f[j, k] = val + 1
                        parent[j, k] = i
        for (j, k), val in sorted(f.items()):
            if val > best[0]:
                chain = [cand[k], cand[j]]
                key = (j, k)
                while key in parent:
                    i = parent[key]
                    chain.append(cand[i])
                    key = (i, key[0])
                best = (val, tuple([p] + chain[::-1]))
    return best[0], tuple(Point2(*v) for v in best[1])


def _on_open_segment(q, a, b) -> bool:
    if q == a or q == b or orientation(a, b, q) != 0:
        return False
    return min(a[0], b[0]) <= q[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])


# ---------------------------------------------------------------------------
# Gap-ratio runs
# ---------------------------------------------------------------------------


def _ratio_signs(values: Sequence) -> np.ndarray:
    """sign(t(n) - t(n+1)) = sign(g_{n+1}^2 - g_n g_{n+2}) for consecutive gaps g."""
    if len(values) < 4:
        return np.zeros(0, dtype=np.int8)
    arr = None
    if all(isinstance(v, (int, np.integer)) for v in values):
        arr = np.asarray(values, dtype=object)
        gaps = np.diff(arr)
        if len(gaps) and max(gaps) < 2**31 and min(gaps) > 0:
            g = gaps.astype(np.int64)
            diff = g[1:-1] * g[1:-1] - g[:-2] * g[2:]
            return np.sign(diff).astype(np.int8)
    vals = [as_scalar(v) for v in values]
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    out = np.empty(len(gaps) - 2, dtype=np.int8)
    for n in range(len(gaps) - 2):
        c = gaps[n + 1] * gaps[n + 1] - gaps[n] * gaps[n + 2]
        out[n] = (c > 0) - (c < 0)
    return out


class RatioScanner:
    """Streaming search for the nonincreasing t-run with the most strict steps.

    Values are fed in consecutive chunks; the last three values of each chunk
    are carried over so comparisons spanning chunk boundaries are not lost.
    Ties keep the earliest run.
    """

    def __init__(self):
        self.tail: list = []  # last three values fed
        self.offset = 0  # global index of tail[0]
        self.count = 0
        self.run_start = 0
        self.run_len = 0
        self.run_k = 0
        self.run_values: list = []  # values from a_{run_start} onward
        self.best = None  # (k, b, m, window values)

    def feed(self, chunk: Sequence) -> "RatioScanner":
        chunk = list(chunk)
        if not chunk:
            return self
        prev = self.tail[-1] if self.tail else None
        if prev is not None and not chunk[0] > prev:
            raise DomainError("values must be strictly increasing")
        for a, b in zip(chunk, chunk[1:]):
            if not b > a:
                raise DomainError("values must be strictly increasing")
        joined = self.tail + chunk
        signs = _ratio_signs(joined)
        # comparison index n (global) for signs[j] is self.offset + j; only
        # indices not already processed are new
        done = max(0, self.count - 3)
        first_new = done - self.offset
        signs = signs[max(first_new, 0) :]
        base = self.offset + max(first_new, 0)
        self.run_values.extend(chunk)
        self.count += len(chunk)
        self._consume(signs, base)
        self.tail = joined[-3:]
        self.offset = self.count - len(self.tail)
        return self

    def _close(self):
        m = self.run_len
        cand = (self.run_k, self.run_start, m)
        if self.best is None or cand[0] > self.best[0]:
            self.best = (self.run_k, self.run_start, m, tuple(self.run_values[: m + 3]))

    def _consume(self, signs: np.ndarray, base: int):
        if len(signs) == 0:
            return
        breaks = np.flatnonzero(signs < 0)
        strict = np.concatenate(([0], np.cumsum(signs > 0)))
        if len(breaks) == 0:
            self.run_k += int(strict[-1])
            self.run_len += len(signs)
            return
        first = int(breaks[0])
        self.run_k += int(strict[first])
        self.run_len += first
        self._close()
        # runs strictly between consecutive breaks
        if len(breaks) > 1:
            starts = breaks[:-1] + 1
            ends = breaks[1:]
            ks = strict[ends] - strict[starts]
            top = int(np.argmax(ks))
            if self.best is None or int(ks[top]) > self.best[0]:
                b = base + int(starts[top])
                m = int(ends[top] - starts[top])
                rel = b - self.run_start
                window = tuple(self.run_values[rel : rel + m + 3])
                self.best = (int(ks[top]), b, m, window)
        last = int(breaks[-1])
        new_start = base + last + 1
        self.run_values = self.run_values[new_start - self.run_start :]
        self.run_start = new_start
        self.run_len = len(signs) - last - 1
        self.run_k = int(strict[-1] - strict[last + 1])

    def result(self, host: Optional[dict] = None) -> RatioRunCertificate:
        if self.count < 4:
            raise DomainError("ratio scan needs at least four values")
        saved = (self.run_start, self.run_len, self.run_k, list(self.run_values), self.best)
        self._close()
        k, b, m, window = self.best
        self.run_start, self.run_len, self.run_k, self.run_values, self.best = saved
        return RatioRunCertificate(
            tuple(window),
            b,
            m,
            k,
            host or {},
            (window[0], window[-1]),
            {"method": "ratio-scan", "values_scanned": self.count},
        )


def ratio_scan(values: Sequence, host: Optional[dict] = None) -> RatioRunCertificate:
    """Best run of nonincreasing gap ratios in a strictly increasing sequence (|A| >= 4)."""
    return RatioScanner().feed(values).result(host)


def ratio_run_holds(cert: RatioRunCertificate) -> tuple:
    """Recount the run from the certificate's own values: (hypotheses hold, strict count)."""
    signs = _ratio_signs(list(cert.values))
    if len(cert.values) != cert.run_length + 3:
        return False, 0
    ok = bool(np.all(signs >= 0))
    return ok and int(np.sum(signs > 0)) == cert.strict_count, int(np.sum(signs > 0))


class HypothesisViolation(PredicateViolation):
    """The nonincreasing-ratio hypothesis fails; ``failures`` lists (n, t(n), t(n+1))."""

    def __init__(self, failures, hull):
        self.failures = failures
        self.hull = hull
        text = ", ".join(f"t({n}) = {a} < t({n + 1}) = {b}" for n, a, b in failures)
        super().__init__(f"ratio hypothesis fails: {text}")


def ratio_polygon_candidates(values: Sequence, b: int, m: int) -> list:
    """The m+4 candidate points (a_b, a_b), (a_i, a_{i+1}) for b <= i <= b+m+1, (a_{b+m+2}, a_{b+m+2})."""
    if b < 0 or m < 0 or b + m + 2 >= len(values):
        raise DomainError("window does not cover indices b .. b+m+2")
    a = [as_scalar(v) for v in values]
    pts = [(a[b], a[b])]
    pts += [(a[i], a[i + 1]) for i in range(b, b + m + 2)]
    pts.append((a[b + m + 2], a[b + m + 2]))
    return pts


def build_ratio_polygon(values: Sequence, b: int, m: int, host: Optional[dict] = None) -> PolygonCertificate:
    """Hull of the ratio-run candidates, as a certificate.

    Raises :class:`HypothesisViolation` (carrying the hull anyway) if some
    t(n) < t(n+1) for b <= n < b+m.
    """
    cands = ratio_polygon_candidates(values, b, m)
    hull = convex_hull2(cands)
    a = [as_scalar(v) for v in values]
    failures = []
    for n in range(b, b + m):
        g0, g1, g2 = a[n + 1] - a[n], a[n + 2] - a[n + 1], a[n + 3] - a[n + 2]
        if g1 * g1 < g0 * g2:
            failures.append((n, Fraction(g1, g0), Fraction(g2, g1)))
    if failures:
        raise HypothesisViolation(failures, hull)
    window = (a[b], a[b + m + 2])
    return PolygonCertificate(
        tuple(hull),
        host or {"kind": "product", "factor": {"generator": "explicit", "values": [format_scalar(v) for v in a]}},
        window,
        {"method": "ratio-polygon", "base_index": b, "run_length": m},
    )


# ---------------------------------------------------------------------------
# Bound records
# ---------------------------------------------------------------------------

LOWER = "lower"
UPPER = "upper"


@dataclass(frozen=True)
class BoundRecord:
    set_descriptor: str
    quantity: str
    n: int
    kind: str
    value: Fraction
    provenance: dict

    def __post_init__(self):
        if self.quantity not in ("H", "H_box"):
            raise DomainError(f"unknown quantity {self.quantity!r}")
        if self.kind not in (LOWER, UPPER):
            raise DomainError(f"unknown kind {self.kind!r}")
        if self.n < 1:
            raise DomainError("n must be positive")
        if self.kind == LOWER and "certificate" not in self.provenance:
            raise DomainError("lower bounds must reference a certificate")
        if self.kind == UPPER and not ({"theorem", "rule"} & set(self.provenance)):
            raise DomainError("upper bounds must reference a formula or a combination rule")
        object.__setattr__(self, "value", as_scalar(self.value))

    def to_json(self) -> dict:
        return {
            "set": self.set_descriptor,
            "quantity": self.quantity,
            "n": self.n,
            "kind": self.kind,
            "value": format_scalar(self.value),
            "provenance": self.provenance,
        }


def _need(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _int_param(params: dict, name: str, minimum: int = 1) -> int:
    if name not in params:
        raise DomainError(f"missing parameter {name!r}")
    v = params[name]
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise DomainError(f"parameter {name} must be an integer >= {minimum}")
    return v


def formula_value(theorem_id: str, params: dict) -> tuple:
    """(value, set descriptor, quantity) of a closed-form Helly number."""
    if theorem_id == "helly":
        d = _int_param(params, "d")
        return d + 1, f"R^{d}", "H"
    if theorem_id == "doignon":
        d = _int_param(params, "d")
        return 2**d, f"Z^{d}", "H"
    if theorem_id == "mixedInteger":
        a = _int_param(params, "a", 0)
        b = _int_param(params, "b", 0)
        _need(a + b >= 1, "need a + b >= 1")
        return (a + 1) * 2**b, f"R^{a} x Z^{b}", "H"
    if theorem_id == "boxIntegerLattice":
        d = _int_param(params, "d")
        return 2 ** (2 * d - 1), f"Z^{d}", "H_box"
    if theorem_id == "boxPeriodic":
        d = _int_param(params, "d")
        rho = _int_param(params, "rho")
        return 4**d * rho**2, f"periodic product set in R^{d} (rho={rho})", "H_box"
    if theorem_id == "boxSkeleton":
        d = _int_param(params, "d")
        return 2 * d, f"R^{d} (k-skeleton volume)", "H_box"
    if theorem_id in ("thickBox", "thinBox"):
        d = _int_param(params, "d")
        m = _int_param(params, "m")
        variant = "P218" if theorem_id == "thickBox" else "P219"
        h, _ = guaranteed_fraction(d, m, params.get("t", 0 if variant == "P218" else 1), variant)
        return h, f"Z^{d} (m={m} thick directions)", "H_box"
    raise DomainError(f"unknown theorem id {theorem_id!r}")


def formula_bound(theorem_id: str, params: Optional[dict] = None, n: int = 1) -> BoundRecord:
    params = dict(params or {})
    value, desc, quantity = formula_value(theorem_id, params)
    return BoundRecord(desc, quantity, n, UPPER, Fraction(value), {"theorem": theorem_id, "params": params})


def union_bound(r1: BoundRecord, r2: BoundRecord) -> BoundRecord:
    """H(S cup T) <= H(S) + H(T)."""
    _need(r1.kind == UPPER and r2.kind == UPPER, "union bound combines upper bounds")
    _need(r1.quantity == r2.quantity == "H" and r1.n == r2.n == 1, "union bound is for plain Helly numbers")
    return BoundRecord(
        f"({r1.set_descriptor}) u ({r2.set_descriptor})",
        "H",
        1,
        UPPER,
        r1.value + r2.value,
        {"rule": "union", "parts": [r1.to_json(), r2.to_json()]},
    )


def restrict_bound(r: BoundRecord, convex_set: str = "C") -> BoundRecord:
    """H(S cap C) <= H(S) for convex C."""
    _need(r.kind == UPPER and r.quantity == "H" and r.n == 1, "restriction applies to plain Helly upper bounds")
    return BoundRecord(
        f"({r.set_descriptor}) n {convex_set}",
        "H",
        1,
        UPPER,
        r.value,
        {"rule": "restrict", "convex_set": convex_set, "parts": [r.to_json()]},
    )


def ratio_lower_bound(cert: RatioRunCertificate, set_descriptor: str = "A x A") -> BoundRecord:
    return BoundRecord(set_descriptor, "H", 1, LOWER, Fraction(cert.lower_bound), {"certificate": cert.to_json()})


def polygon_lower_bound(cert: PolygonCertificate, set_descriptor: str = "S") -> BoundRecord:
    return BoundRecord(set_descriptor, "H", 1, LOWER, Fraction(len(cert.vertices)), {"certificate": cert.to_json()})


def guaranteed_fraction(d: int, m: int, t, variant: str) -> tuple:
    """(Helly number, loss factor) for the t-thick box theorems.

    ``P218``: every m-subset of directions t-thick; n / (1 + 1/(floor t + 1))^m
    points with Helly number (m+1) 2^(2d-m-1).
    ``P219``: m directions t-thick (t >= 1), the rest unconstrained; loss
    (1 + 1/(floor t + 1))^(d-m) (1 + 2/floor t)^m with Helly number
    (d+m+1) 2^(d-m-1), or 2d when m = d.
    """
    _need(isinstance(d, int) and d >= 1, "d must be a positive integer")
    _need(isinstance(m, int) and 1 <= m <= d, "need 1 <= m <= d")
    t = as_scalar(t)
    _need(t >= 0, "t must be nonnegative")
    ft = math.floor(t)
    if variant == "P218":
        return (m + 1) * 2 ** (2 * d - m - 1), (1 + Fraction(1, ft + 1)) ** m
    if variant == "P219":
        _need(t >= 1, "this variant needs t >= 1")
        h = 2 * d if m == d else (d + m + 1) * 2 ** (d - m - 1)
        return h, (1 + Fraction(1, ft + 1)) ** (d - m) * (1 + Fraction(2, ft)) ** m
    raise DomainError(f"unknown variant {variant!r}")


def thin_box_losses(d: int) -> dict:
    """Loss factors for boxes 1-thick in every direction, by source.

    ``stated``: the headline theorem's 3^(d-1); ``derived``: the general
    formula specialised to m = d, t = 1, which gives 3^d.
    """
    _need(isinstance(d, int) and d >= 1, "d must be a positive integer")
    _, derived = guaranteed_fraction(d, d, 1, "P219")
    return {"stated": Fraction(3) ** (d - 1), "derived": derived, "helly_number": 2 * d}
