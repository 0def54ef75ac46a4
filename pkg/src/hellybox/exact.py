"""Exact scalars and planar predicates.

Rationals are :class:`fractions.Fraction` (always reduced, denominator > 0).
Quadratic surds ``r + s*sqrt(D)`` are :class:`SurdScalar`. Every predicate
below decides signs with integer arithmetic only.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import DomainError, PredicateViolation

Scalar = Fraction
Number = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^(-?\d+)/(\d+)$")
_SURD_RE = re.compile(r"^(-?\d+/\d+)\+(-?\d+/\d+)\*sqrt\((\d+)\)$")


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and canonical strings to Fraction (never floats)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DomainError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise DomainError(f"cannot use {value!r} as an exact scalar")


def parse_scalar(text: str) -> Fraction:
    """Parse ``"num/den"``; the pair must already be in lowest terms."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise DomainError(f"malformed scalar {text!r}; expected 'num/den'")
    num, den = int(m.group(1)), int(m.group(2))
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    if math.gcd(num, den) != 1 or (num == 0 and den != 1):
        raise DomainError(f"scalar {text!r} is not in canonical form")
    return Fraction(num, den)


def format_scalar(value: Number) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def load_scalar(value) -> Fraction:
    """JSON reader: accepts integers or canonical ``"num/den"`` strings."""
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise DomainError(f"cannot read scalar from {value!r}")


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class SurdScalar:
    """The number ``rational + surd*sqrt(radicand)`` in Q(sqrt(D))."""

    rational: Fraction
    surd: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, "rational", as_scalar(self.rational))
        object.__setattr__(self, "surd", as_scalar(self.surd))
        if not _is_squarefree(self.radicand):
            raise DomainError(f"radicand {self.radicand} is not a square-free integer >= 2")

    # -- construction helpers -------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "SurdScalar":
        m = _SURD_RE.match(text.strip())
        if not m:
            raise DomainError(f"malformed surd {text!r}; expected 'a/b+c/d*sqrt(D)'")
        return cls(parse_scalar(m.group(1)), parse_scalar(m.group(2)), int(m.group(3)))

    def format(self) -> str:
        return f"{format_scalar(self.rational)}+{format_scalar(self.surd)}*sqrt({self.radicand})"

    def _coerce(self, other) -> "SurdScalar":
        if isinstance(other, SurdScalar):
            if other.radicand != self.radicand:
                raise DomainError(
                    f"mixed radicands {self.radicand} and {other.radicand} are not supported"
                )
            return other
        return SurdScalar(as_scalar(other), Fraction(0), self.radicand)

    # -- field operations -----------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return SurdScalar(self.rational + o.rational, self.surd + o.surd, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return SurdScalar(-self.rational, -self.surd, self.radicand)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        d = self.radicand
        return SurdScalar(
            self.rational * o.rational + self.surd * o.surd * d,
            self.rational * o.surd + self.surd * o.rational,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "SurdScalar":
        return SurdScalar(self.rational, -self.surd, self.radicand)

    def norm(self) -> Fraction:
        return self.rational**2 - self.surd**2 * self.radicand

    def inverse(self) -> "SurdScalar":
        n = self.norm()
        if n == 0:
            # norm vanishes only at zero because sqrt(D) is irrational
            raise ZeroDivisionError("inverse of zero surd")
        c = self.conjugate()
        return SurdScalar(c.rational / n, c.surd / n, self.radicand)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- order ------------------------------------------------------------------
    def sign(self) -> int:
        r, s = self.rational, self.surd
        sr = (r > 0) - (r < 0)
        ss = (s > 0) - (s < 0)
        if ss == 0:
            return sr
        if sr == 0 or sr == ss:
            return ss
        # opposite signs: compare r^2 with s^2 * D
        diff = r * r - s * s * self.radicand
        sd = (diff > 0) - (diff < 0)
        return sr * sd

    def is_rational(self) -> bool:
        return self.surd == 0

    def __eq__(self, other):
        if isinstance(other, (SurdScalar, int, Fraction)):
            try:
                return surd_compare(self, self._coerce(other)) == 0
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.rational, self.surd, self.radicand))

    def __lt__(self, other):
        return surd_compare(self, self._coerce(other)) < 0

    def __le__(self, other):
        return surd_compare(self, self._coerce(other)) <= 0

    def __gt__(self, other):
        return surd_compare(self, self._coerce(other)) > 0

    def __ge__(self, other):
        return surd_compare(self, self._coerce(other)) >= 0

    def floor(self) -> int:
        """Exact floor, found from an isqrt estimate and corrected by exact sign tests."""
        s = self.surd
        # |s|*sqrt(D) = sqrt(s^2 D); estimate with integer square roots
        sq = s * s * self.radicand
        root = Fraction(math.isqrt(sq.numerator // sq.denominator))
        guess = math.floor(self.rational + (root if s >= 0 else -root))
        while (self - guess).sign() < 0:
            guess -= 1
        while (self - (guess + 1)).sign() >= 0:
            guess += 1
        return guess

    def ceil(self) -> int:
        return -((-self).floor())

    def __float__(self):
        return float(self.rational) + float(self.surd) * math.sqrt(self.radicand)

    def __repr__(self):
        return f"SurdScalar({self.format()})"


def surd_compare(s: SurdScalar, t: SurdScalar) -> int:
    """Exact sign of ``s - t``; both must share a radicand."""
    if s.radicand != t.radicand:
        raise DomainError(f"mixed radicands {s.radicand} and {t.radicand}")
    return SurdScalar(s.rational - t.rational, s.surd - t.surd, s.radicand).sign()


class Point2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "Point2":
        return cls(as_scalar(x), as_scalar(y))


def orientation(p, q, r) -> int:
    """Sign of the cross product (q - p) x (r - p); +1 means counterclockwise."""
    c = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (c > 0) - (c < 0)


def convex_hull2(points: Sequence) -> list:
    """Monotone chain hull, counterclockwise from the lexicographically least point.

    Collinear boundary points are dropped; collinear input yields its two
    extreme points and a single point yields itself.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise DomainError("convex hull of an empty point set")
    if len(pts) <= 2:
        return [Point2(*p) for p in pts]

    def half(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and orientation(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        hull = [pts[0], pts[-1]]
    return [Point2(*p) for p in hull]


def is_strictly_convex(polygon: Sequence) -> bool:
    """True if the vertices turn strictly left at every corner (ccw, no three collinear)."""
    n = len(polygon)
    if n < 3:
        return n > 0
    if len(set(map(tuple, polygon))) != n:
        return False
    for i in range(n):
        if orientation(polygon[i - 2], polygon[i - 1], polygon[i]) <= 0:
            return False
    # a star-shaped self-intersecting walk also turns left everywhere; its
    # total turning exceeds one revolution, detected by counting y-direction flips
    dirs = []
    for i in range(n):
        dy = polygon[i][1] - polygon[i - 1][1]
        if dy:
            dirs.append(dy > 0)
    flips = sum(1 for i in range(len(dirs)) if dirs[i] != dirs[i - 1])
    return flips <= 2


def on_segment(p, a, b) -> bool:
    """Closed-segment membership for a point p."""
    if orientation(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def point_in_convex_polygon(p, polygon: Sequence, mode: str = "interior") -> bool:
    """Membership in a ccw strictly convex polygon.

    ``mode="interior"`` is strict containment; ``"closed"`` includes the
    boundary. One- and two-vertex polygons have empty interior.
    """
    if mode not in ("interior", "closed"):
        raise DomainError(f"unknown mode {mode!r}")
    if not is_strictly_convex(polygon):
        raise PredicateViolation("polygon is not in strictly convex counterclockwise position")
    n = len(polygon)
    if n == 1:
        return mode == "closed" and tuple(p) == tuple(polygon[0])
    if n == 2:
        return mode == "closed" and on_segment(p, polygon[0], polygon[1])
    threshold = 1 if mode == "interior" else 0
    return all(orientation(polygon[i - 1], polygon[i], p) >= threshold for i in range(n))
