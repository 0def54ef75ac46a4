"""Boxes, lattice counting and periodic product sets.

These are the box-weighting functions consumed by the Helly reductions:
lattice counts, k-skeleton volumes, symmetric lattice weights and the
thickness-gated product.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exact import as_scalar, format_scalar, load_scalar


@dataclass(frozen=True)
class Box:
    """The axis-parallel box prod [lower_i, upper_i]; degenerate edges allowed."""

    lower: tuple
    upper: tuple

    def __post_init__(self):
        lo = tuple(as_scalar(v) for v in self.lower)
        hi = tuple(as_scalar(v) for v in self.upper)
        if len(lo) != len(hi) or not lo:
            raise DomainError("box corners must be nonempty vectors of equal length")
        if any(h < l for l, h in zip(lo, hi)):
            raise DomainError(f"box upper corner {hi} is not >= lower corner {lo}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def edges(self) -> tuple:
        return tuple(h - l for l, h in zip(self.lower, self.upper))

    def vertices(self):
        """All 2^d corners (with repeats for degenerate edges)."""
        return itertools.product(*zip(self.lower, self.upper))

    def translate(self, shift: Sequence) -> "Box":
        shift = [as_scalar(s) for s in shift]
        return Box(
            tuple(l + s for l, s in zip(self.lower, shift)),
            tuple(h + s for h, s in zip(self.upper, shift)),
        )

    def to_json(self) -> dict:
        return {
            "lower": [format_scalar(v) for v in self.lower],
            "upper": [format_scalar(v) for v in self.upper],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Box":
        return cls(
            tuple(load_scalar(v) for v in data["lower"]),
            tuple(load_scalar(v) for v in data["upper"]),
        )


def lattice_count_box(box: Box) -> int:
    """Number of integer points in the box: prod max(0, floor(y_i) - ceil(x_i) + 1)."""
    count = 1
    for l, h in zip(box.lower, box.upper):
        width = math.floor(h) - math.ceil(l) + 1
        if width <= 0:
            return 0
        count *= width
    return count


@dataclass(frozen=True)
class PeriodicSet1D:
    """A discrete set invariant under translation by ``period``.

    Residues are reduced into [0, period) on construction, so equal sets have
    equal representations provided the least period is used.
    """

    period: Fraction
    residues: tuple

    def __post_init__(self):
        p = as_scalar(self.period)
        if p <= 0:
            raise DomainError("period must be positive")
        res = sorted({as_scalar(r) % p for r in self.residues})
        if not res:
            raise DomainError("a periodic set needs at least one residue")
        object.__setattr__(self, "period", p)
        object.__setattr__(self, "residues", tuple(res))

    @property
    def multiplicity(self) -> int:
        """Points per period (m_i in the product-set bound)."""
        return len(self.residues)

    def __contains__(self, t) -> bool:
        return as_scalar(t) % self.period in self.residues

    def points_in(self, a, b) -> list:
        """Sorted elements in [a, b], by direct enumeration of periods."""
        a, b = as_scalar(a), as_scalar(b)
        p = self.period
        out = []
        k = math.floor(a / p)
        while k * p <= b:
            for r in self.residues:
                v = k * p + r
                if a <= v <= b:
                    out.append(v)
            k += 1
        return out

    def to_json(self) -> dict:
        return {"period": format_scalar(self.period), "residues": [format_scalar(r) for r in self.residues]}

    @classmethod
    def from_json(cls, data: dict) -> "PeriodicSet1D":
        return cls(load_scalar(data["period"]), tuple(load_scalar(r) for r in data["residues"]))


def periodic_count_interval(A: PeriodicSet1D, a, b) -> int:
    """|[a, b] ∩ A|, summing whole-period counts per residue class."""
    a, b = as_scalar(a), as_scalar(b)
    if b < a:
        raise DomainError("interval requires a <= b")
    p = A.period
    total = 0
    for r in A.residues:
        n = math.floor((b - r) / p) - math.ceil((a - r) / p) + 1
        if n > 0:
            total += n
    return total


@dataclass(frozen=True)
class PeriodicProductSet:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise DomainError("product set needs at least one factor")

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def period(self) -> tuple:
        return tuple(f.period for f in self.factors)

    def density(self) -> int:
        """rho(Q): points of Q in its fundamental box."""
        return math.prod(f.multiplicity for f in self.factors)

    def __contains__(self, point) -> bool:
        return all(c in f for c, f in zip(point, self.factors))

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data: dict) -> "PeriodicProductSet":
        return cls(tuple(PeriodicSet1D.from_json(f) for f in data["factors"]))


def periodic_count_box(Q: PeriodicProductSet, box: Box) -> int:
    if Q.dim != box.dim:
        raise DomainError("dimension mismatch between set and box")
    count = 1
    for f, l, h in zip(Q.factors, box.lower, box.upper):
        count *= periodic_count_interval(f, l, h)
        if count == 0:
            return 0
    return count


def _elementary_symmetric(values: Sequence, k: int) -> Fraction:
    # e_k by the standard O(dk) recurrence
    e = [Fraction(1)] + [Fraction(0)] * k
    for v in values:
        for j in range(k, 0, -1):
            e[j] += e[j - 1] * v
    return e[k]


def skeleton_volume(box: Box, k: int) -> Fraction:
    """k-dimensional volume of the box's k-skeleton: 2^(d-k) e_k(edge lengths)."""
    if not 0 <= k <= box.dim:
        raise DomainError(f"k={k} outside [0, {box.dim}]")
    return 2 ** (box.dim - k) * _elementary_symmetric(box.edges(), k)


def symmetric_lattice_weight(box: Box, k: int) -> tuple:
    """Return (e_k(edge+1), best k-subset, its product).

    The best subset maximises prod_{i in U}(edge_i + 1); ties go to the
    lexicographically first subset. Its product is at least weight / C(d, k).
    """
    if not 1 <= k <= box.dim:
        raise DomainError(f"k={k} outside [1, {box.dim}]")
    sides = [e + 1 for e in box.edges()]
    weight = _elementary_symmetric(sides, k)
    best, best_val = None, None
    for subset in itertools.combinations(range(box.dim), k):
        val = math.prod((sides[i] for i in subset), start=Fraction(1))
        if best_val is None or val > best_val:
            best, best_val = subset, val
    return weight, best, best_val


def thick_gate_weight(box: Box, t) -> Fraction:
    """prod(edge_i + 1) for t-thick boxes, 0 otherwise."""
    t = as_scalar(t)
    edges = box.edges()
    if min(edges) < t:
        return Fraction(0)
    return math.prod((e + 1 for e in edges), start=Fraction(1))
