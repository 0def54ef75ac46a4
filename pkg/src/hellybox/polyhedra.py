"""Halfspaces, polyhedra and exact Fourier-Motzkin elimination.

Rows are stored with integer coefficient vectors (made primitive) and an
exact rational right-hand side, so elimination never rounds. Chernikov's
rule discards rows built from more than k+1 originals after k eliminations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DomainError
from .exact import as_scalar, format_scalar, load_scalar


@dataclass(frozen=True)
class Halfspace:
    """The closed halfspace {z : normal . z <= offset}."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        normal = tuple(as_scalar(a) for a in self.normal)
        if not normal or all(a == 0 for a in normal):
            raise DomainError("halfspace normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", as_scalar(self.offset))

    @property
    def dim(self) -> int:
        return len(self.normal)

    def slack(self, point: Sequence) -> Fraction:
        return self.offset - sum(a * z for a, z in zip(self.normal, point))

    def contains(self, point: Sequence) -> bool:
        return self.slack(point) >= 0

    def to_json(self) -> dict:
        return {"normal": [format_scalar(a) for a in self.normal], "offset": format_scalar(self.offset)}

    @classmethod
    def from_json(cls, data: dict) -> "Halfspace":
        return cls(tuple(load_scalar(a) for a in data["normal"]), load_scalar(data["offset"]))


@dataclass(frozen=True)
class Polyhedron:
    """A finite intersection of halfspaces; the empty list is all of R^d."""

    dim: int
    constraints: tuple = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.dim < 1:
            raise DomainError("dimension must be positive")
        for h in self.constraints:
            if h.dim != self.dim:
                raise DomainError(f"halfspace of dim {h.dim} in polyhedron of dim {self.dim}")

    def contains(self, point: Sequence) -> bool:
        return all(h.contains(point) for h in self.constraints)

    def to_json(self) -> dict:
        return {"name": self.name, "halfspaces": [h.to_json() for h in self.constraints]}

    @classmethod
    def from_json(cls, data: dict, dim: int) -> "Polyhedron":
        return cls(dim, tuple(Halfspace.from_json(h) for h in data.get("halfspaces", [])), data.get("name", ""))


def intersect(polys: Iterable[Polyhedron]) -> Polyhedron:
    polys = list(polys)
    if not polys:
        raise DomainError("intersection of no polyhedra has no dimension")
    dim = polys[0].dim
    cons = []
    for p in polys:
        if p.dim != dim:
            raise DomainError("polyhedra of different dimensions")
        cons.extend(p.constraints)
    return Polyhedron(dim, tuple(cons))


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------


def _primitive(coeffs: Sequence, rhs) -> tuple:
    """Scale a row so its coefficients are coprime integers."""
    nums, dens = [], []
    for c in coeffs:
        if isinstance(c, int):
            nums.append(c)
            dens.append(1)
        else:
            c = Fraction(c)
            nums.append(c.numerator)
            dens.append(c.denominator)
    den = math.lcm(*dens) if dens else 1
    ints = [n * (den // d) for n, d in zip(nums, dens)]
    g = math.gcd(*ints) if ints else 0
    rhs = rhs if isinstance(rhs, Fraction) else Fraction(rhs)
    if g == 0:
        return tuple(ints), rhs
    if g != 1:
        ints = [v // g for v in ints]
    if den == g:
        return tuple(ints), rhs
    return tuple(ints), rhs * Fraction(den, g)


@dataclass
class LinearSystem:
    """Inequalities ``coeffs . v <= rhs`` over ``nvars`` real variables.

    ``eliminated`` records variables already projected out (their columns
    are identically zero). ``origin`` optionally tags each row with the
    index of the source set it was lifted from.
    """

    nvars: int
    rows: list = field(default_factory=list)
    eliminated: tuple = ()
    infeasible: bool = False

    @classmethod
    def build(cls, nvars: int, rows: Iterable[tuple]) -> "LinearSystem":
        sys = cls(nvars)
        seen = set()
        for i, (coeffs, rhs) in enumerate(rows):
            if len(coeffs) != nvars:
                raise DomainError("row width does not match variable count")
            row = _primitive(coeffs, rhs)
            if row not in seen:
                seen.add(row)
                sys._add(*row, frozenset([i]))
        sys._dedupe()
        return sys

    def _add(self, coeffs, rhs, hist):
        if all(c == 0 for c in coeffs):
            if rhs < 0:
                self.infeasible = True
            return
        self.rows.append((coeffs, rhs, hist))

    def _dedupe(self):
        # drop a row only when another with the same normal is at least as
        # tight and built from a subset of its sources; pruning on tightness
        # alone would break the history-size rule used in eliminate()
        groups: dict = {}
        for coeffs, rhs, hist in self.rows:
            groups.setdefault(coeffs, []).append((rhs, hist))
        rows = []
        for coeffs, cands in groups.items():
            cands.sort(key=lambda t: (t[0], len(t[1])))
            kept = []
            for rhs, hist in cands:
                if not any(r <= rhs and h <= hist for r, h in kept):
                    kept.append((rhs, hist))
            rows.extend((coeffs, r, h) for r, h in kept)
        self.rows = rows

    def eliminate(self, var: int) -> "LinearSystem":
        pos, neg, out = [], [], LinearSystem(self.nvars, [], self.eliminated + (var,), self.infeasible)
        for row in self.rows:
            c = row[0][var]
            if c > 0:
                pos.append(row)
            elif c < 0:
                neg.append(row)
            else:
                out.rows.append(row)
        limit = len(out.eliminated) + 1
        for pc, pr, ph in pos:
            a = pc[var]
            for nc, nr, nh in neg:
                hist = ph | nh
                if len(hist) > limit:
                    continue
                b = -nc[var]
                coeffs = [b * x + a * y for x, y in zip(pc, nc)]
                coeffs, rhs = _primitive(coeffs, b * pr + a * nr)
                out._add(coeffs, rhs, hist)
        out._dedupe()
        return out

    def eliminate_all(self, variables: Iterable[int]) -> "LinearSystem":
        sys = self
        for v in variables:
            sys = sys.eliminate(v)
            if sys.infeasible:
                break
        return sys

    def is_feasible(self) -> bool:
        live = [v for v in range(self.nvars) if v not in self.eliminated]
        return not self.eliminate_all(live).infeasible

    def bounds(self, var: int) -> tuple:
        """Exact (lower, upper) of ``var`` over the solution set; None = unbounded.

        Returns ``None`` overall when the system is infeasible.
        """
        others = [v for v in range(self.nvars) if v != var and v not in self.eliminated]
        sys = self.eliminate_all(others)
        if sys.infeasible:
            return None
        return _interval(sys.rows, var)

    def restrict(self, var: int, value) -> "LinearSystem":
        """Substitute a fixed value for ``var``."""
        value = Fraction(value)
        out = LinearSystem(self.nvars, [], self.eliminated + (var,), self.infeasible)
        for coeffs, rhs, hist in self.rows:
            c = coeffs[var]
            new = tuple(0 if i == var else x for i, x in enumerate(coeffs))
            if c:
                new, r = _primitive(new, rhs - c * value)
            else:
                r = rhs
            out._add(new, r, hist)
        out._dedupe()
        return out

    def satisfied_by(self, point: Sequence) -> bool:
        return not self.infeasible and all(
            sum(c * p for c, p in zip(coeffs, point)) <= rhs for coeffs, rhs, _ in self.rows
        )

    def find_point(self, prefer=None) -> Optional[list]:
        """A solution by elimination and back-substitution, or None.

        Each variable takes the value of its feasible interval closest to
        ``prefer[var]`` (default 0), which keeps witnesses small and
        deterministic.
        """
        if self.infeasible:
            return None
        order = [v for v in range(self.nvars) if v not in self.eliminated]
        stages = [self]
        for v in order:
            stages.append(stages[-1].eliminate(v))
            if stages[-1].infeasible:
                return None
        values: dict = {}
        # stage i still contains order[i], order[i+1], ...; walk backwards
        for i in range(len(order) - 1, -1, -1):
            var = order[i]
            sys = stages[i]
            for w, val in values.items():
                sys = sys.restrict(w, val)
            if sys.infeasible:
                return None
            iv = _interval(sys.rows, var)
            if iv is None:
                return None
            lo, hi = iv
            target = Fraction(0) if prefer is None else Fraction(prefer[var])
            if lo is not None and target < lo:
                target = lo
            if hi is not None and target > hi:
                target = hi
            values[var] = target
        return [values.get(v, Fraction(0)) for v in range(self.nvars)]


def _interval(rows, var) -> Optional[tuple]:
    lo = hi = None
    for coeffs, rhs, _ in rows:
        c = coeffs[var]
        if any(x for i, x in enumerate(coeffs) if i != var):
            continue
        bound = Fraction(rhs) / c
        if c > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    return lo, hi


def polyhedron_system(poly: Polyhedron) -> LinearSystem:
    return LinearSystem.build(poly.dim, [(h.normal, h.offset) for h in poly.constraints])


def coordinate_bounds(poly: Polyhedron) -> Optional[list]:
    """Per-coordinate (lower, upper) over the polyhedron, None if it is empty."""
    sys = polyhedron_system(poly)
    if not sys.is_feasible():
        return None
    out = []
    for i in range(poly.dim):
        iv = sys.bounds(i)
        if iv is None:
            return None
        out.append(iv)
    return out
