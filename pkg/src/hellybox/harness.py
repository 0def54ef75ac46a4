"""Executable checks of the box Helly theorems on concrete families.

Each check tests a theorem's premise on every subfamily of the relevant
size and then its conclusion on the whole family. The theorems are proven,
so COUNTEREXAMPLE means a bug in this library, never a refutation.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .boxlift import FOUND, UNBOUNDED, BoxSearchResult, lift_family, max_lattice_box, subfamily_check
from .certificates import guaranteed_fraction, thin_box_losses
from .errors import DomainError, check_guard
from .exact import as_scalar, format_scalar
from .family import FamilyInstance
from .lattice import Box, lattice_count_box
from .polyhedra import Halfspace, LinearSystem, Polyhedron, intersect

CONFIRMED = "CONFIRMED"
COUNTEREXAMPLE = "COUNTEREXAMPLE"
PREMISE_UNMET = "PREMISE_UNMET"
INCONCLUSIVE = "INCONCLUSIVE"

THEOREMS = ("thm1.3", "thm1.4", "prop2.15", "prop2.16", "prop2.18", "prop2.19")
COLOR_MODES = ("doignon", "mixedInteger", "boxInteger")
RAINBOW_GUARD = 10**6
CENSUS_GUARD = 16


@dataclass
class VerificationReport:
    theorem: str
    parameters: dict
    outcome: str
    witness: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "parameters": {k: _jsonable(v) for k, v in self.parameters.items()},
            "outcome": self.outcome,
            "witness": self.witness,
            "notes": {k: _jsonable(v) for k, v in self.notes.items()},
        }


def _jsonable(v):
    if isinstance(v, Fraction):
        return format_scalar(v)
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# ---------------------------------------------------------------------------
# Axis-parallel segments (1-dimensional boxes with real corners)
# ---------------------------------------------------------------------------


def max_axis_segment(family: Sequence[Polyhedron], dim: int) -> Optional[tuple]:
    """Longest axis-parallel segment in the intersection: (length, axis).

    ``length`` is None when unbounded; the result is None for an empty
    intersection. Solved exactly: z and z + l e_i must both satisfy every
    halfspace, and eliminating z leaves bounds on l.
    """
    poly = intersect(family) if family else Polyhedron(dim)
    best = None
    for axis in range(dim):
        rows = []
        for h in poly.constraints:
            rows.append((tuple(h.normal) + (0,), h.offset))
            rows.append((tuple(h.normal) + (h.normal[axis],), h.offset))
        rows.append(((0,) * dim + (-1,), 0))
        sys = LinearSystem.build(dim + 1, rows)
        iv = sys.bounds(dim)
        if iv is None:
            return None
        hi = iv[1]
        if hi is None:
            return None, axis
        if best is None or hi > best[0]:
            best = (hi, axis)
    return best


# ---------------------------------------------------------------------------
# Theorem instances
# ---------------------------------------------------------------------------


def theorem_spec(theorem: str, d: int, params: dict) -> dict:
    """Helly number, premise and conclusion parameters for a theorem id."""
    p = dict(params)
    if theorem == "thm1.3":
        n = p["n"]
        return dict(h=2 ** (2 * d - 1), t=0, mode="integer", n=n, need=Fraction(n))
    if theorem == "thm1.4":
        n = p["n"]
        losses = thin_box_losses(d)
        return dict(h=2 * d, t=1, mode="real", n=n, need=Fraction(n) / losses["stated"],
                    conclusion_t=0, losses=losses)
    if theorem == "prop2.18":
        n, m, t = p["n"], p["m"], as_scalar(p.get("t", 0))
        h, loss = guaranteed_fraction(d, m, t, "P218")
        return dict(h=h, t=t, mode="real", n=n, need=Fraction(n) / loss, loss=loss)
    if theorem == "prop2.19":
        n, m, t = p["n"], p["m"], as_scalar(p.get("t", 1))
        h, loss = guaranteed_fraction(d, m, t, "P219")
        return dict(h=h, t=t, mode="real", n=n, need=Fraction(n) / loss, loss=loss)
    if theorem == "prop2.15":
        n, k = p["n"], p["k"]
        if not 1 <= k <= d:
            raise DomainError("need 1 <= k <= d")
        return dict(h=2 ** (2 * d - 1), t=0, mode="integer", n=n, need=Fraction(n, math.comb(d, k)), max_dim=k)
    if theorem == "prop2.16":
        k = p.get("k", 1)
        if k != 1:
            raise DomainError("the continuous k-volume check is implemented for k = 1 only")
        w = as_scalar(p["w"])
        return dict(h=2 * d, w=w, need=w / d)
    raise DomainError(f"unknown theorem id {theorem!r}")


def _box_replays(family, box: Box, t, count: int) -> bool:
    """Witness replay: the box lifts into every B_F, is t-thick and has the stated count."""
    lifted = lift_family(family, box.dim)
    return (
        lifted.contains(box.lower, box.upper)
        and min(box.edges()) >= as_scalar(t)
        and lattice_count_box(box) == count
    )


def verify_theorem_instance(F: FamilyInstance, theorem: str, params: dict, threads: int = 1) -> VerificationReport:
    d = F.dim
    spec = theorem_spec(theorem, d, params)
    sets = list(F.sets)
    h = spec["h"]
    rep = dict(params, d=d, h=h)
    if theorem == "prop2.16":
        return _verify_segment(F, spec, rep)
    premise = subfamily_check(
        sets, h, spec["n"], spec["t"], spec["mode"], dim=d, max_dim=spec.get("max_dim"), threads=threads
    )
    if not premise.passed:
        outcome = PREMISE_UNMET if premise.exhaustive else INCONCLUSIVE
        return VerificationReport(theorem, rep, outcome, {"premise": premise.to_json()})
    t_concl = spec.get("conclusion_t", spec["t"])
    res = max_lattice_box(sets, t_concl, spec["mode"], dim=d, max_dim=spec.get("max_dim"))
    notes = {"premise_checked": premise.checked, "required": spec["need"]}
    if "losses" in spec:
        notes["loss_stated"] = spec["losses"]["stated"]
        notes["loss_derived"] = spec["losses"]["derived"]
        notes["meets_derived"] = _meets(res, Fraction(spec["n"]) / spec["losses"]["derived"])
    witness = {"conclusion": res.to_json()}
    if res.box is not None:
        witness["replays"] = _box_replays(sets, res.box, t_concl, res.count)
    if _meets(res, spec["need"]):
        return VerificationReport(theorem, rep, CONFIRMED, witness, notes)
    outcome = COUNTEREXAMPLE if (res.exhaustive and premise.exhaustive) else INCONCLUSIVE
    return VerificationReport(theorem, rep, outcome, witness, notes)


def _meets(res: BoxSearchResult, need) -> bool:
    if res.status == UNBOUNDED:
        return True
    return res.status == FOUND and res.count >= need


def _verify_segment(F: FamilyInstance, spec: dict, rep: dict) -> VerificationReport:
    sets = list(F.sets)
    h = min(spec["h"], len(sets))
    check_guard(math.comb(len(sets), h), 10**6, "subfamilies")
    for idx in itertools.combinations(range(len(sets)), h):
        seg = max_axis_segment([sets[i] for i in idx], F.dim)
        if seg is None or (seg[0] is not None and seg[0] < spec["w"]):
            return VerificationReport("prop2.16", rep, PREMISE_UNMET, {"failing_subfamily": list(idx)})
    seg = max_axis_segment(sets, F.dim)
    witness = {"length": None if seg is None or seg[0] is None else format_scalar(seg[0]),
               "axis": None if seg is None else seg[1]}
    ok = seg is not None and (seg[0] is None or seg[0] >= spec["need"])
    return VerificationReport("prop2.16", rep, CONFIRMED if ok else COUNTEREXAMPLE, witness,
                              {"required": spec["need"]})


# ---------------------------------------------------------------------------
# Colorful instances
# ---------------------------------------------------------------------------


def project_out(poly: Polyhedron, count: int) -> Optional[Polyhedron]:
    """Exact projection onto the last dim - count coordinates (None if empty)."""
    sys = LinearSystem.build(poly.dim, [(h.normal, h.offset) for h in poly.constraints])
    sys = sys.eliminate_all(range(count))
    if sys.infeasible:
        return None
    rest = poly.dim - count
    hs = tuple(Halfspace(c[count:], r) for c, r, _ in sys.rows if any(c[count:]))
    return Polyhedron(rest, hs)


def has_mixed_point(family: Sequence[Polyhedron], a: int, b: int) -> bool:
    """Does the intersection meet R^a x Z^b (first a coordinates real)?"""
    d = a + b
    poly = intersect(family) if family else Polyhedron(d)
    if b == 0:
        return LinearSystem.build(d, [(h.normal, h.offset) for h in poly.constraints]).is_feasible()
    proj = project_out(poly, a) if a else poly
    if proj is None:
        return False
    res = max_lattice_box([proj], 0, "integer", dim=b, target=1)
    return res.status in (FOUND, UNBOUNDED) and (res.status == UNBOUNDED or res.count >= 1)


def colorful_helly_number(mode: str, d: int, params: dict) -> int:
    if mode == "doignon":
        return 2**d
    if mode == "mixedInteger":
        a = params.get("a", 0)
        b = d - a
        if a < 0 or b < 0:
            raise DomainError("need 0 <= a <= d")
        return (a + 1) * 2**b
    if mode == "boxInteger":
        return 2 ** (2 * d - 1)
    raise DomainError(f"unknown colorful mode {mode!r}")


def verify_colorful_instance(F: FamilyInstance, mode: str, params: Optional[dict] = None) -> VerificationReport:
    params = dict(params or {})
    d = F.dim
    h = colorful_helly_number(mode, d, params)
    classes = F.classes()
    if len(classes) != h:
        raise DomainError(f"{mode} needs exactly {h} color classes, got {len(classes)}")
    check_guard(math.prod(len(c) for c in classes), RAINBOW_GUARD, "rainbow selections")
    n = params.get("n", 1)
    a = params.get("a", 0)

    def good(sets) -> tuple:
        if mode == "doignon":
            res = max_lattice_box(sets, 0, "integer", dim=d, target=1)
            return res.at_least(1), res.exhaustive
        if mode == "boxInteger":
            res = max_lattice_box(sets, 0, "integer", dim=d, target=n)
            return res.at_least(n), res.exhaustive
        return has_mixed_point(sets, a, d - a), True

    rep = dict(params, d=d, h=h, mode=mode)
    exhaustive = True
    checked = 0
    for pick in itertools.product(*[range(len(c)) for c in classes]):
        ok, ex = good([classes[i][j] for i, j in enumerate(pick)])
        exhaustive &= ex
        checked += 1
        if not ok:
            return VerificationReport("colorful-" + mode, rep, PREMISE_UNMET if ex else INCONCLUSIVE,
                                      {"rainbow": list(pick)})
    for k, cls in enumerate(classes):
        ok, ex = good(cls)
        exhaustive &= ex
        if ok:
            return VerificationReport("colorful-" + mode, rep, CONFIRMED, {"class": k},
                                      {"rainbows_checked": checked})
    return VerificationReport("colorful-" + mode, rep, COUNTEREXAMPLE if exhaustive else INCONCLUSIVE,
                              {}, {"rainbows_checked": checked})


# ---------------------------------------------------------------------------
# Fractional census
# ---------------------------------------------------------------------------


@dataclass
class CensusResult:
    alpha: Fraction
    beta: Fraction
    good_subfamilies: int
    subfamilies: int
    best_subfamily: tuple

    def to_json(self) -> dict:
        return {
            "alpha": format_scalar(self.alpha),
            "beta": format_scalar(self.beta),
            "good_subfamilies": self.good_subfamilies,
            "subfamilies": self.subfamilies,
            "best_subfamily": list(self.best_subfamily),
        }


def fractional_census(F: FamilyInstance, n: int, t=0, size: Optional[int] = None) -> CensusResult:
    """alpha: share of size-2d subfamilies holding a t-thick box with n points;
    beta: largest share of F whose intersection holds one (exhaustive)."""
    sets = list(F.sets)
    m = len(sets)
    check_guard(m, CENSUS_GUARD, "census family size")
    if m == 0:
        raise DomainError("census needs a nonempty family")
    k = min(size or 2 * F.dim, m)
    cache = {}

    def good(idx) -> bool:
        if idx not in cache:
            res = max_lattice_box([sets[i] for i in idx], t, "real", dim=F.dim, target=n)
            cache[idx] = res.at_least(n)
        return cache[idx]

    subs = list(itertools.combinations(range(m), k))
    hits = sum(1 for idx in subs if good(idx))
    best = ()
    for size_ in range(m, 0, -1):
        found = next((idx for idx in itertools.combinations(range(m), size_) if good(idx)), None)
        if found is not None:
            best = found
            break
    return CensusResult(Fraction(hits, len(subs)), Fraction(len(best), m), hits, len(subs), best)


# ---------------------------------------------------------------------------
# Random families
# ---------------------------------------------------------------------------


def random_family(seed: int, d: int, count: int, coefficient_bound: int) -> FamilyInstance:
    """Deterministic random family: each set is one or two halfspaces with
    integer normals in [-B, B] and offsets in [0, 9B] with denominators 1..3.

    With probability 1/2 every set is also clipped to the box [-4B, 4B]^d.
    """
    if not 1 <= d <= 3:
        raise DomainError("random families are provided for 1 <= d <= 3")
    if coefficient_bound < 1:
        raise DomainError("coefficient bound must be at least 1 (normals must be nonzero)")
    if count < 1:
        raise DomainError("count must be positive")
    rng = random.Random(f"helly-family:{seed}:{d}:{count}:{coefficient_bound}")
    B = coefficient_bound
    clip = rng.random() < 0.5
    frame = []
    if clip:
        for i in range(d):
            for s in (1, -1):
                e = [0] * d
                e[i] = s
                frame.append(Halfspace(tuple(e), 4 * B))
    sets = []
    for j in range(count):
        hs = []
        for _ in range(rng.choice((1, 1, 2))):
            normal = [0] * d
            while not any(normal):
                normal = [rng.randint(-B, B) for _ in range(d)]
            offset = Fraction(rng.randint(0, 3 * B * 3), rng.randint(1, 3))
            hs.append(Halfspace(tuple(normal), offset))
        sets.append(Polyhedron(d, tuple(hs) + tuple(frame), f"R{j}"))
    return FamilyInstance(d, tuple(sets))
