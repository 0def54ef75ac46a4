"""Families of convex sets given by halfspaces, with optional color classes."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DomainError
from .polyhedra import Halfspace, Polyhedron


@dataclass(frozen=True)
class FamilyInstance:
    dim: int
    sets: tuple
    colors: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        if self.dim < 1:
            raise DomainError("dimension must be positive")
        for s in self.sets:
            if s.dim != self.dim:
                raise DomainError(f"set {s.name!r} has dimension {s.dim}, expected {self.dim}")
        if self.colors is not None:
            colors = tuple(int(c) for c in self.colors)
            if len(colors) != len(self.sets):
                raise DomainError("one color per set is required")
            if colors and set(colors) != set(range(max(colors) + 1)):
                raise DomainError("color classes must be 0..h-1 with none empty")
            object.__setattr__(self, "colors", colors)

    def __len__(self):
        return len(self.sets)

    def classes(self) -> list:
        """Sets grouped by color, in color order."""
        if self.colors is None:
            raise DomainError("family has no colors")
        out = [[] for _ in range(max(self.colors) + 1 if self.colors else 0)]
        for s, c in zip(self.sets, self.colors):
            out[c].append(s)
        return out

    def subfamily(self, indices: Sequence[int]) -> "FamilyInstance":
        return FamilyInstance(self.dim, tuple(self.sets[i] for i in indices))

    def to_json(self) -> dict:
        data = {"dim": self.dim, "sets": [s.to_json() for s in self.sets]}
        if self.colors is not None:
            data["colors"] = list(self.colors)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "FamilyInstance":
        dim = int(data["dim"])
        sets = tuple(Polyhedron.from_json(s, dim) for s in data["sets"])
        return cls(dim, sets, tuple(data["colors"]) if data.get("colors") is not None else None)


def halfplane_family(dim: int, rows: Sequence[tuple], prefix: str = "H") -> FamilyInstance:
    """One set per halfspace ``normal . z <= offset``."""
    sets = tuple(
        Polyhedron(dim, (Halfspace(tuple(normal), offset),), f"{prefix}{i}")
        for i, (normal, offset) in enumerate(rows)
    )
    return FamilyInstance(dim, sets)
