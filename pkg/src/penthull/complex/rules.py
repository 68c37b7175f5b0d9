"""Decoration alphabet and subdivision rule, loaded from the packaged data file."""

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources


@dataclass(frozen=True)
class Decoration:
    """Marking of one pentagon.

    ``tile_type`` is a label from the prototile alphabet and ``orient`` the
    index (0..4) of the distinguished edge in the face's counterclockwise
    vertex cycle. The edge is read as an arrow ``cycle[orient] -> cycle[orient+1]``,
    which breaks the reflection symmetry of the pentagon as well.
    """

    tile_type: str
    orient: int

    def __post_init__(self):
        if not 0 <= self.orient < 5:
            raise ValueError(f"orientation must be in 0..4, got {self.orient}")


@dataclass(frozen=True)
class SubdivisionRule:
    version: int
    tile_types: tuple
    seed: Decoration
    central_type: str
    central_offset: dict
    corner_orient: int
    marked_corner_type: str
    plain_corner_type: str
    pieces: tuple
    quadpent: dict

    def type_index(self, name):
        return self.tile_types.index(name)

    def children(self, deco):
        """Decorations of the six children of a tile: central first, then the
        corners at vertices 0..4 of the parent cycle."""
        central = Decoration(self.central_type, (deco.orient + self.central_offset[deco.tile_type]) % 5)
        corners = [
            Decoration(self.marked_corner_type if k == deco.orient else self.plain_corner_type,
                       self.corner_orient)
            for k in range(5)
        ]
        return [central] + corners

    def parent(self, central, corners):
        """Invert :meth:`children`; returns ``None`` when the six decorations
        are not the children of any prototile."""
        if central.tile_type != self.central_type:
            return None
        marked = [k for k, d in enumerate(corners) if d.tile_type == self.marked_corner_type]
        if len(marked) != 1:
            return None
        if any(d.orient != self.corner_orient for d in corners):
            return None
        if any(d.tile_type not in (self.marked_corner_type, self.plain_corner_type) for d in corners):
            return None
        o = marked[0]
        offset = (central.orient - o) % 5
        for name, off in self.central_offset.items():
            if off == offset:
                return Decoration(name, o)
        return None


@lru_cache(maxsize=None)
def load_rule():
    raw = json.loads(resources.files("penthull.data").joinpath("rules.json").read_text())
    cc = raw["corner_child"]
    return SubdivisionRule(
        version=raw["version"],
        tile_types=tuple(raw["tile_types"]),
        seed=Decoration(raw["seed"]["type"], raw["seed"]["orient"]),
        central_type=raw["central_child"]["type"],
        central_offset=dict(raw["central_child"]["orient_offset"]),
        corner_orient=cc["orient"],
        marked_corner_type=cc["type_at_marked_vertex"],
        plain_corner_type=cc["type_elsewhere"],
        pieces=tuple(raw["pieces"]),
        quadpent=dict(raw["quadpent"]),
    )
