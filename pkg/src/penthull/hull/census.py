"""Finite shadows of compactness, primitivity and the orbit relation."""

from dataclasses import dataclass, field

import numpy as np

from ..complex.iso import _embedding_from, subset_code
from ..complex.patch import ball_faces
from ..complex.rules import Decoration, load_rule
from ..complex.tiling import make_supertile, supertile_of


@dataclass
class Census:
    radius: int
    level: int
    classes: dict = field(default_factory=dict)   # code -> representative vertex
    counts: dict = field(default_factory=dict)    # code -> number of vertices
    n_complete: int = 0

    @property
    def size(self):
        return len(self.classes)

    def same_classes(self, other):
        return set(self.classes) == set(other.classes)

    def to_json(self):
        return {
            "radius": self.radius,
            "level": self.level,
            "classes": self.size,
            "complete_balls": self.n_complete,
            "representatives": sorted(self.classes.values()),
        }


def epsilon_net(radius, level, T=None):
    """Rooted-isomorphism classes of complete radius-``radius`` vertex balls of ``K_level``."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    T = make_supertile(level) if T is None else T
    cen = Census(radius, level)
    for v in range(T.n_vertices):
        faces, truncated = ball_faces(T, v, radius)
        if truncated:
            continue
        cen.n_complete += 1
        code = subset_code(T, faces, v, degrees=False)
        if code not in cen.classes:
            cen.classes[code] = v
        cen.counts[code] = cen.counts.get(code, 0) + 1
    return cen


def primitivity(max_k=8):
    """Least ``k`` with every tile type inside ``omega^k`` of each prototile (all orientations)."""
    rule = load_rule()
    n_types = len(rule.tile_types)
    out = {}
    for name in rule.tile_types:
        worst = 0
        for o in range(5):
            for k in range(max_k + 1):
                if len(np.unique(supertile_of(Decoration(name, o), k).types)) == n_types:
                    worst = max(worst, k)
                    break
            else:
                worst = None
                break
        out[name] = worst
    return out


@dataclass
class EquivalenceWitness:
    face_map: dict
    vertex_map: dict
    equivalent_vertices: list | None = None

    def to_json(self):
        return {
            "face_map": {str(k): int(v) for k, v in sorted(self.face_map.items())},
            "vertex_map": {str(k): int(v) for k, v in sorted(self.vertex_map.items())},
            "equivalent_vertices": self.equivalent_vertices,
        }


def r_equivalent(A, B):
    """Unrooted decoration-preserving isomorphism between the two patches, if any.

    Origins play no part: both points then lie on one tiling. For a vertex
    origin the witness also lists every vertex of ``B``, all of which point
    the same tiling.
    """
    S, T = A.patch, B.patch
    if S.n_faces != T.n_faces or S.n_vertices != T.n_vertices or S.n_faces == 0:
        return None
    for g in np.flatnonzero(T.types == S.types[0]):
        ext = _embedding_from(S, T, 0, int(g))
        if ext is not None and len(ext.face_map) == T.n_faces:
            eq = list(range(T.n_vertices)) if A.vertex is not None else None
            return EquivalenceWitness(ext.face_map, ext.vertex_map, eq)
    return None
