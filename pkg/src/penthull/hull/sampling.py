"""Pairs of pointed patches for the sandwich and contraction checks."""

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from ..complex.iso import subset_code
from ..complex.patch import as_tiling, ball_faces
from .distance import discrete_hull_distance, hull_distance
from .omega import omega_pointed
from .pointed import pointed_patch

SANDWICH_FACTOR = 18.0
OMEGA_FACTOR = 20.4


def matched_vertex_groups(T, radius):
    """Vertices of ``T`` grouped by the class of their complete radius-``radius`` ball."""
    T = as_tiling(T)
    groups = defaultdict(list)
    for v in range(T.n_vertices):
        faces, truncated = ball_faces(T, v, radius)
        if not truncated:
            groups[subset_code(T, faces, v, degrees=False)].append(v)
    return [g for g in groups.values() if len(g) > 1]


def sample_vertex_pairs(T, count, seed=0, radius=3):
    """``count`` vertex pairs: half uniform, half with rooted-isomorphic ``radius`` balls.

    Uniform pairs are mostly far apart in the hull; matched pairs exercise the
    small-distance end.
    """
    T = as_tiling(T)
    rng = np.random.default_rng(seed)
    n_rand = count - count // 2
    pairs = [tuple(int(a) for a in rng.choice(T.n_vertices, 2, replace=False)) for _ in range(n_rand)]
    groups = matched_vertex_groups(T, radius)
    for _ in range(count - n_rand):
        if not groups:
            pairs.append(tuple(int(a) for a in rng.choice(T.n_vertices, 2, replace=False)))
            continue
        g = groups[int(rng.integers(len(groups)))]
        pairs.append(tuple(int(a) for a in rng.choice(g, 2, replace=False)))
    return pairs


class PatchCache:
    """Vertex-pointed patches of one host, built on demand."""

    def __init__(self, T):
        self.T = as_tiling(T)
        self._cache = {}

    def __call__(self, v):
        if v not in self._cache:
            self._cache[v] = pointed_patch(self.T, int(v), label=f"v{v}")
        return self._cache[v]


@dataclass
class SandwichRow:
    a: int
    b: int
    d: object         # HullDistance
    d_edge: object    # DiscreteHullDistance
    ok: bool

    def to_json(self):
        return {"pair": [self.a, self.b], "d": [self.d.lower, self.d.upper],
                "d_edge": [self.d_edge.lower, self.d_edge.upper], "ok": self.ok}


def sandwich(A, B, tol=1e-6, a=None, b=None):
    """Check ``d' <= d <= 18 d'`` in bracket form: each side's lower end against the other's upper end."""
    h = hull_distance(A, B)
    e = discrete_hull_distance(A, B)
    ok = bool(e.lower <= h.upper + tol and h.lower <= SANDWICH_FACTOR * e.upper + tol)
    return SandwichRow(a, b, h, e, ok)


@dataclass
class ContractionRow:
    pre: object       # HullDistance of the preimages
    image: object     # HullDistance of the images
    ok: bool          # image lower <= 20.4 * preimage upper + tol
    tight: bool       # image upper <= 20.4 * preimage lower + tol (decided both ways)

    def to_json(self):
        return {"pre": [self.pre.lower, self.pre.upper], "image": [self.image.lower, self.image.upper],
                "ok": self.ok, "tight": self.tight}


def omega_contraction(A, B, tol=1e-6):
    """Hull distance of ``omega`` images against ``20.4`` times that of the preimages."""
    pre = hull_distance(A, B)
    img = hull_distance(omega_pointed(A), omega_pointed(B))
    ok = bool(img.lower <= OMEGA_FACTOR * pre.upper + tol)
    tight = bool(img.upper <= OMEGA_FACTOR * pre.lower + tol)
    return ContractionRow(pre, img, ok, tight)
