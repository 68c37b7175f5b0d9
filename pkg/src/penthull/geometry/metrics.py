"""Surface distance against edge distance, and metric balls."""

import math
from dataclasses import dataclass, field

import numpy as np

from ..complex.patch import as_tiling, ball_faces, edge_distances, sub_patch
from .charts import canonical, vertex_of, vertex_point
from .geodesic import distance_field

BALL_TOL = 1e-9


@dataclass
class MetricReport:
    samples: int
    violations: list = field(default_factory=list)
    max_ratio: float = 0.0
    worst_pair: tuple | None = None
    pairs: list = field(default_factory=list)   # (u, v, d_lower, d_upper, d_edge)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "samples": self.samples,
            "violations": [list(v) for v in self.violations],
            "max_ratio": self.max_ratio,
            "worst_pair": list(self.worst_pair) if self.worst_pair else None,
        }


def compare_metrics(T, samples, seed=0, tol=1e-6):
    """Check ``d <= d' <= 3 d`` on random pairs of distinct vertices.

    ``d`` is the surface distance (exact bracket), ``d'`` the edge distance.
    """
    T = as_tiling(T)
    rng = np.random.default_rng(seed)
    rep = MetricReport(samples)
    if T.n_vertices < 2:
        return rep
    for _ in range(samples):
        u, v = (int(a) for a in rng.choice(T.n_vertices, size=2, replace=False))
        de = float(edge_distances(T, u)[v])
        F = distance_field(T, vertex_point(T, u), [vertex_point(T, v)])
        up = F.targets_upper[0]
        lo = max(0.0, up - 1e-12 * max(1.0, up))
        up = up + 1e-12 * max(1.0, up)
        rep.pairs.append((u, v, lo, up, de))
        if not (lo <= de + tol and de <= 3.0 * up + tol):
            rep.violations.append((u, v, lo, up, de))
        ratio = de / lo if lo > 0 else math.inf
        if ratio > rep.max_ratio:
            rep.max_ratio = ratio
            rep.worst_pair = (u, v)
    return rep


def ball_metric(T, x, r):
    """Tiles all of whose vertices lie within surface distance ``r`` of ``x``."""
    Tt = as_tiling(T)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    x = canonical(Tt, x)
    v = vertex_of(Tt, x)
    if r == 0:
        faces = []
    else:
        F = distance_field(Tt, x, radius=r + BALL_TOL)
        inside = F.upper <= r + BALL_TOL
        faces = np.flatnonzero(inside[Tt.faces].all(axis=1))
    extra = (v,) if v is not None else ()
    return sub_patch(Tt, faces, extra_vertices=extra, root=v, label=f"Bd({x.face},{r})")


def vertex_distances(T, v, radius):
    """Surface distances from vertex ``v``; ``inf`` beyond ``radius``."""
    Tt = as_tiling(T)
    F = distance_field(Tt, vertex_point(Tt, v), radius=radius)
    out = F.upper.copy()
    out[F.upper > radius] = np.inf
    return out


def ball_inclusions(T, v, n):
    """``(B_d'(v, n) <= B_d(v, n), B_d(v, n) <= B_d'(v, 3n))`` as face sets of ``T``."""
    Tt = as_tiling(T)
    inner = set(ball_faces(Tt, v, n)[0])
    outer = set(ball_faces(Tt, v, 3 * n)[0])
    mid = set(ball_metric(Tt, vertex_point(Tt, v), n).face_map.tolist())
    return inner <= mid, mid <= outer
