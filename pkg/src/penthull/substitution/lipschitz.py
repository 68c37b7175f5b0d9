"""Sampled check of the Lipschitz constants of the substitution and its inverse."""

import math
from dataclasses import dataclass, field

import numpy as np

from ..complex.patch import as_tiling
from ..geometry.charts import PENTAGON, SurfacePoint, canonical, edge_point, representations
from ..geometry.geodesic import distance_field
from .mapping import map_chart, map_point, subdivided, unmap_point
from .partition import blue_vertices

FORWARD_BOUND = 3.40
INVERSE_BOUND = 0.54


@dataclass
class LipschitzReport:
    samples: int
    forward_max: float = 0.0      # max d(wx, wy) / d(x, y)
    inverse_max: float = 0.0      # max d(x, y) / d(wx, wy)
    violations: list = field(default_factory=list)
    blue_ratios: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "samples": self.samples,
            "forward_max": self.forward_max,
            "inverse_max": self.inverse_max,
            "violations": len(self.violations),
            "blue_ratio_range": [min(self.blue_ratios), max(self.blue_ratios)] if self.blue_ratios else None,
        }


def _fan_weights():
    P = PENTAGON
    w = []
    for k in (1, 2, 3):
        u, v = P[k] - P[0], P[k + 1] - P[0]
        w.append(abs(u[0] * v[1] - u[1] * v[0]))
    return np.asarray(w) / sum(w)


_FAN_WEIGHTS = _fan_weights()


def random_point(T, rng, face=None):
    """Uniform point of a uniformly chosen face (fan triangulation from position 0)."""
    f = int(rng.integers(T.n_faces)) if face is None else face
    k = 1 + int(rng.choice(3, p=_FAN_WEIGHTS))
    a, b, c = PENTAGON[0], PENTAGON[k], PENTAGON[k + 1]
    u, v = rng.random(2)
    if u + v > 1:
        u, v = 1 - u, 1 - v
    return SurfacePoint(f, tuple(a + u * (b - a) + v * (c - a)))


def random_blue_point(face, rng):
    b = blue_vertices()
    k = int(rng.integers(5))
    u, v = rng.random(2)
    if u + v > 1:
        u, v = 1 - u, 1 - v
    return SurfacePoint(face, tuple(u * b[k] + v * b[(k + 1) % 5]))


def _dist(T, p, q):
    if canonical(T, p).close_to(canonical(T, q)):
        return 0.0, 0.0
    d = distance_field(T, p, [q]).targets_upper[0]
    slack = 1e-12 * max(1.0, d)
    return max(0.0, d - slack), d + slack


def verify_lipschitz(T, samples, seed=0, tol=1e-6, blue_samples=0):
    """Sample point pairs and check both Lipschitz inequalities with bracketed distances."""
    T = as_tiling(T)
    S = subdivided(T)
    rng = np.random.default_rng(seed)
    rep = LipschitzReport(samples)
    for _ in range(samples):
        x, y = random_point(T, rng), random_point(T, rng)
        wx, wy = map_point(T, x, S), map_point(T, y, S)
        lo, up = _dist(T, x, y)
        wlo, wup = _dist(S, wx, wy)
        if wlo > FORWARD_BOUND * up + tol or lo > INVERSE_BOUND * wup + tol:
            rep.violations.append((x, y, lo, up, wlo, wup))
        if lo > 0:
            rep.forward_max = max(rep.forward_max, wup / lo)
        if wlo > 0:
            rep.inverse_max = max(rep.inverse_max, up / wlo)
    for _ in range(blue_samples):
        f = int(rng.integers(T.n_faces))
        x, y = random_blue_point(f, rng), random_blue_point(f, rng)
        lo, up = _dist(T, x, y)
        if lo < 1e-6:
            continue
        wlo, wup = _dist(S, map_point(T, x, S), map_point(T, y, S))
        rep.blue_ratios.append(0.5 * (wlo + wup) / (0.5 * (lo + up)))
    return rep


def edge_consistency(T, n_edges, per_edge, seed=0):
    """Largest gap between the images of an edge point computed in its two faces."""
    T = as_tiling(T)
    S = subdivided(T)
    rng = np.random.default_rng(seed)
    interior = np.flatnonzero(~T.boundary_edge_mask)
    chosen = rng.choice(interior, size=min(n_edges, len(interior)), replace=False)
    worst = 0.0
    for e in chosen:
        u, v = (int(a) for a in T.edges[e])
        for t in rng.random(per_edge):
            p = edge_point(T, u, v, float(t))
            reps = representations(T, p)
            if len(reps) != 2:
                raise ValueError(f"edge {u}-{v} is not shared by two faces")
            (f, a), (g, b) = reps
            y1, y2 = map_chart(T, f, a, S), map_chart(T, g, b, S)
            gap = 0.0 if y1.face == y2.face else math.inf
            if y1.face == y2.face:
                gap = math.hypot(y1.xy[0] - y2.xy[0], y1.xy[1] - y2.xy[1])
            worst = max(worst, gap)
    return worst


def round_trip_error(T, samples, seed=0):
    """Largest chart distance between ``x`` and ``unmap(map(x))`` over random points."""
    T = as_tiling(T)
    S = subdivided(T)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        x = canonical(T, random_point(T, rng))
        z = canonical(T, unmap_point(T, map_point(T, x, S), S))
        gap = math.inf if z.face != x.face else math.hypot(z.xy[0] - x.xy[0], z.xy[1] - x.xy[1])
        worst = max(worst, gap)
    return worst
