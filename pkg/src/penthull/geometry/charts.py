"""Unit-pentagon charts and the gluing isometries between neighbouring faces.

Every face is the canonical regular pentagon of edge length 1 centred at the
origin with cycle position ``j`` at angle ``90 + 72 j`` degrees. Crossing the
shared edge from face ``F`` (side ``i``) into face ``G`` (side ``j``) is the
orientation-preserving rigid motion ``GLUE[i][j]`` that lays ``F`` flat next to
``G`` in ``G``'s chart.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError

CIRCUMRADIUS = 1.0 / (2.0 * math.sin(math.pi / 5))
INRADIUS = CIRCUMRADIUS * math.cos(math.pi / 5)
DIAGONAL = (1.0 + math.sqrt(5.0)) / 2.0
AREA = 5.0 * 0.5 * CIRCUMRADIUS**2 * math.sin(2 * math.pi / 5)
POS_TOL = 1e-9

PENTAGON = np.array(
    [[CIRCUMRADIUS * math.cos(math.radians(90 + 72 * j)), CIRCUMRADIUS * math.sin(math.radians(90 + 72 * j))]
     for j in range(5)]
)
PENT = [tuple(map(float, p)) for p in PENTAGON]


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def _glue(i, j):
    a_f, b_f = PENTAGON[i], PENTAGON[(i + 1) % 5]
    # in G the shared edge runs the other way: G[j] = b, G[j+1] = a
    a_g, b_g = PENTAGON[(j + 1) % 5], PENTAGON[j]
    ang = math.atan2(*(b_g - a_g)[::-1]) - math.atan2(*(b_f - a_f)[::-1])
    R = rotation(ang)
    t = a_g - R @ a_f
    return R, t


GLUE = [[_glue(i, j) for j in range(5)] for i in range(5)]
# plain-float copies for the inner loops of the geodesic engine
GLUE_F = [[(R[0, 0], R[0, 1], R[1, 0], R[1, 1], t[0], t[1]) for R, t in row] for row in GLUE]


def apply_glue(i, j, xy):
    R, t = GLUE[i][j]
    return R @ np.asarray(xy, float) + t


def rotate_positions(xy, shift):
    """Chart coordinates after relabelling cycle position ``k`` as ``k + shift``."""
    return rotation(2 * math.pi * shift / 5) @ np.asarray(xy, float)


def signed_edge_distances(xy):
    """Inward distances from ``xy`` to the five side lines (all >= 0 inside)."""
    xy = np.asarray(xy, float)
    out = np.empty(5)
    for i in range(5):
        a, b = PENTAGON[i], PENTAGON[(i + 1) % 5]
        d = b - a
        # interior lies to the left of a counterclockwise side
        out[i] = (d[0] * (xy[1] - a[1]) - d[1] * (xy[0] - a[0]))
    return out


def inside(xy, tol=POS_TOL):
    return bool(np.all(signed_edge_distances(xy) >= -tol))


def locate(xy, tol=POS_TOL):
    """Classify a chart point: ``('vertex', j)``, ``('edge', i, t)`` or ``('face',)``.

    ``t`` is the arc-length parameter from ``cycle[i]`` toward ``cycle[i+1]``.
    """
    xy = np.asarray(xy, float)
    dists = signed_edge_distances(xy)
    if np.any(dists < -tol):
        raise DomainError(f"point {tuple(xy)} lies outside the unit pentagon")
    for j in range(5):
        if np.hypot(*(xy - PENTAGON[j])) <= tol:
            return ("vertex", j)
    for i in range(5):
        if abs(dists[i]) <= tol:
            a = PENTAGON[i]
            t = float(np.dot(xy - a, PENTAGON[(i + 1) % 5] - a))
            return ("edge", i, min(max(t, 0.0), 1.0))
    return ("face",)


@dataclass(frozen=True)
class SurfacePoint:
    face: int
    xy: tuple

    def __post_init__(self):
        object.__setattr__(self, "face", int(self.face))
        object.__setattr__(self, "xy", (float(self.xy[0]), float(self.xy[1])))

    def to_json(self):
        return {"face": self.face, "xy": list(self.xy)}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["face"], tuple(obj["xy"]))

    def close_to(self, other, tol=POS_TOL):
        return self.face == other.face and math.hypot(self.xy[0] - other.xy[0], self.xy[1] - other.xy[1]) <= tol


def vertex_point(T, v):
    """Surface point at vertex ``v`` in the chart of its lowest-numbered face."""
    fs, pos = T.faces_at(v)
    if len(fs) == 0:
        raise ValueError(f"vertex {v} touches no face")
    k = int(np.argmin(fs))
    return SurfacePoint(int(fs[k]), PENT[int(pos[k])])


def face_center(f):
    return SurfacePoint(f, (0.0, 0.0))


def representations(T, p, tol=POS_TOL):
    """Every ``(face, xy)`` chart expression of the surface point ``p``."""
    loc = locate(p.xy, tol)
    if loc[0] == "face":
        return [(p.face, p.xy)]
    if loc[0] == "vertex":
        v = int(T.faces[p.face, loc[1]])
        fs, pos = T.faces_at(v)
        return sorted((int(f), PENT[int(q)]) for f, q in zip(fs, pos))
    i, t = loc[1], loc[2]
    reps = [(p.face, p.xy)]
    nf, ns = T.neighbors
    g = int(nf[p.face, i])
    if g >= 0:
        j = int(ns[p.face, i])
        # reversed parameter along the neighbour's side
        a, b = PENTAGON[j], PENTAGON[(j + 1) % 5]
        xy = a + (1.0 - t) * (b - a)
        reps.append((g, (float(xy[0]), float(xy[1]))))
    return sorted(reps)


def canonical(T, p, tol=POS_TOL):
    """Express ``p`` in the chart of the lowest-numbered face that contains it."""
    f, xy = representations(T, p, tol)[0]
    loc = locate(xy, tol)
    if loc[0] == "vertex":
        xy = PENT[loc[1]]
    return SurfacePoint(f, xy)


def coords_in(T, p, face, tol=POS_TOL):
    """Chart coordinates of ``p`` in ``face``, or ``None`` when ``p`` is not on it."""
    for f, xy in representations(T, p, tol):
        if f == face:
            return np.asarray(xy, float)
    return None


def vertex_of(T, p, tol=POS_TOL):
    loc = locate(p.xy, tol)
    if loc[0] == "vertex":
        return int(T.faces[p.face, loc[1]])
    return None


def edge_point(T, u, v, t):
    """Point at arc length ``t`` from ``u`` along the edge ``u v``."""
    fs, pos = T.faces_at(u)
    for f, q in zip(fs, pos):
        f, q = int(f), int(q)
        if int(T.faces[f, (q + 1) % 5]) == v:
            a, b = PENTAGON[q], PENTAGON[(q + 1) % 5]
            return SurfacePoint(f, tuple(a + t * (b - a)))
        if int(T.faces[f, (q - 1) % 5]) == v:
            a, b = PENTAGON[q], PENTAGON[(q - 1) % 5]
            return SurfacePoint(f, tuple(a + t * (b - a)))
    raise KeyError((u, v))


def path_length(T, points):
    """Length of a polyline whose consecutive points share a face."""
    total = 0.0
    for p, q in zip(points, points[1:]):
        best = None
        for f, xy in representations(T, p):
            other = coords_in(T, q, f)
            if other is not None:
                d = float(np.hypot(*(other - np.asarray(xy))))
                best = d if best is None else min(best, d)
        if best is None:
            raise ValueError(f"consecutive path points {p} and {q} share no face")
        total += best
    return total
