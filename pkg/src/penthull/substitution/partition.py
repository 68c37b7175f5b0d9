"""Partition of the unit pentagon into the regions on which the substitution is affine.

Layout in the chart of a tile (cycle position ``k`` at angle ``90 + 72 k``):

* ``blue``: a small regular pentagon of side ``s`` rotated by 36 degrees, with
  vertex ``b_j`` at angle ``54 + 72 j`` (pointing at the midpoint of side
  ``j - 1``). It is dilated and rotated by ``M0`` onto the central child.
* around tile corner ``k`` (between ``b_right = b_k`` and ``b_left = b_{k+1}``):
  one ``orange`` triangle ``(b_left, b_right, V_k)``, split by the mirror axis
  through ``V_k`` into halves ``2k`` (right) and ``2k + 1`` (left), and two
  ``yellow`` triangles ``(b_k, m_{k-1}, V_k)`` (index ``2k``) and
  ``(b_{k+1}, m_k, V_k)`` (index ``2k + 1``), where ``m_i`` is the midpoint of
  side ``i``. All three land in corner child ``k``.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..errors import DomainError
from ..geometry.charts import PENTAGON, POS_TOL, rotation, signed_edge_distances

SQ5 = math.sqrt(5.0)
REFLECT = np.diag([-1.0, 1.0])
KINDS = ("blue", "orange", "yellow")


@dataclass(frozen=True, order=True)
class RegionId:
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown region kind {self.kind!r}")
        hi = 1 if self.kind == "blue" else 10
        if not 0 <= self.index < hi:
            raise ValueError(f"region index {self.index} out of range for {self.kind}")

    @property
    def corner(self):
        return None if self.kind == "blue" else self.index // 2

    @property
    def mirrored(self):
        return self.kind != "blue" and self.index % 2 == 1

    def __str__(self):
        return self.kind if self.kind == "blue" else f"{self.kind}[{self.index}]"


@dataclass
class PartitionData:
    p1: np.ndarray
    q1: np.ndarray
    p1p: np.ndarray
    q1p: np.ndarray
    s: float
    M0: np.ndarray
    M1: np.ndarray
    M2: np.ndarray
    norms: dict = field(default_factory=dict)
    inverse_norms: dict = field(default_factory=dict)
    dets: dict = field(default_factory=dict)

    def p(self, i):
        """``p_i``: ``p_1`` rotated by ``2 pi (i - 1) / 5``."""
        return rotation(2 * math.pi * (i - 1) / 5) @ self.p1

    def pp(self, i):
        return rotation(2 * math.pi * (i - 1) / 5) @ self.p1p

    def q(self, i):
        return rotation(2 * math.pi * (i - 1) / 5) @ self.q1

    def qp(self, i):
        return rotation(2 * math.pi * (i - 1) / 5) @ self.q1p


def _spec_norm(A):
    return float(np.linalg.norm(A, 2))


@lru_cache(maxsize=1)
def partition_constants():
    p1 = np.array([(SQ5 - math.sqrt(4 - SQ5)) / 4, (-math.sqrt(2 + 3 / SQ5) + math.sqrt(5 + 2 * SQ5)) / 4])
    q1 = np.array([0.0, p1[1]])
    p1p = np.array([0.0, math.sqrt((5 + SQ5) / 10)])
    q1p = np.array([(1 + SQ5) / 8, math.sqrt(10 + 22 / SQ5) / 8])
    s = (SQ5 - math.sqrt(4 - SQ5)) / 2
    data = PartitionData(p1, q1, p1p, q1p, s, None, None, None)
    rot = lambda i: rotation(2 * math.pi * (i - 1) / 5)
    P = lambda i: rot(i) @ p1
    Pp = lambda i: rot(i) @ p1p
    M0 = (np.linalg.norm(p1p) / np.linalg.norm(p1)) * rotation(math.pi / 5)
    M1 = np.column_stack([Pp(4) - Pp(3), Pp(1) - Pp(3)]) @ np.linalg.inv(np.column_stack([P(1) - P(2), Pp(1) - P(2)]))
    M2 = np.column_stack([Pp(5) - Pp(4), Pp(1) - Pp(4)]) @ np.linalg.inv(np.column_stack([q1p - P(1), Pp(1) - P(1)]))
    data.M0, data.M1, data.M2 = M0, M1, M2
    for name, M in (("M0", M0), ("M1", M1), ("M2", M2)):
        data.norms[name] = _spec_norm(M)
        data.inverse_norms[name] = _spec_norm(np.linalg.inv(M))
        data.dets[name] = float(np.linalg.det(M))
    for A in (p1, q1, p1p, q1p, M0, M1, M2):
        A.setflags(write=False)
    return data


@dataclass(frozen=True)
class AffinePiece:
    """``y = A x + b`` from the parent chart into the chart of child ``child``
    (0 = central, ``1 + k`` = corner ``k``)."""

    region: RegionId
    A: np.ndarray
    b: np.ndarray
    child: int
    source: tuple      # triangle or pentagon vertices in the parent chart
    target: tuple      # their images in the child chart

    def apply(self, xy):
        return self.A @ np.asarray(xy, float) + self.b

    def invert(self, xy):
        return np.linalg.solve(self.A, np.asarray(xy, float) - self.b)

    @property
    def det(self):
        return float(np.linalg.det(self.A))


def blue_vertices():
    d = partition_constants()
    return np.array([rotation(2 * math.pi * j / 5) @ d.p1 for j in range(5)])


def midpoint(i):
    return 0.5 * (PENTAGON[i] + PENTAGON[(i + 1) % 5])


@lru_cache(maxsize=1)
def pieces():
    """The 21 affine pieces, keyed by :class:`RegionId`."""
    d = partition_constants()
    b = blue_vertices()
    out = {RegionId("blue", 0): AffinePiece(RegionId("blue", 0), d.M0, np.zeros(2), 0,
                                            tuple(map(tuple, b)), tuple(map(tuple, PENTAGON)))}
    # built for corner 0, then conjugated by rotation to corner k
    P = PENTAGON
    orange = (d.M1, P[2] - d.M1 @ b[1])                      # b_1 -> pos 2, b_0 -> pos 3, V_0 -> pos 0
    yellow = (d.M2, P[3] - d.M2 @ b[0])                      # b_0 -> pos 3, m_4 -> pos 4, V_0 -> pos 0
    yellow_l = (REFLECT @ d.M2 @ REFLECT, REFLECT @ yellow[1])  # mirror image: b_1 -> pos 2, m_0 -> pos 1
    for k in range(5):
        Rk = rotation(2 * math.pi * k / 5)
        Rinv = Rk.T
        V, bl, br = P[k], b[(k + 1) % 5], b[k]
        half = 0.5 * (bl + br)
        specs = [
            ("orange", 2 * k, orange, (half, br, V), (0.5 * (P[2] + P[3]), P[3], P[0])),
            ("orange", 2 * k + 1, orange, (bl, half, V), (P[2], 0.5 * (P[2] + P[3]), P[0])),
            ("yellow", 2 * k, yellow, (br, midpoint((k - 1) % 5), V), (P[3], P[4], P[0])),
            ("yellow", 2 * k + 1, yellow_l, (bl, midpoint(k), V), (P[2], P[1], P[0])),
        ]
        for kind, idx, (A, t), src, dst in specs:
            rid = RegionId(kind, idx)
            out[rid] = AffinePiece(rid, A @ Rinv, t, 1 + k, tuple(map(tuple, src)), tuple(map(tuple, dst)))
    return out


def _in_triangle(xy, tri, tol):
    a, b, c = (np.asarray(v) for v in tri)
    def side(p, q):
        e = q - p
        return (e[0] * (xy[1] - p[1]) - e[1] * (xy[0] - p[0])) / math.hypot(*e)
    s1, s2, s3 = side(a, b), side(b, c), side(c, a)
    return (s1 >= -tol and s2 >= -tol and s3 >= -tol) or (s1 <= tol and s2 <= tol and s3 <= tol)


def _in_blue(xy, tol):
    b = blue_vertices()
    for j in range(5):
        e = b[(j + 1) % 5] - b[j]
        if (e[0] * (xy[1] - b[j][1]) - e[1] * (xy[0] - b[j][0])) / math.hypot(*e) < -tol:
            return False
    return True


def region_order():
    return [RegionId("blue", 0)] + [RegionId("orange", i) for i in range(10)] + [RegionId("yellow", i) for i in range(10)]


def classify(xy, tol=POS_TOL):
    """Region of a chart point; ties go blue, then orange, then yellow, then lowest index."""
    xy = np.asarray(xy, float)
    if np.any(signed_edge_distances(xy) < -tol):
        raise DomainError(f"point {tuple(xy)} lies outside the unit pentagon")
    if _in_blue(xy, tol):
        return RegionId("blue", 0)
    P = pieces()
    for rid in region_order()[1:]:
        if _in_triangle(xy, P[rid].source, tol):
            return rid
    # only reachable for points within tolerance of the tile boundary
    for rid in region_order()[1:]:
        if _in_triangle(xy, P[rid].source, 10 * tol):
            return rid
    raise DomainError(f"point {tuple(xy)} not covered by the partition")


def region_area(rid):
    pts = np.asarray(pieces()[rid].source)
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def child_region(child, xy, tol=POS_TOL):
    """Region whose image under its piece contains ``xy`` in the chart of ``child``."""
    if child == 0:
        return RegionId("blue", 0)
    k = child - 1
    P = PENTAGON
    # the corner child is fanned from position 0 into three target triangles
    xy = np.asarray(xy, float)
    right = xy[0] >= 0
    mid_lo = 0.5 * (P[2] + P[3])
    if _in_triangle(xy, (P[2], P[3], P[0]), tol):
        return RegionId("orange", 2 * k if xy[0] >= mid_lo[0] else 2 * k + 1)
    if _in_triangle(xy, (P[3], P[4], P[0]), tol) or (right and _in_triangle(xy, (P[3], P[4], P[0]), 10 * tol)):
        return RegionId("yellow", 2 * k)
    if _in_triangle(xy, (P[2], P[1], P[0]), 10 * tol):
        return RegionId("yellow", 2 * k + 1)
    raise DomainError(f"point {tuple(xy)} lies outside the corner child chart")
