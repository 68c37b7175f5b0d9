"""Brackets on the hull metric and on the discrete (edge-ball) metric.

A cell-preserving isometry ``phi`` of a ball about ``x`` into the other tiling
is fixed by where it sends the face carrying ``x``: matching the tile type and
the distinguished edge pins down the vertex map, and propagation across
shared edges does the rest. So every candidate ``phi`` is an *anchor*
``f_x -> g`` and :func:`~penthull.complex.iso.extend` finds how far it goes.

The domain of ``phi`` at radius ``r`` is the set of tiles all of whose
vertices lie within surface distance ``r`` of ``x``, plus the tiles carrying
``x`` itself.

* Upper bound: for an anchor, ``phi`` certainly exists on every ball that
  avoids unmatched tiles and stays inside the known patch, and its origin
  displacement is measured exactly. ``eps = max(displacement, 1 / radius)``.
* Lower bound: a conflict met while propagating is a genuine obstruction
  once the ball contains the conflicting tile and the whole chain of tiles
  that forced it. Anchors whose image of ``x`` lies outside the known patch
  are at least the patch radius away.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..complex.iso import extend, isomorphic_balls
from ..complex.patch import ball, boundary_clearance as edge_clearance
from ..errors import DomainError
from ..geometry.charts import CIRCUMRADIUS, SurfacePoint, rotate_positions
from ..geometry.geodesic import distance_field

CAP = 1.0 / math.sqrt(2.0)
ROUND = 1e-12


@dataclass
class AnchorWitness:
    source_face: int
    target_face: int
    displacement: float
    radius: float
    epsilon: float

    def to_json(self):
        return dict(self.__dict__)


@dataclass
class HullDistance:
    lower: float
    upper: float
    cap_hit: bool
    inconclusive: bool = False
    witness: tuple | None = None     # (forward, backward) anchors achieving the upper bound
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "lower": self.lower,
            "upper": self.upper,
            "cap_hit": self.cap_hit,
            "inconclusive": self.inconclusive,
            "witness": None if self.witness is None else [w.to_json() if w else None for w in self.witness],
        }


@dataclass
class DiscreteHullDistance:
    """Bracket on ``d' = inf {1/n : radius-n edge balls rooted-isomorphic}``.

    Balls are compared as complexes in their own right; ``B(v, 1)`` is the bare
    vertex, so ``d' <= 1`` always.

    With ``exact`` the balls agree up to radius ``n_iso`` and provably differ at
    ``n_iso + 1``; the value is ``1 / n_iso`` and ``lower = 1 / (n_iso + 1)`` is
    the exclusive end of the interval of radii realising it.
    """

    lower: float
    upper: float
    exact: bool
    n_iso: int
    n_complete: int

    @property
    def value(self):
        return self.upper if self.exact else None

    def to_json(self):
        return dict(self.__dict__)


def _face_radii(P, lower, upper):
    """Per-face domain radius (max vertex distance; 0 on the carrier tiles)."""
    T = P.patch
    lo = lower[T.faces].max(axis=1)
    up = upper[T.faces].max(axis=1)
    lo[P.carrier_faces] = 0.0
    up[P.carrier_faces] = 0.0
    return lo, up


def _anchor_images(A, B):
    """Candidate images ``g`` of the origin's face with their image of the origin."""
    TA, TB = A.patch, B.patch
    f = A.origin.face
    dB = B.field.lower
    reach = dB[TB.faces].min(axis=1) - CIRCUMRADIUS
    out = []
    for g in np.flatnonzero((TB.types == TA.types[f]) & (reach <= CAP)):
        g = int(g)
        shift = (int(TB.orient[g]) - int(TA.orient[f])) % 5
        out.append((g, SurfacePoint(g, tuple(rotate_positions(A.origin.xy, shift)))))
    return f, out


def _path_max(ext, rho, f):
    """Largest domain radius along the propagation chain ending at matched face ``f``."""
    best = 0.0
    while f is not None:
        best = max(best, rho[f])
        f = ext.parent.get(f)
    return best


def direction(A, B):
    """Brackets on the least ``eps`` admitting ``phi: B(x, 1/eps) -> B`` with displacement ``<= eps``."""
    TA = A.patch
    f, cands = _anchor_images(A, B)
    rho_lo, rho_up = _face_radii(A, A.field.lower, A.field.upper)
    lower = min(CAP, B.guaranteed_radius)
    upper = CAP
    best = None
    if not cands:
        return lower, upper, None
    disp = distance_field(B.patch, B.origin, [y for _, y in cands])
    for k, (g, _) in enumerate(cands):
        d_up = disp.targets_upper[k] * (1 + ROUND) + ROUND
        d_lo = max(0.0, disp.targets_lower[k] * (1 - ROUND) - ROUND)
        if d_lo > CAP:
            continue
        ext = extend(TA, B.patch, f, g)
        # witness radius: every tile inside it is matched
        bad = np.ones(TA.n_faces, dtype=bool)
        bad[list(ext.face_map)] = False
        bad[list(ext.conflicts)] = True
        r_phi = min(A.guaranteed_radius, float(rho_lo[bad].min()) if bad.any() else math.inf)
        eps_up = max(d_up, 1.0 / r_phi if r_phi > 0 else math.inf)
        if eps_up < upper:
            upper = eps_up
            best = AnchorWitness(f, g, float(d_up), float(r_phi), float(eps_up))
        # obstruction radius: smallest ball certainly containing a forced conflict
        r_fail = math.inf
        for c in ext.conflicts:
            need = rho_up[c]
            if c in ext.face_map:
                need = max(need, _path_max(ext, rho_up, c))
            for h in ext.conflict_via.get(c, ()):
                need = max(need, _path_max(ext, rho_up, h))
            r_fail = min(r_fail, need)
        eps_lo = max(d_lo, 1.0 / r_fail if r_fail > 0 else math.inf)
        lower = min(lower, eps_lo)
    return float(min(lower, CAP)), float(min(upper, CAP)), best


def hull_distance(A, B):
    """Bracket on ``min(1/sqrt 2, inf Lambda)`` between two pointed patches."""
    lo1, up1, w1 = direction(A, B)
    lo2, up2, w2 = direction(B, A)
    upper = max(up1, up2)
    lower = min(max(lo1, lo2), upper)
    witness = (w1, w2) if upper < CAP else None
    return HullDistance(
        lower=float(lower),
        upper=float(upper),
        cap_hit=bool(upper >= CAP),
        inconclusive=A.guaranteed_radius < math.sqrt(2) and B.guaranteed_radius < math.sqrt(2),
        witness=witness,
        detail={"forward": (lo1, up1), "backward": (lo2, up2)},
    )


def discrete_hull_distance(A, B):
    """Bracket on the edge-ball metric between two vertex-pointed patches."""
    v, w = A.vertex, B.vertex
    if v is None or w is None:
        raise DomainError("discrete hull distance needs vertex origins")
    clear = min(edge_clearance(A.patch, v), edge_clearance(B.patch, w))
    n_complete = max(int(clear) - 1, 0) if math.isfinite(clear) else 10**6
    n_iso = 0
    for n in range(1, n_complete + 1):
        Pa, Pb = ball(A.patch, v, n), ball(B.patch, w, n)
        if isomorphic_balls(Pa, Pa.root, Pb, Pb.root, check_degree=False) is None:
            return DiscreteHullDistance(1.0 / (n_iso + 1), 1.0 / n_iso, True, n_iso, n_complete)
        n_iso = n
        if Pa.n_faces == A.patch.n_faces and Pb.n_faces == B.patch.n_faces:
            break
    return DiscreteHullDistance(0.0, 1.0 / n_iso if n_iso else 1.0, False, n_iso, n_complete)
