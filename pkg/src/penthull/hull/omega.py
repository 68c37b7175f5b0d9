"""The substitution acting on pointed patches, its inverse, and supertile chains."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..complex.iso import _embedding_from
from ..complex.patch import sub_patch
from ..complex.rules import load_rule
from ..complex.tiling import desubstitute, subdivide, supertile_of
from ..errors import RecognizabilityError, TruncationError
from ..geometry.charts import SurfacePoint, canonical, coords_in, vertex_point
from ..geometry.geodesic import distance_field
from ..substitution.lipschitz import FORWARD_BOUND, INVERSE_BOUND
from ..substitution.mapping import map_point, unmap_point
from .pointed import PointedPatch


def omega_pointed(A):
    """Subdivide the patch and move the origin along; the radius grows by ``1 / 0.54``."""
    S = subdivide(A.patch)
    x = map_point(A.patch, A.origin, S)
    return PointedPatch(S, x, A.guaranteed_radius / INVERSE_BOUND, A.label and f"omega({A.label})")


def omega_preimage(A):
    """Pointed patch ``B`` with ``omega_pointed(B)`` equal to ``A`` (supertile-aligned patches only)."""
    T = desubstitute(A.patch)
    x = unmap_point(T, A.origin)
    return PointedPatch(T, x, A.guaranteed_radius / FORWARD_BOUND, A.label and f"omega^-1({A.label})")


@lru_cache(maxsize=8)
def supertile_diameter(k):
    """Surface diameter of ``omega^k`` of a prototile (all prototiles share the shape).

    Computed over vertex pairs with one end on the boundary.
    """
    T = supertile_of(load_rule().seed, k)
    best = 0.0
    for v in sorted(set(T.boundary)):
        F = distance_field(T, vertex_point(T, v), radius=math.inf)
        best = max(best, float(F.upper.max()))
    return best


@dataclass
class ChainLink:
    level: int
    face: int            # id of the level-k tile in the k-fold de-substituted complex
    tile_type: str
    orient: int
    origin: SurfacePoint  # the origin seen in that complex
    radius: float | None  # diameter of a level-k supertile
    verified: bool


def supertile_chain(A, depth, radii_up_to=3):
    """``(t, x) <= omega(t_1, x_1) <= ... <= omega^depth(t_depth, x_depth)`` inside ``A``.

    Each level is found by de-substitution and checked by matching the
    level-``k`` block of tiles against ``omega^k`` of its recorded prototile.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rule = load_rule()
    T0 = A.patch
    f0 = A.origin.face
    links = []
    T, x = T0, A.origin
    for k in range(depth + 1):
        if k > 0:
            try:
                T_next = desubstitute(T)
                x = unmap_point(T_next, x)
            except RecognizabilityError as exc:
                raise TruncationError(f"no level-{k} supertile: {exc}", achieved=k - 1) from exc
            T = T_next
        anc = f0 // 6**k
        xy = coords_in(T, x, anc)
        origin = SurfacePoint(anc, tuple(xy)) if xy is not None else canonical(T, x)
        deco = T.decoration(anc)
        block = sub_patch(T0, np.flatnonzero(np.arange(T0.n_faces) // 6**k == anc))
        model = supertile_of(deco, k)
        local = int(np.searchsorted(block.face_map, f0))
        ok = block.n_faces == model.n_faces and _embedding_from(model, block.tiling, f0 % 6**k, local) is not None
        radius = supertile_diameter(k) if k <= radii_up_to else None
        links.append(ChainLink(k, anc, deco.tile_type, deco.orient, origin, radius, ok))
    return links


def chain_rows(links):
    return [
        {"level": c.level, "face": c.face, "type": c.tile_type, "orient": c.orient,
         "origin": c.origin.to_json(), "radius": c.radius, "verified": c.verified}
        for c in links
    ]

