"""The substitution map on surface points and its inverse."""

from ..complex.patch import as_tiling
from ..complex.tiling import subdivide
from ..errors import RecognizabilityError
from ..geometry.charts import SurfacePoint, canonical
from .partition import child_region, classify, pieces

_SUB = {}


def subdivided(T):
    """``subdivide(T)``, memoised per tiling object."""
    hit = _SUB.get(id(T))
    if hit is None or hit[0] is not T:
        if len(_SUB) > 16:
            _SUB.clear()
        hit = (T, subdivide(T))
        _SUB[id(T)] = hit
    return hit[1]


def map_point(T, x, S=None, with_region=False):
    """Image of ``x`` in ``subdivide(T)``; child ``j`` of face ``f`` is face ``6 f + j``."""
    T = as_tiling(T)
    x = canonical(T, x)
    return map_chart(T, x.face, x.xy, S, with_region)


def map_chart(T, face, xy, S=None, with_region=False):
    """Image of the chart point ``xy`` of ``face``, computed with that face's pieces."""
    T = as_tiling(T)
    S = subdivided(T) if S is None else S
    rid = classify(xy)
    piece = pieces()[rid]
    y = canonical(S, SurfacePoint(6 * int(face) + piece.child, piece.apply(xy)))
    return (y, rid) if with_region else y


def unmap_point(T, y, S=None):
    """Preimage in ``T`` of a point ``y`` of ``subdivide(T)``."""
    T = as_tiling(T)
    g = int(y.face)
    if not 0 <= g < 6 * T.n_faces:
        raise RecognizabilityError(f"face {g} has no parent in a complex with {T.n_faces} faces")
    f, child = divmod(g, 6)
    piece = pieces()[child_region(child, y.xy)]
    return canonical(T, SurfacePoint(f, piece.invert(y.xy)))


def map_points(T, points, S=None):
    S = subdivided(as_tiling(T)) if S is None else S
    return [map_point(T, p, S) for p in points]

