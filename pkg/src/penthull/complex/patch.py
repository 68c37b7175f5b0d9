"""Edge metric, combinatorial balls and sub-patches."""

from dataclasses import dataclass

import numpy as np
from scipy.sparse.csgraph import dijkstra

from ..errors import TruncationError
from .tiling import Tiling


@dataclass(frozen=True, eq=False)
class Patch:
    """A subcomplex of ``host`` together with its inclusion maps.

    ``vertex_map[i]`` / ``face_map[j]`` give host ids of local vertex ``i`` /
    face ``j``. ``truncated`` is set when the host's boundary may have cut the
    patch short.
    """

    tiling: Tiling
    host: Tiling
    vertex_map: np.ndarray
    face_map: np.ndarray
    truncated: bool = False
    root: int | None = None
    label: str = ""

    @property
    def n_faces(self):
        return self.tiling.n_faces

    def host_vertex(self, local):
        return int(self.vertex_map[local])

    def local_vertex(self, host_v):
        i = int(np.searchsorted(self.vertex_map, host_v))
        if i < len(self.vertex_map) and self.vertex_map[i] == host_v:
            return i
        raise KeyError(host_v)


def as_tiling(P):
    return P.tiling if isinstance(P, Patch) else P


def _check_vertex(T, v):
    if not 0 <= v < T.n_vertices:
        raise KeyError(f"vertex {v} not in complex with {T.n_vertices} vertices")


def edge_distances(T, v, limit=np.inf):
    """Breadth-first edge distances from ``v`` (``inf`` beyond ``limit``)."""
    _check_vertex(T, v)
    return dijkstra(T.adjacency, directed=False, indices=v, unweighted=True, limit=limit)


def edge_distance(T, u, v):
    """Length of a shortest edge path between ``u`` and ``v``."""
    T = as_tiling(T)
    _check_vertex(T, u)
    _check_vertex(T, v)
    if u == v:
        return 0
    d = edge_distances(T, u)[v]
    if not np.isfinite(d):
        raise ValueError(f"vertices {u} and {v} are in different components")
    return int(d)


def boundary_clearance(T, v):
    """Edge distance from ``v`` to the nearest vertex where the data may be cut off."""
    d = edge_distances(T, v)
    b = d[T.boundary_vertices]
    return float(b.min()) if len(b) else np.inf


def sub_patch(T, face_ids, extra_vertices=(), truncated=False, root=None, label=""):
    """Patch spanned by the given faces (plus isolated ``extra_vertices``)."""
    face_ids = np.asarray(sorted(set(int(f) for f in face_ids)), dtype=np.int64)
    verts = set(T.faces[face_ids].reshape(-1).tolist()) | set(int(v) for v in extra_vertices)
    vmap = np.asarray(sorted(verts), dtype=np.int64)
    relabel = {int(h): i for i, h in enumerate(vmap)}
    faces = np.vectorize(relabel.__getitem__, otypes=[np.int64])(T.faces[face_ids]) if len(face_ids) else np.zeros((0, 5), np.int64)
    local = Tiling(
        faces=faces,
        types=T.types[face_ids],
        orient=T.orient[face_ids],
        n_vertices=len(vmap),
        boundary=(),
        central_face=None,
        host_degree_override=T.host_degree[vmap] if len(vmap) else np.zeros(0, np.int64),
    )
    bnd = tuple(int(i) for i in np.flatnonzero(local.boundary_vertices))
    local = Tiling(local.faces, local.types, local.orient, local.n_vertices, bnd, None, local.host_degree_override)
    r = relabel[int(root)] if root is not None else None
    return Patch(local, T, vmap, face_ids, truncated, r, label)


def ball_faces(T, v, n):
    """Faces of :func:`ball` and its truncation flag, by a local search (no sub-patch)."""
    T = as_tiling(T)
    _check_vertex(T, v)
    nbrs = T.neighbor_lists
    dist = {v: 0}
    frontier = [v]
    for k in range(1, n + 1):
        nxt = []
        for u in frontier:
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = k
                    nxt.append(w)
        frontier = nxt
    bmask = T.boundary_vertices
    truncated = bool(bmask[list(dist)].any())
    fl = T.face_lists[0]
    indptr, fs, _ = T.vertex_faces
    cand = set()
    for u in dist:
        cand.update(fs[indptr[u]:indptr[u + 1]].tolist())
    faces = sorted(f for f in cand if all(w in dist for w in fl[f]))
    return faces, truncated


def ball(T, v, n, complete=False):
    """Combinatorial ball: tiles all of whose vertices lie within edge distance ``n`` of ``v``.

    ``v`` itself is always included. The ball is marked truncated when it may
    reach past the boundary of ``T``; with ``complete=True`` that raises instead.
    """
    T = as_tiling(T)
    _check_vertex(T, v)
    if n < 0:
        raise ValueError("radius must be nonnegative")
    d = edge_distances(T, v, limit=n + 1)
    inside = d <= n
    faces = np.flatnonzero(inside[T.faces].all(axis=1))
    clearance = d[T.boundary_vertices]
    truncated = bool(len(clearance) and clearance.min() <= n)
    if truncated and complete:
        raise TruncationError(f"ball of radius {n} around {v} reaches the boundary", achieved=int(clearance.min()) - 1)
    return sub_patch(T, faces, extra_vertices=(v,), truncated=truncated, root=v, label=f"B({v},{n})")


def combinatorial_diameter(T):
    T = as_tiling(T)
    d = dijkstra(T.adjacency, directed=False, unweighted=True)
    return int(d[np.isfinite(d)].max())
