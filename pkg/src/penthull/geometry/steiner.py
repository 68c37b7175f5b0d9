"""Steiner-point graph approximation of surface distance.

Each edge carries ``k`` evenly spaced interior points; every pair of points
on the boundary of a common face is joined by a straight chord. Graph
distances are upper bounds on surface distances. Snapping each face crossing
of a shortest path to the nearest Steiner point costs at most one spacing
``h = 1 / (k + 1)``; with a rough count of ``2 d / INRADIUS + 2`` crossings this
gives a heuristic lower bound. The graph serves as an independent check of
the exact engine, not as a certificate.
"""

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .charts import INRADIUS, PENTAGON, coords_in, representations

_CACHE = {}


def _face_nodes(T, k):
    """Node ids around each face, plus their chart coordinates (same for every face)."""
    E = len(T.edges)
    V = T.n_vertices
    fe = T.face_edges
    edges = T.edges
    ids = np.empty((T.n_faces, 5 * (k + 1)), np.int64)
    xy = np.empty((5 * (k + 1), 2))
    ts = np.arange(1, k + 1) / (k + 1)
    for i in range(5):
        a, b = PENTAGON[i], PENTAGON[(i + 1) % 5]
        base = i * (k + 1)
        ids[:, base] = T.faces[:, i]
        xy[base] = a
        xy[base + 1: base + k + 1] = a + ts[:, None] * (b - a)
        e = fe[:, i]
        forward = edges[e, 0] == T.faces[:, i]
        j = np.arange(k)
        slot = np.where(forward[:, None], j[None, :], (k - 1 - j)[None, :])
        ids[:, base + 1: base + k + 1] = V + e[:, None] * k + slot
    return ids, xy, V + E * k


def steiner_graph(T, k):
    key = (id(T), k)
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is T:
        return hit[1:]
    ids, xy, n = _face_nodes(T, k)
    m = ids.shape[1]
    iu, ju = np.triu_indices(m, 1)
    w = np.hypot(*(xy[iu] - xy[ju]).T)
    a = ids[:, iu].ravel()
    b = ids[:, ju].ravel()
    rows, cols = np.minimum(a, b), np.maximum(a, b)
    # chords along shared edges appear twice; keep one copy instead of summing
    G = coo_matrix((np.tile(w, T.n_faces), (rows, cols)), shape=(n, n))
    order = np.lexsort((G.data, G.row, G.col))
    r, c, d = G.row[order], G.col[order], G.data[order]
    keep = np.ones(len(r), bool)
    keep[1:] = (r[1:] != r[:-1]) | (c[1:] != c[:-1])
    G = coo_matrix((d[keep], (r[keep], c[keep])), shape=(n, n)).tocsr()
    _CACHE.clear()
    _CACHE[key] = (T, G, ids, xy)
    return G, ids, xy


def steiner_distance(T, p, q, k=8):
    """``(lower, upper)`` bracket on the surface distance between ``p`` and ``q``."""
    G, ids, xy = steiner_graph(T, k)
    n = G.shape[0]
    # attach p and q as extra nodes joined to the nodes of every face holding them
    extra_r, extra_c, extra_w = [], [], []
    direct = np.inf
    for tag, pt in ((n, p), (n + 1, q)):
        for f, pxy in representations(T, pt):
            d = np.hypot(*(xy - np.asarray(pxy)).T)
            extra_r.extend([tag] * len(d))
            extra_c.extend(ids[f].tolist())
            extra_w.extend(d.tolist())
            other = coords_in(T, q if tag == n else p, f)
            if other is not None:
                direct = min(direct, float(np.hypot(*(other - np.asarray(pxy)))))
    Gc = G.tocoo()
    G2 = coo_matrix(
        (np.concatenate([Gc.data, extra_w]), (np.concatenate([Gc.row, extra_r]), np.concatenate([Gc.col, extra_c]))),
        shape=(n + 2, n + 2),
    ).tocsr()
    d = dijkstra(G2, directed=False, indices=n)[n + 1]
    upper = min(float(d), direct)
    h = 1.0 / (k + 1)
    lower = max(0.0, upper - h * (2.0 * upper / INRADIUS + 2.0))
    return lower, upper
