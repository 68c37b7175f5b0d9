"""Finite decorated pentagonal 2-complexes and the subdivision rule acting on them.

Faces are stored as an ``(F, 5)`` integer array of vertex ids in
counterclockwise order. Position ``j`` of a cycle sits at angle
``90 + 72 j`` degrees in the face's chart (see :mod:`penthull.geometry.charts`),
so the cycle order also fixes the planar picture of the face.

Faces produced by :func:`subdivide` are numbered hierarchically: child ``j``
of face ``f`` gets id ``6 f + j`` (``j = 0`` central, ``j = 1 + k`` the corner at
parent vertex ``k``). Supertiles built this way can therefore be
de-substituted without any search.
"""

import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy import sparse

from ..errors import RecognizabilityError, ResourceLimitError, ValidationError
from .rules import Decoration, load_rule

DEFAULT_MAX_LEVEL = 7


def max_level():
    """Level cap for supertile generation; ``PENTHULL_MAX_LEVEL`` overrides it."""
    env = os.environ.get("PENTHULL_MAX_LEVEL")
    return int(env) if env else DEFAULT_MAX_LEVEL


@dataclass(frozen=True, eq=False)
class Tiling:
    faces: np.ndarray
    types: np.ndarray
    orient: np.ndarray
    n_vertices: int
    boundary: tuple = ()
    central_face: int | None = None
    host_degree_override: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        faces = np.asarray(self.faces, dtype=np.int64).reshape(-1, 5)
        object.__setattr__(self, "faces", faces)
        object.__setattr__(self, "types", np.asarray(self.types, dtype=np.int8).reshape(-1))
        object.__setattr__(self, "orient", np.asarray(self.orient, dtype=np.int8).reshape(-1))
        object.__setattr__(self, "boundary", tuple(int(v) for v in self.boundary))
        for arr in (self.faces, self.types, self.orient):
            arr.setflags(write=False)

    # -- sizes -------------------------------------------------------------

    @property
    def n_faces(self):
        return len(self.faces)

    @property
    def n_edges(self):
        return len(self.edges)

    def counts(self):
        return self.n_vertices, self.n_edges, self.n_faces

    def euler_characteristic(self):
        v, e, f = self.counts()
        return v - e + f

    def decoration(self, f):
        rule = load_rule()
        return Decoration(rule.tile_types[self.types[f]], int(self.orient[f]))

    # -- incidence ---------------------------------------------------------

    @cached_property
    def _edge_index(self):
        V = self.n_vertices
        a = self.faces
        b = np.roll(self.faces, -1, axis=1)
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        keys = lo * V + hi
        uniq, inv = np.unique(keys.reshape(-1), return_inverse=True)
        edges = np.stack([uniq // V, uniq % V], axis=1) if len(uniq) else np.zeros((0, 2), np.int64)
        return uniq, edges, inv.reshape(-1, 5)

    @property
    def edges(self):
        """``(E, 2)`` array of sorted endpoint pairs, in ascending order."""
        return self._edge_index[1]

    @property
    def face_edges(self):
        """Edge id of side ``i`` (``cycle[i] -> cycle[i+1]``) of each face."""
        return self._edge_index[2]

    def edge_id(self, u, v):
        uniq = self._edge_index[0]
        key = min(u, v) * self.n_vertices + max(u, v)
        i = int(np.searchsorted(uniq, key))
        if i >= len(uniq) or uniq[i] != key:
            raise KeyError((u, v))
        return i

    @cached_property
    def _sides(self):
        E = self.n_edges
        fe = self.face_edges.reshape(-1)
        counts = np.bincount(fe, minlength=E)
        if np.any(counts > 2):
            bad = int(np.flatnonzero(counts > 2)[0])
            raise ValidationError(f"edge {tuple(self.edges[bad])} bounds more than two faces")
        edge_faces = np.full((E, 2), -1, dtype=np.int64)
        edge_sides = np.full((E, 2), -1, dtype=np.int64)
        order = np.argsort(fe, kind="stable")
        sorted_e = fe[order]
        first = np.ones(len(order), dtype=bool)
        first[1:] = sorted_e[1:] != sorted_e[:-1]
        slot = np.where(first, 0, 1)
        edge_faces[sorted_e, slot] = order // 5
        edge_sides[sorted_e, slot] = order % 5
        return edge_faces, edge_sides

    @property
    def edge_faces(self):
        """Faces on either side of each edge; ``-1`` marks a boundary edge."""
        return self._sides[0]

    @cached_property
    def neighbors(self):
        """``(nbr_face, nbr_side)``: the face across side ``i`` of face ``f`` and
        the index of the shared edge in that face's cycle (``-1`` if none)."""
        ef, es = self._sides
        fe = self.face_edges
        fidx = np.arange(self.n_faces)[:, None]
        a_face, b_face = ef[fe, 0], ef[fe, 1]
        a_side, b_side = es[fe, 0], es[fe, 1]
        mine_is_a = a_face == fidx
        nbr_face = np.where(mine_is_a, b_face, a_face)
        nbr_side = np.where(mine_is_a, b_side, a_side)
        nbr_side = np.where(nbr_face < 0, -1, nbr_side)
        return nbr_face, nbr_side

    @cached_property
    def adjacency(self):
        V = self.n_vertices
        e = self.edges
        data = np.ones(2 * len(e), dtype=np.int8)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        return sparse.csr_matrix((data, (rows, cols)), shape=(V, V))

    @cached_property
    def degree(self):
        return np.diff(self.adjacency.indptr).astype(np.int64)

    @cached_property
    def vertex_faces(self):
        """CSR-style ``(indptr, faces, positions)``: faces around each vertex and
        the vertex's position in each face cycle."""
        flat = self.faces.reshape(-1)
        order = np.argsort(flat, kind="stable")
        indptr = np.zeros(self.n_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(flat, minlength=self.n_vertices), out=indptr[1:])
        return indptr, order // 5, order % 5

    def faces_at(self, v):
        indptr, fs, pos = self.vertex_faces
        return fs[indptr[v]:indptr[v + 1]], pos[indptr[v]:indptr[v + 1]]

    @cached_property
    def neighbor_lists(self):
        adj = self.adjacency
        ip, ix = adj.indptr.tolist(), adj.indices.tolist()
        return [ix[ip[v]:ip[v + 1]] for v in range(self.n_vertices)]

    @cached_property
    def face_lists(self):
        """Plain-list copies of ``faces``, ``neighbors[0]``, ``orient`` and ``types`` for tight loops."""
        return self.faces.tolist(), self.neighbors[0].tolist(), self.orient.tolist(), self.types.tolist()

    def neighbors_of(self, v):
        adj = self.adjacency
        return adj.indices[adj.indptr[v]:adj.indptr[v + 1]]

    @cached_property
    def boundary_edge_mask(self):
        return self.edge_faces[:, 1] < 0

    @cached_property
    def boundary_vertices(self):
        """Vertices on a boundary edge, or touched by no face at all."""
        mask = np.zeros(self.n_vertices, dtype=bool)
        mask[self.edges[self.boundary_edge_mask].reshape(-1)] = True
        used = np.zeros(self.n_vertices, dtype=bool)
        used[self.faces.reshape(-1)] = True
        return mask | ~used

    @cached_property
    def host_degree(self):
        """Degree in the ambient tiling, ``-1`` where the finite data cannot tell."""
        if self.host_degree_override is not None:
            return np.asarray(self.host_degree_override, dtype=np.int64)
        return np.where(self.boundary_vertices, -1, self.degree)

    # -- checks ------------------------------------------------------------

    def validate(self, disk=True):
        """Raise :class:`ValidationError` unless the complex is well formed.

        With ``disk=True`` also require connectivity and Euler characteristic 1.
        """
        F = self.n_faces
        if len(self.types) != F or len(self.orient) != F:
            raise ValidationError("decoration arrays do not match face count")
        if F and (self.faces.min() < 0 or self.faces.max() >= self.n_vertices):
            raise ValidationError("face references an unknown vertex")
        srt = np.sort(self.faces, axis=1)
        if np.any(srt[:, 1:] == srt[:, :-1]):
            raise ValidationError("a face repeats a vertex")
        if np.any((self.orient < 0) | (self.orient > 4)):
            raise ValidationError("orientation out of range")
        if np.any((self.types < 0) | (self.types >= len(load_rule().tile_types))):
            raise ValidationError("unknown tile type")
        ef, es = self._sides
        inner = ef[:, 1] >= 0
        fa, fb = ef[inner, 0], ef[inner, 1]
        sa, sb = es[inner, 0], es[inner, 1]
        # coherent orientation: the shared edge is traversed in opposite directions
        if np.any(self.faces[fa, sa] != self.faces[fb, (sb + 1) % 5]):
            raise ValidationError("adjacent faces are not coherently oriented")
        # each vertex star must be a single fan (manifold condition)
        nf, _ = self.neighbors
        if disk:
            if self.n_components() != 1:
                raise ValidationError("complex is not connected")
            if self.euler_characteristic() != 1:
                raise ValidationError(f"Euler characteristic {self.euler_characteristic()} != 1")
            if self.boundary:
                b = self.boundary
                bset = set(b)
                if len(bset) != len(b) or bset != set(np.flatnonzero(self.boundary_vertices).tolist()):
                    raise ValidationError("boundary cycle does not match boundary edges")
                for x, y in zip(b, b[1:] + b[:1]):
                    try:
                        e = self.edge_id(x, y)
                    except KeyError:
                        raise ValidationError(f"boundary step {x}-{y} is not an edge") from None
                    if not self.boundary_edge_mask[e]:
                        raise ValidationError(f"boundary step {x}-{y} is an interior edge")
        return self

    def n_components(self):
        if self.n_vertices == 0:
            return 0
        n, _ = sparse.csgraph.connected_components(self.adjacency, directed=False)
        return n

    # -- equality ----------------------------------------------------------

    def same_as(self, other):
        return (
            self.n_vertices == other.n_vertices
            and np.array_equal(self.faces, other.faces)
            and np.array_equal(self.types, other.types)
            and np.array_equal(self.orient, other.orient)
            and self.boundary == other.boundary
            and self.central_face == other.central_face
        )

    def __repr__(self):
        v, e, f = self.counts()
        return f"Tiling(V={v}, E={e}, F={f}, central={self.central_face})"


def single_tile(deco=None):
    """One decorated pentagon (``K_0`` for the seed decoration)."""
    rule = load_rule()
    deco = deco or rule.seed
    return Tiling(
        faces=[[0, 1, 2, 3, 4]],
        types=[rule.type_index(deco.tile_type)],
        orient=[deco.orient],
        n_vertices=5,
        boundary=(0, 1, 2, 3, 4),
        central_face=0,
    )


def subdivide(T):
    """Replace each pentagon by its six children.

    New vertex ids: old vertices keep theirs, then one midpoint per edge (in
    edge order), then five interior vertices per face.
    """
    rule = load_rule()
    V, E, F = T.n_vertices, T.n_edges, T.n_faces
    mids = V + T.face_edges
    cen = V + E + 5 * np.arange(F)[:, None] + np.arange(5)[None, :]
    old = T.faces
    out = np.empty((F, 6, 5), dtype=np.int64)
    out[:, 0, :] = np.roll(cen, 1, axis=1)  # [c4, c0, c1, c2, c3]
    for k in range(5):
        out[:, 1 + k, 0] = old[:, k]
        out[:, 1 + k, 1] = mids[:, k]
        out[:, 1 + k, 2] = cen[:, k]
        out[:, 1 + k, 3] = cen[:, (k - 1) % 5]
        out[:, 1 + k, 4] = mids[:, (k - 1) % 5]

    offsets = np.array([rule.central_offset[t] for t in rule.tile_types], dtype=np.int64)
    o = T.orient.astype(np.int64)
    types = np.empty((F, 6), dtype=np.int8)
    orient = np.empty((F, 6), dtype=np.int8)
    types[:, 0] = rule.type_index(rule.central_type)
    orient[:, 0] = (o + offsets[T.types]) % 5
    marked, plain = rule.type_index(rule.marked_corner_type), rule.type_index(rule.plain_corner_type)
    for k in range(5):
        types[:, 1 + k] = np.where(o == k, marked, plain)
        orient[:, 1 + k] = rule.corner_orient

    boundary = ()
    if T.boundary:
        b = T.boundary
        new_b = []
        for x, y in zip(b, b[1:] + b[:1]):
            new_b.extend((x, V + T.edge_id(x, y)))
        boundary = tuple(new_b)
    host = None
    if T.host_degree_override is not None:
        hd = np.asarray(T.host_degree_override)
        # old vertices keep their degree; interior new vertices get 4 (midpoints) or 3 (centres)
        mid_deg = np.where(T.boundary_edge_mask, -1, 4)
        host = np.concatenate([hd, mid_deg, np.full(5 * F, 3)])
    return Tiling(
        faces=out.reshape(-1, 5),
        types=types.reshape(-1),
        orient=orient.reshape(-1),
        n_vertices=V + E + 5 * F,
        boundary=boundary,
        central_face=None if T.central_face is None else 6 * T.central_face,
        host_degree_override=host,
    )


def make_supertile(n, limit=None):
    """``K_n``: the seed pentagon subdivided ``n`` times."""
    limit = max_level() if limit is None else limit
    if n < 0:
        raise ValueError("level must be nonnegative")
    if n > limit:
        raise ResourceLimitError(f"level {n} exceeds the cap {limit} (6^{n} faces)")
    T = single_tile()
    for _ in range(n):
        T = subdivide(T)
    return T


def supertile_of(deco, n):
    """``omega^n`` of a single prototile with decoration ``deco``."""
    T = single_tile(deco)
    for _ in range(n):
        T = subdivide(T)
    return T


def canonical_decomposition(T):
    f = np.arange(T.n_faces)
    return np.stack([f // 6, f % 6], axis=1)


def desubstitute(T, decomposition=None):
    """Inverse of :func:`subdivide` on supertile-aligned complexes.

    ``decomposition`` is an ``(F, 2)`` array (or mapping) assigning each face a
    ``(parent, child_index)``; defaults to the hierarchical numbering.
    """
    rule = load_rule()
    if decomposition is None:
        if T.n_faces % 6:
            raise RecognizabilityError("face count is not a multiple of 6")
        decomposition = canonical_decomposition(T)
    elif isinstance(decomposition, dict):
        decomposition = np.array([decomposition[f] for f in range(T.n_faces)], dtype=np.int64)
    dec = np.asarray(decomposition, dtype=np.int64)
    n_par = int(dec[:, 0].max()) + 1 if len(dec) else 0
    block = np.full((n_par, 6), -1, dtype=np.int64)
    for f, (p, j) in enumerate(dec):
        if not 0 <= j < 6 or block[p, j] >= 0:
            raise RecognizabilityError(f"face {f}: slot ({p}, {j}) invalid or taken twice")
        block[p, j] = f
    if np.any(block < 0):
        raise RecognizabilityError("some parent does not have all six children")

    faces = T.faces
    parent_cycles = np.empty((n_par, 5), dtype=np.int64)
    p_types = np.empty(n_par, dtype=np.int8)
    p_orient = np.empty(n_par, dtype=np.int8)
    for p in range(n_par):
        c = faces[block[p, 0]]
        k_faces = [faces[block[p, 1 + k]] for k in range(5)]
        for k in range(5):
            ck, ck1 = k_faces[k], k_faces[(k + 1) % 5]
            ok = (
                c[(k + 1) % 5] == ck[2]
                and c[k] == ck[3]
                and ck[1] == ck1[4]
                and ck[2] == ck1[3]
            )
            if not ok:
                raise RecognizabilityError(f"block of parent {p} violates the subdivision pattern at corner {k}")
        deco = rule.parent(T.decoration(block[p, 0]), [T.decoration(block[p, 1 + k]) for k in range(5)])
        if deco is None:
            raise RecognizabilityError(f"block of parent {p} carries inconsistent decorations")
        parent_cycles[p] = [kf[0] for kf in k_faces]
        p_types[p] = rule.type_index(deco.tile_type)
        p_orient[p] = deco.orient

    keep = np.unique(parent_cycles)
    relabel = np.full(T.n_vertices, -1, dtype=np.int64)
    relabel[keep] = np.arange(len(keep))
    boundary = tuple(int(relabel[v]) for v in T.boundary if relabel[v] >= 0)
    central = None
    if T.central_face is not None:
        central = int(dec[T.central_face, 0])
    host = None
    if T.host_degree_override is not None:
        host = np.asarray(T.host_degree_override)[keep]
    return Tiling(
        faces=relabel[parent_cycles],
        types=p_types,
        orient=p_orient,
        n_vertices=len(keep),
        boundary=boundary,
        central_face=central,
        host_degree_override=host,
    )


def exterior_decoration_clashes(T):
    """Interior edges whose two faces look alike from the shared edge.

    Two faces clash when they have the same tile type and the shared edge sits
    at the same offset from each face's distinguished edge.
    """
    ef, es = T._sides
    inner = np.flatnonzero(ef[:, 1] >= 0)
    fa, fb = ef[inner, 0], ef[inner, 1]
    sa, sb = es[inner, 0], es[inner, 1]
    same_type = T.types[fa] == T.types[fb]
    same_off = (sa - T.orient[fa]) % 5 == (sb - T.orient[fb]) % 5
    return inner[same_type & same_off]
