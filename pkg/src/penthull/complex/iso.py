"""Decoration-preserving isomorphisms between patches.

A face-to-face match that respects tile type and the distinguished edge fixes
the image of all five vertices and sides, so an isomorphism of an
edge-connected patch is pinned down by the image of a single face. Every
search below is therefore anchored: choose the image of one face, propagate
across shared edges, stop at the first contradiction.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .patch import as_tiling


@dataclass(frozen=True, eq=False)
class RootedIso:
    vertex_map: dict
    face_map: dict
    source_origin: int | None = None
    target_origin: int | None = None

    def edge_map(self, src, dst):
        S, D = as_tiling(src), as_tiling(dst)
        out = {}
        for a, b in S.edges:
            out[S.edge_id(a, b)] = D.edge_id(self.vertex_map[int(a)], self.vertex_map[int(b)])
        return out

    def rotation(self, f, src, dst):
        """Cycle shift taking positions of face ``f`` to positions of its image."""
        S, D = as_tiling(src), as_tiling(dst)
        g = self.face_map[f]
        return (int(D.orient[g]) - int(S.orient[f])) % 5


@dataclass
class Extension:
    """Outcome of propagating a face anchor as far as it goes."""

    face_map: dict = field(default_factory=dict)
    vertex_map: dict = field(default_factory=dict)
    conflicts: set = field(default_factory=set)   # source faces that certainly cannot be matched
    blocked: set = field(default_factory=set)     # source faces cut off by the target's boundary
    bad_vertices: set = field(default_factory=set)
    parent: dict = field(default_factory=dict)    # BFS tree of matched faces
    conflict_via: dict = field(default_factory=dict)  # conflict face -> matched faces that force it


def _degree_ok(hs, ht, u, w):
    a, b = hs[u], ht[w]
    return a < 0 or b < 0 or a == b


def extend(S, T, f, g, check_degree=True, stop_on_conflict=False):
    """Grow the unique decoration-preserving map sending face ``f`` of ``S``
    to face ``g`` of ``T`` across shared edges.

    Returns an :class:`Extension`; with ``stop_on_conflict`` it returns
    ``None`` at the first contradiction.
    """
    S, T = as_tiling(S), as_tiling(T)
    ext = Extension()
    if S.types[f] != T.types[g]:
        if stop_on_conflict:
            return None
        ext.conflicts.add(f)
        ext.conflict_via[f] = ()
        return ext
    s_nf, s_ns = S.neighbors
    t_nf, t_ns = T.neighbors
    hs, ht = S.host_degree, T.host_degree
    inverse_face = {}
    inverse_vertex = {}
    vertex_src = {}

    def assign(fs, ft):
        """Match ``fs`` to ``ft``; on failure return the matched faces involved."""
        shift = (int(T.orient[ft]) - int(S.orient[fs])) % 5
        pairs = [(int(S.faces[fs, i]), int(T.faces[ft, (i + shift) % 5])) for i in range(5)]
        for u, w in pairs:
            if ext.vertex_map.get(u, w) != w:
                return (vertex_src[u],)
            if inverse_vertex.get(w, u) != u:
                return (vertex_src[inverse_vertex[w]],)
            if check_degree and not _degree_ok(hs, ht, u, w):
                ext.bad_vertices.add(u)
                return ()
        for u, w in pairs:
            if u not in ext.vertex_map:
                vertex_src[u] = fs
            ext.vertex_map[u] = w
            inverse_vertex[w] = u
        ext.face_map[fs] = ft
        inverse_face[ft] = fs
        return None

    why = assign(f, g)
    if why is not None:
        if stop_on_conflict:
            return None
        ext.conflicts.add(f)
        ext.conflict_via[f] = why
        return ext
    queue = deque([f])
    while queue:
        fs = queue.popleft()
        ft = ext.face_map[fs]
        shift = (int(T.orient[ft]) - int(S.orient[fs])) % 5
        for i in range(5):
            f2 = int(s_nf[fs, i])
            if f2 < 0 or f2 in ext.conflicts:
                continue
            j2 = int(s_ns[fs, i])
            g2 = int(t_nf[ft, (i + shift) % 5])
            if g2 < 0:
                if f2 not in ext.face_map:
                    ext.blocked.add(f2)
                continue
            k2 = int(t_ns[ft, (i + shift) % 5])
            ok = S.types[f2] == T.types[g2] and (j2 - int(S.orient[f2])) % 5 == (k2 - int(T.orient[g2])) % 5
            why = ()
            if f2 in ext.face_map:
                ok = ok and ext.face_map[f2] == g2
                if ok:
                    continue
            elif ok:
                if inverse_face.get(g2, f2) != f2:
                    why = (inverse_face[g2],)
                else:
                    why = assign(f2, g2)
                    if why is None:
                        ext.parent[f2] = fs
                        ext.blocked.discard(f2)
                        queue.append(f2)
                        continue
            if stop_on_conflict:
                return None
            if f2 in ext.face_map:
                # an already matched face disagrees with a neighbour: the region
                # around their shared edge cannot be matched consistently
                ext.conflicts.add(fs)
                ext.conflict_via[fs] = (f2,)
            else:
                ext.conflicts.add(f2)
                ext.conflict_via[f2] = (fs,) + tuple(why)
            ext.blocked.discard(f2)
    return ext


def _anchor_faces(P, x):
    fs, pos = P.faces_at(x)
    return [(int(f), int(p)) for f, p in sorted(zip(fs.tolist(), pos.tolist()))]


def _complete(P, Q, ext, check_degree):
    """Try to match faces left over after propagation (edge-disconnected pieces
    that touch already mapped vertices)."""
    remaining = [f for f in range(P.n_faces) if f not in ext.face_map]
    progress = True
    while remaining and progress:
        progress = False
        for f in list(remaining):
            for i in range(5):
                u = int(P.faces[f, i])
                if u not in ext.vertex_map:
                    continue
                w = ext.vertex_map[u]
                for g, q in _anchor_faces(Q, w):
                    if (i - int(P.orient[f])) % 5 != (q - int(Q.orient[g])) % 5:
                        continue
                    sub = extend(P, Q, f, g, check_degree, stop_on_conflict=True)
                    if sub is None:
                        continue
                    clash = any(ext.vertex_map.get(a, b) != b for a, b in sub.vertex_map.items())
                    used = set(ext.face_map.values())
                    if clash or any(ft in used for ft in sub.face_map.values()):
                        continue
                    ext.face_map.update(sub.face_map)
                    ext.vertex_map.update(sub.vertex_map)
                    progress = True
                    break
                if f in ext.face_map:
                    break
            remaining = [h for h in remaining if h not in ext.face_map]
    return not remaining and len(set(ext.vertex_map.values())) == len(ext.vertex_map)


def _embedding_from(P, Q, f, g, check_degree=True):
    ext = extend(P, Q, f, g, check_degree, stop_on_conflict=True)
    if ext is None or ext.blocked:
        return None
    if len(ext.face_map) < P.n_faces and not _complete(P, Q, ext, check_degree):
        return None
    return ext


def rooted_isomorphic(P, x, Q, y, check_degree=True):
    """The decoration-preserving embedding of ``P`` into ``Q`` sending ``x`` to ``y``, or ``None``."""
    Pt, Qt = as_tiling(P), as_tiling(Q)
    hp, hq = Pt.host_degree, Qt.host_degree
    if check_degree and not _degree_ok(hp, hq, x, y):
        return None
    if Pt.n_faces == 0:
        return RootedIso({int(x): int(y)}, {}, int(x), int(y))
    anchors = _anchor_faces(Pt, x)
    if anchors:
        f, p = anchors[0]
        candidates = [(g, q) for g, q in _anchor_faces(Qt, y)
                      if Qt.types[g] == Pt.types[f] and (q - int(Qt.orient[g])) % 5 == (p - int(Pt.orient[f])) % 5]
        for g, _ in candidates:
            ext = _embedding_from(Pt, Qt, f, g, check_degree)
            if ext is not None:
                return RootedIso(ext.vertex_map, ext.face_map, int(x), int(y))
        return None
    # x is an isolated vertex of P: anchor anywhere, then demand x -> y
    for g in range(Qt.n_faces):
        ext = _embedding_from(Pt, Qt, 0, g, check_degree)
        if ext is not None and ext.vertex_map.get(x, y) == y:
            vm = dict(ext.vertex_map)
            vm[int(x)] = int(y)
            return RootedIso(vm, ext.face_map, int(x), int(y))
    return None


def isomorphic_balls(P, x, Q, y, check_degree=True):
    """Rooted isomorphism in both directions (a bijection of the two patches)."""
    Pt, Qt = as_tiling(P), as_tiling(Q)
    if Pt.n_faces != Qt.n_faces:
        return None
    return rooted_isomorphic(P, x, Q, y, check_degree)


def find_occurrences(P, T, check_degree=True):
    """All decoration-preserving embeddings of ``P`` into ``T``, ordered by anchor face."""
    Pt, Tt = as_tiling(P), as_tiling(T)
    if Pt.n_faces == 0:
        raise ValueError("cannot search for an empty patch")
    found = []
    for g in np.flatnonzero(Tt.types == Pt.types[0]):
        ext = _embedding_from(Pt, Tt, 0, int(g), check_degree)
        if ext is not None:
            found.append(RootedIso(ext.vertex_map, ext.face_map))
    return found


def rooted_code(P, x, degrees=True):
    """Canonical, hashable description of the rooted patch ``(P, x)``.

    Two edge-connected rooted patches have equal codes exactly when a
    decoration-preserving rooted isomorphism exists between them (also
    preserving ambient vertex degrees when ``degrees`` is set).
    """
    return subset_code(as_tiling(P), None, x, degrees)


def subset_code(T, faces, x, degrees=True):
    """:func:`rooted_code` of the subcomplex of ``T`` spanned by ``faces``
    (all of ``T`` for ``None``), computed without building it."""
    hd = T.host_degree if degrees else None
    if faces is None:
        keep = None
        n_faces = T.n_faces
        anchors = _anchor_faces(T, x)
    else:
        keep = set(int(f) for f in faces)
        n_faces = len(keep)
        anchors = [a for a in _anchor_faces(T, x) if a[0] in keep]
    if not anchors:
        return ("vertex", int(hd[x]) if degrees else 0)
    fl, nfl, orient, types = T.face_lists
    best = None
    for f0, p0 in anchors:
        face_lab = {f0: 0}
        vert_lab = {}
        order = [f0]
        code = [("root", (p0 - orient[f0]) % 5)]
        qi = 0
        while qi < len(order):
            f = order[qi]
            qi += 1
            o = orient[f]
            row, nrow = fl[f], nfl[f]
            vs = []
            nb = []
            for i in range(5):
                v = row[(o + i) % 5]
                if v not in vert_lab:
                    vert_lab[v] = len(vert_lab)
                vs.append(vert_lab[v])
            for i in range(5):
                g = nrow[(o + i) % 5]
                if g < 0 or (keep is not None and g not in keep):
                    nb.append(-1)
                    continue
                if g not in face_lab:
                    face_lab[g] = len(face_lab)
                    order.append(g)
                nb.append(face_lab[g])
            code.append((types[f], tuple(vs), tuple(nb)))
        if len(order) != n_faces:
            code.append(("pieces", n_faces))
        degs = [0] * len(vert_lab)
        if degrees:
            for v, lab in vert_lab.items():
                degs[lab] = int(hd[v])
        code.append(tuple(degs))
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best
