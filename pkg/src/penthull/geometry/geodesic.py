"""Exact shortest paths on the piecewise-flat surface of a pentagonal complex.

Continuous Dijkstra over *windows*: a window is an interval of a face side
through which straight rays from a (pseudo-)source enter the next face,
recorded in that face's chart together with the distance ``sigma`` already
travelled to the pseudo-source. Windows are processed in order of their
nearest point, clipped against the far sides of each face they cross, and
turned into new pseudo-sources at vertices where a shortest path may bend
(interior vertices with cone angle above 2 pi, boundary vertices with
interior angle above pi). A window is dropped when an endpoint of its side
already has a known path that beats every point of the window.

Lengths are exact up to floating-point rounding; the reported bracket is the
computed value widened by a relative ``1e-12``.
"""

import heapq
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..complex.patch import as_tiling
from ..errors import PrecisionError
from .charts import GLUE_F, PENT, SurfacePoint, canonical, locate, path_length, representations, vertex_of

ROUND = 1e-12


@dataclass
class GeodesicResult:
    lower: float
    upper: float
    witness_path: list = field(default_factory=list)

    @property
    def value(self):
        return 0.5 * (self.lower + self.upper)

    def to_json(self):
        return {"lower": self.lower, "upper": self.upper, "path": [p.to_json() for p in self.witness_path]}


@dataclass
class DistanceField:
    """Bounds on the distance from one source to every vertex (and optional targets)."""

    upper: np.ndarray
    lower: np.ndarray
    targets_upper: list
    targets_lower: list
    frontier: float
    n_windows: int
    _engine: object = field(repr=False, default=None)
    _state: object = field(repr=False, default=None)

    def witness(self, k):
        return self._engine.reconstruct_target(self._state, k)

    def vertex_witness(self, v):
        return self._engine.reconstruct_vertex(self._state, v)


def _seg_dist(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    t = ((px - ax) * dx + (py - ay) * dy) / L2 if L2 > 0 else 0.0
    t = 0.0 if t < 0 else (1.0 if t > 1 else t)
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


class _State:
    __slots__ = ("cut", "dist", "pred", "tdist", "tpred", "heap", "seq", "win", "src_reps", "src_vertex", "targets")


class GeodesicEngine:
    """Per-tiling tables for repeated shortest-path queries."""

    def __init__(self, T):
        self.T = T
        self.faces = T.faces.tolist()
        nf, ns = T.neighbors
        self.nf = nf.tolist()
        self.ns = ns.tolist()
        indptr, fs, pos = T.vertex_faces
        self.vf = [list(zip(fs[indptr[v]:indptr[v + 1]].tolist(), pos[indptr[v]:indptr[v + 1]].tolist()))
                   for v in range(T.n_vertices)]
        nfaces = np.diff(indptr)
        bnd = T.boundary_vertices
        # shortest paths can only bend at saddles and at reflex boundary vertices
        self.spawn = np.where(bnd, nfaces >= 2, nfaces >= 4).tolist()

    # -- propagation -------------------------------------------------------

    def run(self, source, targets=(), radius=0.0):
        """Propagate from ``source`` until every target and every vertex within
        ``radius`` is settled."""
        T = self.T
        st = _State()
        st.dist = [math.inf] * T.n_vertices
        st.pred = [None] * T.n_vertices
        st.targets = []
        tface = {}
        for k, q in enumerate(targets):
            v = vertex_of(T, q)
            if v is not None:
                st.targets.append(("v", v))
            else:
                reps = representations(T, q)
                st.targets.append(("p", reps))
                for f, xy in reps:
                    tface.setdefault(f, []).append((k, xy[0], xy[1]))
        st.tdist = [math.inf] * len(st.targets)
        st.tpred = [None] * len(st.targets)
        st.heap = []
        st.cut = math.inf
        st.seq = 0
        st.win = []
        self._tface = tface

        sv = vertex_of(T, source)
        st.src_vertex = sv
        st.src_reps = representations(T, source)
        if sv is not None:
            st.dist[sv] = 0.0
            st.pred[sv] = ("s",)
            self._push(st, 0.0, 1, sv)
        else:
            for r, (f, (sx, sy)) in enumerate(st.src_reps):
                self._emit_from_point(st, f, sx, sy, 0.0, ("s", r), None)

        stop = radius
        frontier = math.inf
        while st.heap:
            key, _, kind, ident = st.heap[0]
            pending = [st.tdist[k] if t[0] == "p" else st.dist[t[1]] for k, t in enumerate(st.targets)]
            bound = max([stop] + pending)
            st.cut = bound
            if key > bound:
                frontier = key
                break
            heapq.heappop(st.heap)
            if kind == 0:
                self._process_window(st, ident)
            else:
                v = ident
                if key <= st.dist[v] + 1e-15:
                    fs = self.vf[v]
                    for f, m in fs:
                        mx, my = PENT[m]
                        self._emit_from_point(st, f, mx, my, key, ("v", v), m)
        for k, t in enumerate(st.targets):
            if t[0] == "v":
                st.tdist[k] = st.dist[t[1]]
                st.tpred[k] = ("vertex", t[1])
        upper = np.asarray(st.dist)
        lower = np.minimum(upper, frontier)
        tu = list(st.tdist)
        tl = [min(x, frontier) for x in tu]
        return DistanceField(upper, lower, tu, tl, frontier, len(st.win), self, st)

    def _push(self, st, key, kind, ident):
        st.seq += 1
        heapq.heappush(st.heap, (key, st.seq, kind, ident))

    def _relax_vertex(self, st, v, d, pred):
        if d < st.dist[v] - 1e-15:
            st.dist[v] = d
            st.pred[v] = pred
            if self.spawn[v]:
                self._push(st, d, 1, v)

    def _relax_target(self, st, k, d, pred):
        if d < st.tdist[k]:
            st.tdist[k] = d
            st.tpred[k] = pred

    def _emit_from_point(self, st, f, sx, sy, sigma, origin, vpos):
        """Straight segments from a point of face ``f`` to its vertices and
        targets, plus windows through its far sides."""
        cyc = self.faces[f]
        for m in range(5):
            if m == vpos:
                continue
            mx, my = PENT[m]
            self._relax_vertex(st, cyc[m], sigma + math.hypot(mx - sx, my - sy), ("f", origin, f))
        for k, yx, yy in self._tface.get(f, ()):
            self._relax_target(st, k, sigma + math.hypot(yx - sx, yy - sy), ("f", origin, f, yx, yy))
        for k in range(5):
            if vpos is not None and (k == vpos or (k + 1) % 5 == vpos):
                continue
            ax, ay = PENT[k]
            bx, by = PENT[(k + 1) % 5]
            if vpos is None and abs((bx - ax) * (sy - ay) - (by - ay) * (sx - ax)) <= 1e-12:
                continue  # source sits on this side; the neighbour's own chart covers it
            self._new_window(st, f, k, 0.0, 1.0, sx, sy, sigma, -1, origin)

    def _new_window(self, st, f, k, lo, hi, sx, sy, sigma, parent, origin):
        """Window on side ``k`` of face ``f`` (param ``lo..hi``), entering the neighbour."""
        h = self.nf[f][k]
        if h < 0 or hi - lo <= 1e-13:
            return
        ax, ay = PENT[k]
        bx, by = PENT[(k + 1) % 5]
        x0, y0 = ax + lo * (bx - ax), ay + lo * (by - ay)
        x1, y1 = ax + hi * (bx - ax), ay + hi * (by - ay)
        key = sigma + _seg_dist(sx, sy, x0, y0, x1, y1)
        if key > st.cut:
            return
        cyc = self.faces[f]
        dc = st.dist[cyc[k]]
        dd = st.dist[cyc[(k + 1) % 5]]
        if key > dc + hi + ROUND or key > dd + (1.0 - lo) + ROUND:
            return
        j = self.ns[f][k]
        r00, r01, r10, r11, tx, ty = GLUE_F[k][j]
        nsx = r00 * sx + r01 * sy + tx
        nsy = r10 * sx + r11 * sy + ty
        wid = len(st.win)
        st.win.append((h, j, 1.0 - hi, 1.0 - lo, nsx, nsy, sigma, parent, k, origin))
        self._push(st, key, 0, wid)

    def _process_window(self, st, wid):
        g, i, t0, t1, sx, sy, sigma, _, _, origin = st.win[wid]
        cyc = self.faces[g]
        ax, ay = PENT[i]
        bx, by = PENT[(i + 1) % 5]
        x0, y0 = ax + t0 * (bx - ax), ay + t0 * (by - ay)
        x1, y1 = ax + t1 * (bx - ax), ay + t1 * (by - ay)
        # re-check domination with current vertex estimates
        key = sigma + _seg_dist(sx, sy, x0, y0, x1, y1)
        if key > st.dist[cyc[i]] + t1 + ROUND or key > st.dist[cyc[(i + 1) % 5]] + (1.0 - t0) + ROUND:
            return
        u0x, u0y = x0 - sx, y0 - sy
        u1x, u1y = x1 - sx, y1 - sy
        sgn = 1.0 if u0x * u1y - u0y * u1x > 0 else -1.0
        scale = math.hypot(u0x, u0y) + math.hypot(u1x, u1y)
        eps = 1e-12 * scale * scale

        # signed position of each corner relative to the two bounding rays
        c0 = []
        c1 = []
        for px, py in PENT:
            dx, dy = px - sx, py - sy
            c0.append(sgn * (u0x * dy - u0y * dx))
            c1.append(sgn * (dx * u1y - dy * u1x))
        i1 = (i + 1) % 5
        for m in range(5):
            if m == i or m == i1:
                continue
            if c0[m] >= -eps and c1[m] >= -eps:
                px, py = PENT[m]
                self._relax_vertex(st, cyc[m], sigma + math.hypot(px - sx, py - sy), ("w", wid))
        tf = self._tface.get(g)
        if tf:
            for k, yx, yy in tf:
                dx, dy = yx - sx, yy - sy
                if sgn * (u0x * dy - u0y * dx) >= -eps and sgn * (dx * u1y - dy * u1x) >= -eps:
                    self._relax_target(st, k, sigma + math.hypot(dx, dy), ("w", wid, yx, yy))
        for k in range(5):
            if k == i:
                continue
            k1 = (k + 1) % 5
            lo, hi = 0.0, 1.0
            ha, hb = c0[k], c0[k1]
            if ha < 0:
                if hb < 0:
                    continue
                lo = ha / (ha - hb)
            elif hb < 0:
                hi = ha / (ha - hb)
            ha, hb = c1[k], c1[k1]
            if ha < 0:
                if hb < 0:
                    continue
                lo = max(lo, ha / (ha - hb))
            elif hb < 0:
                hi = min(hi, ha / (ha - hb))
            if hi - lo > 1e-13:
                self._new_window(st, g, k, lo, hi, sx, sy, sigma, wid, origin)

    # -- witnesses ---------------------------------------------------------

    def _unwind(self, st, wid, yx, yy):
        """Crossing points (target side first) of the straight segment from a
        window's pseudo-source to ``(yx, yy)`` in the window's face chart."""
        pts = []
        while wid >= 0:
            g, i, _, _, sx, sy, _, parent, exit_side, origin = st.win[wid]
            ax, ay = PENT[i]
            bx, by = PENT[(i + 1) % 5]
            # intersect segment S->Y with side line A->B
            dx, dy = yx - sx, yy - sy
            ex, ey = bx - ax, by - ay
            den = dx * ey - dy * ex
            s = ((ax - sx) * ey - (ay - sy) * ex) / den if den else 0.0
            cx, cy = sx + s * dx, sy + s * dy
            pts.append(SurfacePoint(g, (cx, cy)))
            # move Y into the previous face chart (inverse gluing)
            r00, r01, r10, r11, tx, ty = GLUE_F[i][exit_side]
            yx, yy = r00 * yx + r01 * yy + tx, r10 * yx + r11 * yy + ty
            last_origin = origin
            wid = parent
        return pts, last_origin

    def _origin_point(self, st, origin):
        if origin[0] == "s":
            f, xy = st.src_reps[origin[1]] if st.src_vertex is None else (None, None)
            if f is None:
                return vertex_point_of(self.T, st.src_vertex), None
            return SurfacePoint(f, xy), None
        v = origin[1]
        return vertex_point_of(self.T, v), v

    def _chain(self, st, pred):
        """Polyline (reversed) from a predecessor record back to the source."""
        pts = []
        while True:
            if pred[0] == "s":
                break
            if pred[0] == "f":
                origin = pred[1]
            else:
                _, origin = self._unwind(st, pred[1], pred[2], pred[3]) if len(pred) > 2 else (None, None)
            p, v = self._origin_point(st, origin)
            pts.append(p)
            if v is None:
                break
            pred = st.pred[v]
        return pts

    def reconstruct_target(self, st, k):
        pred = st.tpred[k]
        if pred is None:
            return []
        if pred[0] == "vertex":
            return self.reconstruct_vertex(st, pred[1])
        q = st.targets[k]
        if pred[0] == "f":
            f = pred[2]
            pts = [SurfacePoint(f, (pred[3], pred[4]))]
            origin = pred[1]
        else:
            wid, yx, yy = pred[1], pred[2], pred[3]
            g = st.win[wid][0]
            pts = [SurfacePoint(g, (yx, yy))]
            cross, origin = self._unwind(st, wid, yx, yy)
            pts.extend(cross)
        p, v = self._origin_point(st, origin)
        pts.append(p)
        if v is not None:
            pts.extend(self._vertex_chain(st, v))
        return [canonical(self.T, x) for x in reversed(pts)]

    def _vertex_chain(self, st, v):
        pts = []
        while True:
            pred = st.pred[v]
            if pred is None or pred[0] == "s":
                return pts
            if pred[0] == "f":
                origin = pred[1]
            else:
                wid = pred[1]
                g = st.win[wid][0]
                pos = self.faces[g].index(v)
                cross, origin = self._unwind(st, wid, *PENT[pos])
                pts.extend(cross)
            p, u = self._origin_point(st, origin)
            pts.append(p)
            if u is None:
                return pts
            v = u

    def reconstruct_vertex(self, st, v):
        if st.pred[v] is None:
            return []
        pts = [vertex_point_of(self.T, v)] + self._vertex_chain(st, v)
        return [canonical(self.T, x) for x in reversed(pts)]


def vertex_point_of(T, v):
    fs, pos = T.faces_at(v)
    k = int(np.argmin(fs))
    return SurfacePoint(int(fs[k]), PENT[int(pos[k])])


_ENGINES = {}


def engine_for(T):
    key = id(T)
    eng = _ENGINES.get(key)
    if eng is None or eng.T is not T:
        if len(_ENGINES) > 32:
            _ENGINES.clear()
        eng = GeodesicEngine(T)
        _ENGINES[key] = eng
    return eng


def distance_field(T, source, targets=(), radius=0.0):
    """Distances from ``source`` to every vertex within ``radius`` and to ``targets``."""
    T = as_tiling(T)
    return engine_for(T).run(source, targets, radius)


def geodesic_distance(T, p, q, tol=1e-6):
    """Certified bracket on the surface distance between ``p`` and ``q``."""
    T = as_tiling(T)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    p, q = canonical(T, p), canonical(T, q)
    if p.close_to(q):
        return GeodesicResult(0.0, 0.0, [p])
    field_ = distance_field(T, p, [q])
    d = field_.targets_upper[0]
    if not math.isfinite(d):
        raise PrecisionError("points lie in different components", best=(field_.targets_lower[0], d))
    path = field_.witness(0)
    slack = ROUND * max(1.0, d)
    res = GeodesicResult(max(0.0, d - slack), d + slack, path)
    if res.upper - res.lower > tol:
        raise PrecisionError(f"bracket width {res.upper - res.lower} exceeds {tol}", best=res)
    return res


def witness_length(T, path):
    return path_length(as_tiling(T), path)
