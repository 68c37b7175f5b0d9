"""Planar pictures of nested subdivisions inside one canonical pentagon.

A face of ``K_n`` with hierarchical id ``f`` is drawn by pulling its pentagon
back through the affine pieces of each ancestor. The pull-back of a segment
is exact: it is clipped against the (convex) piece targets in the child
chart and each part is mapped by the inverse of its own piece.
"""

from dataclasses import dataclass, field

import numpy as np

from .complex.rules import load_rule
from .complex.tiling import make_supertile
from .errors import ResourceLimitError, ValidationError
from .geometry.charts import PENTAGON
from .substitution.partition import pieces

MAX_RENDER_DEPTH = 6
SNAP = 1e-12
DEFAULT_FILLS = ("#f4d35e", "#ee964b", "#0d3b66", "#faf0ca", "#f95738", "#7d8597")


@dataclass
class RenderSpec:
    depth: int
    target: object = None           # a supertile-aligned Tiling with 6**depth faces; K_depth if None
    fills: dict = field(default_factory=dict)     # tile type -> fill colour
    stroke: str = "#222222"
    stroke_width: float = 0.6
    scale: float = 400.0
    output: str | None = None


def _pieces_by_child():
    out = {c: [] for c in range(6)}
    for p in pieces().values():
        A_inv = np.linalg.inv(p.A)
        out[p.child].append((np.asarray(p.target, float), A_inv, np.asarray(p.b, float)))
    return out


def _clip(a, b, poly):
    """Parameter interval of segment ``a -> b`` inside the convex polygon ``poly``."""
    t0, t1 = 0.0, 1.0
    d = b - a
    n = len(poly)
    area = sum(poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1] for i in range(n))
    sign = 1.0 if area > 0 else -1.0
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        e = q - p
        # inside means sign * cross(e, x - p) >= 0
        num = sign * (e[0] * (a[1] - p[1]) - e[1] * (a[0] - p[0]))
        den = sign * (e[0] * d[1] - e[1] * d[0])
        tol = 1e-12 * max(1.0, np.hypot(*e))
        if abs(den) < 1e-15:
            if num < -tol:
                return None
            continue
        t = -num / den
        if den > 0:
            t0 = max(t0, t - 1e-12)
        else:
            t1 = min(t1, t + 1e-12)
        if t0 > t1:
            return None
    return (max(t0, 0.0), min(t1, 1.0)) if t1 - t0 > 1e-12 else None


def pull_polyline(child, pts, table=None):
    """Pull a closed polyline from the chart of ``child`` into the parent chart."""
    table = _pieces_by_child() if table is None else table
    out = []
    n = len(pts)
    for i in range(n):
        a, b = pts[i], pts[(i + 1) % n]
        parts = []
        for tgt, A_inv, off in table[child]:
            iv = _clip(a, b, tgt)
            if iv is not None:
                parts.append((iv[0], iv[1], A_inv, off))
        if not parts:
            raise ValidationError(f"segment {a} -> {b} leaves the chart of child {child}")
        parts.sort(key=lambda r: (r[0], r[1]))
        d = b - a
        for t0, t1, A_inv, off in parts:
            for t in (t0, t1):
                if t >= 1.0 - 1e-12:
                    continue
                y = A_inv @ (a + t * d - off)
                if not out or np.hypot(*(y - out[-1])) > SNAP:
                    out.append(y)
    if len(out) > 1 and np.hypot(*(out[0] - out[-1])) <= SNAP:
        out.pop()
    return _drop_collinear(out)


def _drop_collinear(pts, tol=1e-12):
    keep = []
    n = len(pts)
    for i in range(n):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % n]
        u, v = b - a, c - b
        if abs(u[0] * v[1] - u[1] * v[0]) > tol * max(1e-300, np.hypot(*u) * np.hypot(*v)) or np.dot(u, v) < 0:
            keep.append(b)
    return keep


def face_polygons(depth):
    """Polygon (in the root chart) of every face of ``K_depth``, indexed by hierarchical id."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > MAX_RENDER_DEPTH:
        raise ResourceLimitError(f"render depth {depth} exceeds {MAX_RENDER_DEPTH}")
    table = _pieces_by_child()
    base = [np.asarray(p, float) for p in PENTAGON]
    polys = []
    for f in range(6**depth):
        digits = []
        g = f
        for _ in range(depth):
            digits.append(g % 6)
            g //= 6
        pts = base
        for j in digits:             # innermost first
            pts = pull_polyline(j, pts, table)
        polys.append(pts)
    return polys


def _fmt(x):
    s = f"{x:.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(spec):
    """SVG document (a string) of ``spec``; byte-identical across runs."""
    depth = spec.depth
    if depth > MAX_RENDER_DEPTH:
        raise ResourceLimitError(f"render depth {depth} exceeds {MAX_RENDER_DEPTH}")
    T = make_supertile(depth) if spec.target is None else spec.target
    if T.n_faces != 6**depth:
        raise ValidationError(f"target has {T.n_faces} faces, expected {6**depth} for depth {depth}")
    names = load_rule().tile_types
    fills = {n: DEFAULT_FILLS[i % len(DEFAULT_FILLS)] for i, n in enumerate(names)}
    fills.update(spec.fills)
    half = spec.scale * 0.9
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(2 * half)}" height="{_fmt(2 * half)}" '
        f'viewBox="{_fmt(-half)} {_fmt(-half)} {_fmt(2 * half)} {_fmt(2 * half)}">',
        f'<g transform="scale({_fmt(spec.scale)},{_fmt(-spec.scale)})" stroke="{spec.stroke}" '
        f'stroke-width="{_fmt(spec.stroke_width)}" vector-effect="non-scaling-stroke" stroke-linejoin="round">',
    ]
    for f, pts in enumerate(face_polygons(depth)):
        name = names[int(T.types[f])]
        d = "M" + " L".join(f"{_fmt(p[0])},{_fmt(p[1])}" for p in pts) + " Z"
        lines.append(f'<path id="f{f}" data-type="{name}" data-orient="{int(T.orient[f])}" '
                     f'fill="{fills[name]}" vector-effect="non-scaling-stroke" d="{d}"/>')
    lines += ["</g>", "</svg>", ""]
    doc = "\n".join(lines)
    if spec.output:
        with open(spec.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(doc)
    return doc
