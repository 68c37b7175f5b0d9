"""Command-line front end: ``penthull <subcommand> ...``."""

import argparse
import json
import sys
from collections import Counter

from .complex.io import dumps, tiling_from_json, tiling_to_json
from .complex.patch import ball, edge_distance
from .complex.tiling import make_supertile, subdivide
from .errors import PentHullError, ResourceLimitError
from .geometry.charts import SurfacePoint, vertex_point
from .geometry.geodesic import geodesic_distance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(args, obj, text=None):
    out = text if text is not None else dumps(obj)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out if out.endswith("\n") else out + "\n")
    else:
        sys.stdout.write(out if out.endswith("\n") else out + "\n")


def _read_json(path):
    if path in (None, "-"):
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _tiling(args):
    """``-n`` builds ``K_n``; otherwise the tiling JSON is read from ``--input`` or stdin."""
    if getattr(args, "level", None) is not None:
        return make_supertile(args.level)
    return tiling_from_json(_read_json(getattr(args, "input", None)))


def _point(T, spec):
    """``v:<vertex>`` or ``<face>:<x>,<y>``."""
    if spec.startswith("v:"):
        return vertex_point(T, int(spec[2:]))
    face, xy = spec.split(":")
    x, y = (float(c) for c in xy.split(","))
    return SurfacePoint(int(face), (x, y))


def _xy(text):
    try:
        x, y = (float(c) for c in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from exc
    return x, y


def cmd_gen(args):
    _emit(args, tiling_to_json(make_supertile(args.level)))


def cmd_subdivide(args):
    T = tiling_from_json(_read_json(args.input))
    for _ in range(args.times):
        T = subdivide(T)
    _emit(args, tiling_to_json(T))


def cmd_ball(args):
    T = _tiling(args)
    B = ball(T, args.vertex, args.radius)
    _emit(args, {
        "root": B.root,
        "radius": args.radius,
        "truncated": B.truncated,
        "vertex_map": B.vertex_map.tolist(),
        "face_map": B.face_map.tolist(),
        "tiling": tiling_to_json(B.tiling),
    })


def cmd_dist(args):
    T = _tiling(args)
    p, q = _point(T, args.source), _point(T, args.target)
    out = {"source": p.to_json(), "target": q.to_json()}
    if args.metric in ("surface", "both"):
        out["surface"] = geodesic_distance(T, p, q, tol=args.tol).to_json()
    if args.metric in ("edge", "both"):
        if not (args.source.startswith("v:") and args.target.startswith("v:")):
            raise UsageError("edge distance needs vertex endpoints (v:<id>)")
        out["edge"] = edge_distance(T, int(args.source[2:]), int(args.target[2:]))
    _emit(args, out)


def cmd_map_point(args):
    from .substitution.mapping import map_point

    T = _tiling(args)
    if args.point is not None:
        x = SurfacePoint.from_json(json.loads(args.point))
    elif args.face is not None and args.xy is not None:
        x = SurfacePoint(args.face, args.xy)
    else:
        raise UsageError("map-point needs --point JSON or both --face and --xy")
    y, rid = map_point(T, x, with_region=True)
    _emit(args, {"point": x.to_json(), "image": y.to_json(), "region": str(rid)})


def cmd_hull_dist(args):
    from .hull.distance import discrete_hull_distance, hull_distance
    from .hull.pointed import PointedPatch

    A = PointedPatch.from_json(_read_json(args.a))
    B = PointedPatch.from_json(_read_json(args.b))
    out = hull_distance(A, B).to_json()
    if args.discrete:
        out["discrete"] = discrete_hull_distance(A, B).to_json()
    _emit(args, out)


def cmd_quadpent(args):
    from .hull.quadpent import quadpent_tiling

    _emit(args, quadpent_tiling(args.level).to_json())


def cmd_eps_net(args):
    from .hull.census import epsilon_net

    cen = epsilon_net(args.radius, args.level)
    out = cen.to_json()
    if args.compare is not None:
        other = epsilon_net(args.radius, args.compare)
        out["compare"] = other.to_json()
        out["stable"] = cen.same_classes(other)
    _emit(args, out)
    return EXIT_OK if out.get("stable", True) else EXIT_FAIL


def cmd_chain(args):
    from .errors import TruncationError
    from .hull.omega import chain_rows, supertile_chain
    from .hull.pointed import PointedPatch
    from .hull.quadpent import quadpent_tiling

    A = PointedPatch.from_json(_read_json(args.input)) if args.level is None else quadpent_tiling(args.level)
    try:
        links = supertile_chain(A, args.depth)
    except TruncationError as exc:
        _emit(args, {"error": str(exc), "achieved": exc.achieved})
        return EXIT_FAIL
    rows = chain_rows(links)
    _emit(args, {"depth": args.depth, "chain": rows})
    return EXIT_OK if all(r["verified"] for r in rows) else EXIT_FAIL


def cmd_verify(args):
    from .verify import SUITES, run_suite

    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(s, args.level, args.samples, seed=args.seed, tol=args.tol).to_json() for s in names]
    ok = all(r["ok"] for r in reports)
    _emit(args, {"ok": ok, "reports": reports})
    if not ok:
        for r in reports:
            for name in r["violated"]:
                print(f"violated: {r['suite']}.{name}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_render_svg(args):
    from .render import RenderSpec, render_svg

    doc = render_svg(RenderSpec(depth=args.depth))
    _emit(args, None, text=doc)


def cmd_stats(args):
    T = _tiling(args)
    V, E, F = T.counts()
    deg = Counter(int(d) for d in T.degree)
    names = __import__("penthull.complex.rules", fromlist=["load_rule"]).load_rule().tile_types
    types = Counter(names[int(t)] for t in T.types)
    _emit(args, {
        "vertices": V, "edges": E, "faces": F, "euler": V - E + F,
        "boundary_vertices": len(T.boundary),
        "degrees": {str(k): deg[k] for k in sorted(deg)},
        "types": {k: types[k] for k in sorted(types)},
    })


def build_parser():
    p = _Parser(prog="penthull", description="Pentagonal substitution tilings, their metrics and hull distances.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, help=help_, description=help_)
        s.set_defaults(fn=fn)
        s.add_argument("-o", "--output", help="write to this file instead of stdout")
        return s

    s = add("gen", cmd_gen, "supertile K_n as tiling JSON")
    s.add_argument("-n", "--level", type=int, required=True)

    s = add("subdivide", cmd_subdivide, "apply the subdivision rule to a tiling JSON")
    s.add_argument("input", nargs="?", default="-")
    s.add_argument("--times", type=int, default=1)

    for name, fn, help_ in [("ball", cmd_ball, "combinatorial ball around a vertex"),
                            ("dist", cmd_dist, "surface and edge distances between two points"),
                            ("map-point", cmd_map_point, "image of a surface point under the substitution"),
                            ("stats", cmd_stats, "counts, degrees and tile types")]:
        s = add(name, fn, help_)
        s.add_argument("-n", "--level", type=int, help="use K_n instead of reading a tiling")
        s.add_argument("-i", "--input", default="-", help="tiling JSON (default stdin)")
        if name == "ball":
            s.add_argument("--vertex", type=int, required=True)
            s.add_argument("--radius", type=int, required=True)
        if name == "dist":
            s.add_argument("source", help="v:<vertex> or <face>:<x>,<y>")
            s.add_argument("target", help="v:<vertex> or <face>:<x>,<y>")
            s.add_argument("--metric", choices=("surface", "edge", "both"), default="both")
            s.add_argument("--tol", type=float, default=1e-6)
        if name == "map-point":
            s.add_argument("--point", help='SurfacePoint JSON, e.g. {"face": 0, "xy": [0, 0]}')
            s.add_argument("--face", type=int)
            s.add_argument("--xy", type=_xy)

    s = add("hull-dist", cmd_hull_dist, "bracket on the hull distance of two pointed patches")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--discrete", action="store_true", help="also bracket the edge-ball metric")

    s = add("quadpent", cmd_quadpent, "three sectors around a degree-3 vertex, subdivided n times")
    s.add_argument("-n", "--level", type=int, required=True)

    s = add("eps-net", cmd_eps_net, "census of complete vertex-ball classes")
    s.add_argument("-n", "--level", type=int, required=True)
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--compare", type=int, help="second level whose census must agree")

    s = add("chain", cmd_chain, "nested supertiles around the origin of a pointed patch")
    s.add_argument("-i", "--input", default="-", help="PointedPatch JSON (default stdin)")
    s.add_argument("-n", "--level", type=int, help="use quadpent(n) instead of reading a patch")
    s.add_argument("--depth", type=int, default=3)

    s = add("verify", cmd_verify, "run a verification suite")
    s.add_argument("--suite", choices=("counts", "metrics", "substitution", "hull", "all"), default="all")
    s.add_argument("-n", "--level", type=int, default=3)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-6)

    s = add("render-svg", cmd_render_svg, "nested subdivision inside one pentagon as SVG")
    s.add_argument("--depth", type=int, default=2)
    return p


def run(argv=None):
    """Run one invocation and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        code = args.fn(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PentHullError, KeyError, ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK if code is None else code


def main():
    sys.exit(run())
