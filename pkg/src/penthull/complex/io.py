"""JSON form of complexes.

``{"vertices": [...], "edges": [[u, v], ...], "faces": [{"cycle": [...], "type": "C",
"orient": 0}, ...], "boundary": [...], "central": id | null}`` with everything in
ascending order so that the same complex always serialises to the same bytes.
An optional ``"host_degree"`` list carries ambient degrees of a cut-out patch.
"""

import json

import numpy as np

from ..errors import ValidationError
from .rules import load_rule
from .tiling import Tiling


def tiling_to_json(T):
    names = load_rule().tile_types
    out = {
        "vertices": list(range(T.n_vertices)),
        "edges": [[int(a), int(b)] for a, b in T.edges],
        "faces": [
            {"cycle": [int(v) for v in T.faces[f]], "type": names[int(T.types[f])], "orient": int(T.orient[f])}
            for f in range(T.n_faces)
        ],
        "boundary": [int(v) for v in T.boundary],  # cycle order, as built
        "central": None if T.central_face is None else int(T.central_face),
    }
    if T.host_degree_override is not None:
        out["host_degree"] = [int(d) for d in T.host_degree_override]
    return out


def tiling_from_json(obj, validate=True):
    rule = load_rule()
    try:
        verts = obj["vertices"]
        faces = obj["faces"]
        cycles = np.array([f["cycle"] for f in faces], dtype=np.int64).reshape(-1, 5)
        types = [rule.type_index(f["type"]) for f in faces]
        orient = [int(f["orient"]) for f in faces]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed complex JSON: {exc}") from exc
    if list(verts) != list(range(len(verts))):
        raise ValidationError("vertex ids must be 0..V-1 in ascending order")
    if len(cycles) and (cycles.min() < 0 or cycles.max() >= len(verts)):
        raise ValidationError("face cycle refers to an unknown vertex")
    if any(not 0 <= o < 5 for o in orient):
        raise ValidationError("orient must lie in 0..4")
    hd = obj.get("host_degree")
    T = Tiling(cycles, types, orient, len(verts), tuple(obj.get("boundary", ())), obj.get("central"),
               None if hd is None else np.asarray(hd, dtype=np.int64))
    if "edges" in obj:
        given = sorted(tuple(sorted(map(int, e))) for e in obj["edges"])
        if given != [tuple(map(int, e)) for e in T.edges]:
            raise ValidationError("edge list does not match the face cycles")
    if validate:
        T.validate(disk=False)
    return T


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def save_tiling(T, path):
    with open(path, "w") as fh:
        fh.write(dumps(tiling_to_json(T)))


def load_tiling(path, validate=True):
    with open(path) as fh:
        return tiling_from_json(json.load(fh), validate)
