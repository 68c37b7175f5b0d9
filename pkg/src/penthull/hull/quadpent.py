"""Three supertiles meeting at a central vertex of degree 3."""

from ..complex.rules import load_rule
from ..complex.tiling import Tiling, max_level, subdivide
from ..errors import ConstructionError, ResourceLimitError, ValidationError
from ..geometry.charts import vertex_point
from .pointed import pointed_patch


def quadpent_seed():
    """Three copies of the sector prototile glued around vertex 0.

    Side 0 of sector ``s`` (leaving the apex) is glued to side 4 of sector
    ``s + 1`` (arriving at the apex), so spoke vertex ``r_s`` is position 1
    of sector ``s`` and position 4 of sector ``s + 1``.
    """
    rule = load_rule()
    spec = rule.quadpent
    n = spec["sectors"]
    if spec["apex_position"] != 0:
        raise ConstructionError("sector apex must sit at cycle position 0")
    spoke = [1 + s for s in range(n)]
    faces, boundary = [], []
    for s in range(n):
        outer = (1 + n + 2 * s, 2 + n + 2 * s)
        faces.append([0, spoke[s], outer[0], outer[1], spoke[(s - 1) % n]])
    for s in (0,) + tuple(range(n - 1, 0, -1)):
        boundary.extend([spoke[s], 1 + n + 2 * s, 2 + n + 2 * s])
    T = Tiling(
        faces=faces,
        types=[rule.type_index(spec["sector_type"])] * n,
        orient=[spec["sector_orient"]] * n,
        n_vertices=1 + 3 * n,
        boundary=tuple(boundary),
        central_face=None,
    )
    try:
        return T.validate()
    except ValidationError as exc:
        raise ConstructionError(f"sector gluing is inconsistent: {exc}") from exc


def quadpent_tiling(level):
    """The three-sector tiling subdivided ``level`` times, pointed at its central vertex.

    Face ``s * 6**level + j`` is face ``j`` of ``omega^level`` of sector ``s``.
    """
    if level < 0:
        raise ValueError("level must be nonnegative")
    if level > max_level():
        raise ResourceLimitError(f"level {level} exceeds the cap {max_level()}")
    T = quadpent_seed()
    for _ in range(level):
        T = subdivide(T)
    try:
        T.validate()
    except ValidationError as exc:
        raise ConstructionError(f"subdivided gluing is inconsistent: {exc}") from exc
    return pointed_patch(T, vertex_point(T, 0), label=f"quadpent({level})")

