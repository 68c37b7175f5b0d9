"""Finite pointed patches standing in for points of the continuous hull."""

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..complex.io import tiling_from_json, tiling_to_json
from ..complex.patch import as_tiling
from ..errors import ValidationError
from ..geometry.charts import SurfacePoint, canonical, representations, vertex_of, vertex_point
from ..geometry.geodesic import distance_field


def boundary_clearance(T, lower):
    """Lower bound on the surface distance from the source of ``lower`` to the patch boundary.

    A point at arc length ``t`` on a boundary edge ``ab`` is at least
    ``max(d(a) - t, d(b) - 1 + t) >= (d(a) + d(b) - 1) / 2`` away.
    """
    e = T.edges[T.boundary_edge_mask]
    if len(e) == 0:
        return math.inf
    da, db = lower[e[:, 0]], lower[e[:, 1]]
    return float(max(0.0, np.min((da + db - 1.0) / 2.0)))


@dataclass(frozen=True, eq=False)
class PointedPatch:
    """``patch`` pointed at ``origin``; the metric ball of radius
    ``guaranteed_radius`` about the origin lies inside the patch."""

    patch: object
    origin: SurfacePoint
    guaranteed_radius: float
    label: str = ""

    def __post_init__(self):
        T = as_tiling(self.patch)
        object.__setattr__(self, "patch", T)
        object.__setattr__(self, "origin", canonical(T, self.origin))
        if self.guaranteed_radius < 0:
            raise ValidationError("guaranteed radius must be nonnegative")

    @cached_property
    def field(self):
        """Surface distances from the origin to every vertex."""
        return distance_field(self.patch, self.origin, radius=math.inf)

    @property
    def vertex(self):
        return vertex_of(self.patch, self.origin)

    @cached_property
    def carrier_faces(self):
        return sorted({f for f, _ in representations(self.patch, self.origin)})

    def measured_radius(self):
        return boundary_clearance(self.patch, self.field.lower)

    def to_json(self):
        return {
            "patch": tiling_to_json(self.patch),
            "origin": self.origin.to_json(),
            "guaranteed_radius": self.guaranteed_radius,
            "label": self.label,
        }

    @classmethod
    def from_json(cls, obj, check=True):
        T = tiling_from_json(obj["patch"])
        P = cls(T, SurfacePoint.from_json(obj["origin"]), float(obj["guaranteed_radius"]), obj.get("label", ""))
        if check and P.guaranteed_radius > P.measured_radius() + 1e-9:
            raise ValidationError(
                f"guaranteed radius {P.guaranteed_radius} exceeds the distance {P.measured_radius()} to the boundary")
        return P


def pointed_patch(T, origin, label=""):
    """Point ``T`` at ``origin`` with the largest radius the boundary allows."""
    T = as_tiling(T)
    if isinstance(origin, (int, np.integer)):
        origin = vertex_point(T, int(origin))
    P = PointedPatch(T, origin, 0.0, label)
    R = P.measured_radius()
    Q = PointedPatch(T, P.origin, R, label)
    Q.__dict__["field"] = P.field
    return Q
