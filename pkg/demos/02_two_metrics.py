"""
Edge distance against surface distance
======================================

Gluing unit regular pentagons gives a flat surface with cone points at
the vertices. Its geodesic distance d sits between d'/3 and d', where d'
counts edges.
"""

import numpy as np

from penthull.complex.patch import edge_distances
from penthull.complex.tiling import make_supertile
from penthull.geometry.charts import vertex_point
from penthull.geometry.geodesic import distance_field, geodesic_distance
from penthull.geometry.metrics import compare_metrics

T = make_supertile(3)
v = int(T.faces[T.central_face, 0])

# one sweep gives exact distances from v to every vertex
field = distance_field(T, vertex_point(T, v), radius=np.inf)
de = edge_distances(T, v)
ratio = de[de > 0] / field.upper[de > 0]
print(f"from vertex {v}: d'/d ranges over [{ratio.min():.4f}, {ratio.max():.4f}]")

# a single pair, with the path that realises it
w = int(np.argmax(field.upper))
r = geodesic_distance(T, vertex_point(T, v), vertex_point(T, w))
print(f"d({v}, {w}) in [{r.lower:.9f}, {r.upper:.9f}], path through {len(r.witness_path)} points")

rep = compare_metrics(T, 200, seed=1)
print(f"200 random pairs: violations={len(rep.violations)}, max d'/d={rep.max_ratio:.4f}")
