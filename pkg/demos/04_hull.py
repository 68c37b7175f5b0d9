"""
Distances between pointed tilings
=================================

Two pointed tilings are close when large balls around their points match
up to a small shift. Finite patches only give brackets on that distance.
"""

from penthull.complex.tiling import make_supertile
from penthull.geometry.charts import edge_point
from penthull.hull.census import epsilon_net
from penthull.hull.distance import discrete_hull_distance, hull_distance
from penthull.hull.omega import supertile_chain
from penthull.hull.pointed import pointed_patch
from penthull.hull.quadpent import quadpent_tiling

T = make_supertile(4)
v = int(T.faces[T.central_face, 0])
w = int(T.neighbors_of(v)[0])
A = pointed_patch(T, v)
B = pointed_patch(T, edge_point(T, v, w, 0.1))
h = hull_distance(A, B)
print(f"slide by 0.1: d in [{h.lower:.4f}, {h.upper:.4f}] (patch radius {A.guaranteed_radius:.2f})")

P, Q = pointed_patch(T, 149), pointed_patch(T, 32)
h, e = hull_distance(P, Q), discrete_hull_distance(P, Q)
print(f"vertices 149, 32: d in [{h.lower:.4f}, {h.upper:.4f}], d' in ({e.lower:.4f}, {e.upper:.4f}]")

# three sectors around a vertex of degree 3, and its nested supertiles
Qp = quadpent_tiling(4)
for link in supertile_chain(Qp, 3):
    print(f"level {link.level}: tile {link.face} type {link.tile_type} diameter {link.radius:.3f}")

# finitely many ball classes, the same at two levels
a, b = epsilon_net(2, 4), epsilon_net(2, 5)
print(f"radius-2 vertex balls: {a.size} classes in K4, {b.size} in K5")
