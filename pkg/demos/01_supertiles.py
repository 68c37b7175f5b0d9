"""
Supertiles of the pentagonal substitution
=========================================

Every pentagon splits into six: one central child and one child at each
corner. Repeating this from a single tile gives the supertiles K_n.
"""

import os
import tempfile
from collections import Counter

from penthull.complex.tiling import make_supertile, subdivide, desubstitute
from penthull.render import RenderSpec, render_svg

# counts grow as V' = V + E + 5F, E' = 2E + 10F, F' = 6F
for n in range(5):
    T = make_supertile(n)
    V, E, F = T.counts()
    print(f"K{n}: V={V:6d} E={E:6d} F={F:6d} chi={V - E + F}")

# interior vertices have degree 3 or 4 (boundary ones may be lower)
T = make_supertile(3)
interior = [int(d) for d, b in zip(T.degree, T.boundary_vertices) if not b]
print("interior degrees in K3:", dict(sorted(Counter(interior).items())))

# face 6f + j is child j of face f, so grouping by f // 6 undoes a step
assert desubstitute(subdivide(T)).same_as(T)
print("desubstitute(subdivide(K3)) == K3")

# the only planar picture: nest the partition inside one pentagon
out = os.path.join(tempfile.gettempdir(), "k3.svg")
render_svg(RenderSpec(3, output=out))
print("wrote", out)
