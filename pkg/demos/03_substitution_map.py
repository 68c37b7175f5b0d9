"""
The substitution as a piecewise-affine map
==========================================

A tile is cut into a small blue pentagon, ten orange half-triangles and
ten yellow triangles. Each piece goes affinely onto part of a child.
"""

import numpy as np

from penthull.complex.tiling import make_supertile
from penthull.geometry.charts import SurfacePoint
from penthull.substitution.lipschitz import verify_lipschitz
from penthull.substitution.mapping import map_point, unmap_point
from penthull.substitution.partition import partition_constants, pieces

d = partition_constants()
print(f"blue side s = {d.s:.7f}")
for name in ("M0", "M1", "M2"):
    print(f"{name}: |M|={d.norms[name]:.5f} |M^-1|={d.inverse_norms[name]:.6f} det={d.dets[name]:.5f}")
print(len(pieces()), "affine pieces")

T = make_supertile(1)
x = SurfacePoint(2, (0.3, 0.1))
y, region = map_point(T, x, with_region=True)
print(f"{x} lies in {region}, goes to {y}")
print("and back:", unmap_point(T, y))

# distances stretch by at most 3.40 and shrink by at most 1/0.54
rep = verify_lipschitz(T, 200, seed=3, blue_samples=20)
print(f"forward max {rep.forward_max:.4f}, inverse max {rep.inverse_max:.4f}, "
      f"blue ratio {np.mean(rep.blue_ratios):.6f}")
