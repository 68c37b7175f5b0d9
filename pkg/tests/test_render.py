import json
import re
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from penthull.errors import ResourceLimitError
from penthull.geometry.charts import PENTAGON
from penthull.render import RenderSpec, face_polygons, render_svg

GOLDEN = json.loads((Path(__file__).parent / "data" / "partition_depth1.json").read_text())


def _paths(doc):
    root = ET.fromstring(doc)
    out = []
    for el in root.iter("{http://www.w3.org/2000/svg}path"):
        nums = [float(x) for x in re.findall(r"-?\d+(?:\.\d+)?(?:e-?\d+)?", el.get("d"))]
        out.append(np.array(nums).reshape(-1, 2))
    return out


def test_depth_zero_is_the_pentagon():
    (p,) = _paths(render_svg(RenderSpec(0)))
    assert p.shape == (5, 2)
    assert np.allclose(p, PENTAGON, atol=1e-9)


def test_depth_one_vertices_are_partition_points():
    paths = _paths(render_svg(RenderSpec(1)))
    assert len(paths) == 6
    pts = np.array(GOLDEN["p"] + GOLDEN["p_prime"] + GOLDEN["q_prime"])
    for p in paths:
        for v in p:
            assert np.min(np.linalg.norm(pts - v, axis=1)) < 1e-6
    # the central cell is the small pentagon, of side s
    side = np.linalg.norm(paths[0] - np.roll(paths[0], -1, axis=0), axis=1)
    assert np.allclose(side, float(GOLDEN["s"]), atol=1e-6)


def test_depth_one_boundaries_pass_through_q():
    polys = face_polygons(1)

    def on_boundary(x):
        for P in polys:
            for a, b in zip(P, P[1:] + P[:1]):
                t = np.clip(np.dot(x - a, b - a) / np.dot(b - a, b - a), 0, 1)
                if np.linalg.norm(a + t * (b - a) - x) < 1e-6:
                    return True
        return False

    for q in GOLDEN["q"]:
        assert on_boundary(np.array(q))


def test_depth_two_is_deterministic(tmp_path):
    a = render_svg(RenderSpec(2))
    b = render_svg(RenderSpec(2, output=str(tmp_path / "k2.svg")))
    assert a == b == (tmp_path / "k2.svg").read_text()
    assert len(_paths(a)) == 36


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_cells_cover_the_pentagon(depth):
    def area(p):
        p = np.asarray(p)
        return 0.5 * abs(np.dot(p[:, 0], np.roll(p[:, 1], -1)) - np.dot(p[:, 1], np.roll(p[:, 0], -1)))

    assert sum(area(p) for p in face_polygons(depth)) == pytest.approx(area(PENTAGON), abs=1e-12)


def test_depth_limit():
    with pytest.raises(ResourceLimitError):
        render_svg(RenderSpec(7))
