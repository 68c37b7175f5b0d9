import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from penthull.errors import DomainError, RecognizabilityError
from penthull.geometry.charts import AREA, PENTAGON, SurfacePoint, canonical, vertex_point
from penthull.substitution.lipschitz import (
    FORWARD_BOUND, INVERSE_BOUND, edge_consistency, random_point, round_trip_error, verify_lipschitz,
)
from penthull.substitution.mapping import map_point, subdivided, unmap_point
from penthull.substitution.partition import (
    RegionId, blue_vertices, child_region, classify, partition_constants, pieces, region_area, region_order,
)


def test_side_of_blue_pentagon():
    d = partition_constants()
    assert d.s == pytest.approx(0.4539685, abs=1e-7)
    b = blue_vertices()
    assert np.linalg.norm(b[1] - b[0]) == pytest.approx(d.s, abs=1e-12)


@pytest.mark.parametrize("name, norm, inv, det", [
    ("M0", 2.2028, 0.453968, 4.85231),
    ("M1", 2.85906, 0.453968, 6.29792),
    ("M2", 3.39406, 0.538918, 6.29792),
])
def test_matrix_constants(name, norm, inv, det):
    d = partition_constants()
    assert d.norms[name] == pytest.approx(norm, abs=1e-3)
    assert d.inverse_norms[name] == pytest.approx(inv, abs=1e-3)
    assert d.dets[name] == pytest.approx(det, abs=1e-3)


def test_pieces_tile_the_pentagon_and_its_image():
    P = pieces()
    assert len(P) == 21
    assert sum(region_area(r) for r in region_order()) == pytest.approx(AREA, abs=1e-12)
    assert sum(region_area(r) * abs(P[r].det) for r in region_order()) == pytest.approx(6 * AREA, abs=1e-12)


def test_pieces_send_source_to_target():
    for p in pieces().values():
        for a, b in zip(p.source, p.target):
            assert np.allclose(p.apply(a), b, atol=1e-12)
            assert np.allclose(p.invert(b), a, atol=1e-12)


def test_classify_examples():
    d = partition_constants()
    assert classify((0.0, 0.0)) == RegionId("blue", 0)
    assert classify(d.p1) == RegionId("blue", 0)
    assert classify(d.p1p) == RegionId("orange", 0)
    with pytest.raises(DomainError):
        classify((2.0, 0.0))


def test_region_id_bounds():
    with pytest.raises(ValueError):
        RegionId("orange", 10)
    with pytest.raises(ValueError):
        RegionId("green", 0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 4), st.floats(0, 1), st.floats(0, 1))
def test_child_region_inverts_classify(k, u, v):
    P = PENTAGON
    if u + v > 1:
        u, v = 1 - u, 1 - v
    xy = P[0] + u * (P[k] - P[0]) + v * (P[(k + 1) % 5] - P[0])
    rid = classify(xy)
    piece = pieces()[rid]
    y = piece.apply(xy)
    back = pieces()[child_region(piece.child, y)].invert(y)
    assert np.allclose(back, xy, atol=1e-9)


def test_corners_go_to_vertices(K):
    T = K(1)
    S = subdivided(T)
    for v in range(5):
        y = map_point(T, vertex_point(T, v), S)
        assert canonical(S, y) == canonical(S, vertex_point(S, v))


def test_centre_goes_to_central_child_centre(K):
    y, rid = map_point(K(1), SurfacePoint(0, (0.0, 0.0)), with_region=True)
    assert rid == RegionId("blue", 0)
    assert y.face == 0 and np.allclose(y.xy, (0.0, 0.0))


def test_map_chart_agrees_across_edges(K):
    assert edge_consistency(K(2), 10, 20, seed=5) <= 1e-9


def test_round_trip(K):
    assert round_trip_error(K(2), 500, seed=5) <= 1e-9


def test_unmap_rejects_foreign_face(K):
    T = K(1)
    with pytest.raises(RecognizabilityError):
        unmap_point(T, SurfacePoint(6 * T.n_faces, (0.0, 0.0)))


def test_unmap_of_subdivided_vertex(K):
    T = K(1)
    x = unmap_point(T, vertex_point(subdivided(T), 3))
    assert canonical(T, x) == canonical(T, vertex_point(T, 3))


def test_lipschitz_sample(K):
    rep = verify_lipschitz(K(1), 60, seed=2, blue_samples=10)
    assert rep.ok
    assert rep.forward_max <= FORWARD_BOUND + 1e-6
    assert rep.inverse_max <= INVERSE_BOUND + 1e-6
    assert rep.blue_ratios and np.allclose(rep.blue_ratios, 2.2028, atol=1e-3)


def test_random_point_is_inside(K, rng):
    T = K(1)
    for _ in range(100):
        p = random_point(T, rng)
        assert classify(p.xy) is not None
