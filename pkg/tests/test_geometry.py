import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from penthull.complex.patch import edge_distances
from penthull.errors import PrecisionError
from penthull.geometry.charts import (
    CIRCUMRADIUS, DIAGONAL, GLUE, PENTAGON, SurfacePoint, apply_glue, canonical, edge_point,
    representations, vertex_point,
)
from penthull.geometry.geodesic import distance_field, geodesic_distance, witness_length
from penthull.geometry.metrics import ball_inclusions, ball_metric, compare_metrics
from penthull.geometry.steiner import steiner_distance
from penthull.substitution.lipschitz import random_point


def test_glue_maps_side_onto_side():
    for i in range(5):
        for j in range(5):
            a, b = PENTAGON[i], PENTAGON[(i + 1) % 5]
            # side i of F runs opposite to side j of G
            assert np.allclose(apply_glue(i, j, a), PENTAGON[(j + 1) % 5], atol=1e-12)
            assert np.allclose(apply_glue(i, j, b), PENTAGON[j], atol=1e-12)
            R, _ = GLUE[i][j]
            assert np.allclose(R @ R.T, np.eye(2), atol=1e-12)


def test_glue_inverse():
    p = np.array([0.1, -0.2])
    for i in range(5):
        for j in range(5):
            assert np.allclose(apply_glue(j, i, apply_glue(i, j, p)), p, atol=1e-12)


def test_vertex_has_one_representation_per_face(K):
    T = K(2)
    for v in (0, 20, 40, 64):
        reps = representations(T, vertex_point(T, v))
        assert len(reps) == len(T.faces_at(v)[0])


def test_canonical_is_idempotent(K, rng):
    T = K(2)
    for _ in range(50):
        p = canonical(T, random_point(T, rng))
        assert canonical(T, p) == p


def test_edge_and_diagonal_lengths(K):
    T = K(0)
    assert geodesic_distance(T, vertex_point(T, 0), vertex_point(T, 1)).upper == pytest.approx(1.0, abs=1e-9)
    assert geodesic_distance(T, vertex_point(T, 0), vertex_point(T, 2)).upper == pytest.approx(DIAGONAL, abs=1e-9)
    d = geodesic_distance(T, SurfacePoint(0, (0.0, 0.0)), vertex_point(T, 3))
    assert d.lower <= CIRCUMRADIUS <= d.upper


def test_bracket_is_tight_and_witnessed(K, rng):
    T = K(2)
    for _ in range(20):
        p, q = random_point(T, rng), random_point(T, rng)
        r = geodesic_distance(T, p, q)
        assert 0 <= r.upper - r.lower <= 1e-6
        assert witness_length(T, r.witness_path) == pytest.approx(r.upper, abs=1e-9)


def test_symmetry(K, rng):
    T = K(2)
    for _ in range(20):
        p, q = random_point(T, rng), random_point(T, rng)
        assert geodesic_distance(T, p, q).upper == pytest.approx(geodesic_distance(T, q, p).upper, abs=1e-9)


def test_tolerance_must_be_positive(K):
    T = K(0)
    with pytest.raises(ValueError):
        geodesic_distance(T, vertex_point(T, 0), vertex_point(T, 1), tol=0)


def test_too_tight_tolerance_raises(K):
    T = K(1)
    with pytest.raises(PrecisionError):
        geodesic_distance(T, vertex_point(T, 0), vertex_point(T, 9), tol=1e-15)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.integers(0, 35))
def test_same_face_distance_is_chart_distance(a, b, c, d, f):
    # inside one face nothing beats the straight segment (cone angles there are > pi)
    from penthull.complex.tiling import make_supertile

    T = make_supertile(2)
    P = PENTAGON
    x = P[0] + a * (P[1] - P[0]) + b * (P[3] - P[0]) * (1 - a)
    y = P[0] + c * (P[2] - P[0]) + d * (P[4] - P[0]) * (1 - c)
    x, y = 0.9 * x, 0.9 * y
    r = geodesic_distance(T, SurfacePoint(f, tuple(x)), SurfacePoint(f, tuple(y)))
    assert r.upper == pytest.approx(float(np.hypot(*(x - y))), abs=1e-9)


def test_steiner_oracle_sandwich(K, rng):
    T = K(1)
    for _ in range(30):
        p, q = random_point(T, rng), random_point(T, rng)
        exact = geodesic_distance(T, p, q).upper
        lo, up = steiner_distance(T, p, q, k=12)
        assert exact <= up + 1e-9
        assert up - exact < 0.01


def test_vertex_distances_dominated_by_edge_distance(K):
    T = K(3)
    F = distance_field(T, vertex_point(T, 0), radius=math.inf)
    de = edge_distances(T, 0)
    assert np.all(F.lower <= de + 1e-9)
    assert np.all(de <= 3 * F.upper + 1e-9)


def test_compare_metrics_small_sample(K):
    rep = compare_metrics(K(3), 40, seed=3)
    assert rep.ok
    assert 1.0 <= rep.max_ratio <= 3.0


def test_ball_inclusions(K, rng):
    T = K(3)
    for v in rng.choice(T.n_vertices, 10, replace=False):
        for n in (1, 2, 3):
            assert all(ball_inclusions(T, int(v), n))


def test_metric_ball_grows(K):
    T = K(3)
    x = vertex_point(T, 100)
    sizes = [ball_metric(T, x, r).n_faces for r in (0.5, 1.0, 2.0, 3.0)]
    assert sizes == sorted(sizes) and sizes[-1] > sizes[0]


def test_edge_point_endpoints(K):
    T = K(1)
    u, v = (int(a) for a in T.edges[3])
    assert canonical(T, edge_point(T, u, v, 0.0)) == canonical(T, vertex_point(T, u))
    assert canonical(T, edge_point(T, u, v, 1.0)) == canonical(T, vertex_point(T, v))
