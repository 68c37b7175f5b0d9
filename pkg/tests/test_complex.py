import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from penthull.complex.io import dumps, load_tiling, save_tiling, tiling_from_json, tiling_to_json
from penthull.complex.iso import find_occurrences, rooted_code, rooted_isomorphic, subset_code
from penthull.complex.patch import ball, ball_faces, boundary_clearance, edge_distance, sub_patch
from penthull.complex.rules import Decoration, load_rule
from penthull.complex.tiling import (
    Tiling, desubstitute, exterior_decoration_clashes, make_supertile, single_tile, subdivide, supertile_of,
)
from penthull.errors import RecognizabilityError, ResourceLimitError, TruncationError, ValidationError
from penthull.hull.census import primitivity


@pytest.mark.parametrize("n, expected", [(0, (5, 5, 1)), (1, (15, 20, 6)), (2, (65, 100, 36))])
def test_small_counts(K, n, expected):
    assert K(n).counts() == expected


def test_count_recurrences_up_to_level_4(K):
    for n in range(4):
        V, E, F = K(n).counts()
        assert K(n + 1).counts() == (V + E + 5 * F, 2 * E + 10 * F, 6 * F)
        assert K(n + 1).euler_characteristic() == 1


def test_supertiles_validate(K):
    for n in range(4):
        K(n).validate()
        assert len(exterior_decoration_clashes(K(n))) == 0


def test_twice_subdivided_seed_is_k2(K):
    T = subdivide(subdivide(K(0)))
    assert T.same_as(K(2))
    assert rooted_isomorphic(T, 0, K(2), 0) is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_desubstitute_inverts_subdivide(K, n):
    assert desubstitute(K(n)).same_as(K(n - 1))


def test_desubstitute_rejects_unaligned(K):
    T = K(2)
    half = sub_patch(T, range(7)).tiling
    with pytest.raises(RecognizabilityError):
        desubstitute(half)


def test_level_cap(monkeypatch):
    monkeypatch.setenv("PENTHULL_MAX_LEVEL", "2")
    with pytest.raises(ResourceLimitError):
        make_supertile(3)


def test_validate_catches_orientation_flip(K):
    T = K(1)
    faces = T.faces.copy()
    faces[3] = faces[3][::-1]
    bad = Tiling(faces, T.types, T.orient, T.n_vertices, T.boundary, T.central_face)
    with pytest.raises(ValidationError):
        bad.validate()


def test_json_round_trip_is_byte_identical(K, tmp_path):
    T = K(2)
    text = dumps(tiling_to_json(T))
    again = dumps(tiling_to_json(tiling_from_json(json.loads(text))))
    assert text == again
    path = tmp_path / "k2.json"
    save_tiling(T, path)
    assert load_tiling(path).same_as(T)


def test_json_rejects_broken_face(K):
    obj = tiling_to_json(K(1))
    cyc = obj["faces"][2]["cycle"]
    obj["faces"][2]["cycle"] = cyc[:4] + [cyc[0]]
    with pytest.raises(ValidationError):
        tiling_from_json(obj)


def test_edge_distance_basics(K):
    T = K(1)
    assert edge_distance(T, 0, 0) == 0
    u, v = T.edges[0]
    assert edge_distance(T, int(u), int(v)) == 1


def test_ball_radius_zero_and_one_are_bare(K):
    T = K(3)
    for n in (0, 1):
        B = ball(T, 100, n)
        assert B.n_faces == 0 and B.root is not None


def test_ball_two_contains_vertex_star(K):
    T = K(3)
    v = 100
    B = ball(T, v, 2)
    assert set(T.faces_at(v)[0].tolist()) <= set(B.face_map.tolist())


@settings(max_examples=60, deadline=None)
@given(v=st.integers(0, make_supertile(3).n_vertices - 1), n=st.integers(0, 4))
def test_fast_ball_matches_ball(v, n):
    T = make_supertile(3)
    B = ball(T, v, n)
    faces, truncated = ball_faces(T, v, n)
    assert faces == B.face_map.tolist()
    assert truncated == B.truncated
    assert subset_code(T, faces, v) == rooted_code(B.tiling, B.root)
    assert subset_code(T, faces, v, degrees=False) == rooted_code(B.tiling, B.root, degrees=False)


def test_truncation_flag_tracks_boundary(K):
    T = K(3)
    v = int(T.boundary[0])
    assert ball(T, v, 2).truncated
    with pytest.raises(TruncationError):
        ball(T, v, 2, complete=True)
    assert boundary_clearance(T, v) == 0


def test_rooted_code_separates_and_identifies(K):
    T = K(3)
    codes = {}
    for v in range(T.n_vertices):
        B = ball(T, v, 2)
        if not B.truncated:
            codes.setdefault(rooted_code(B.tiling, B.root), []).append(v)
    # any two vertices with the same code really are rooted-isomorphic
    for vs in list(codes.values())[:8]:
        if len(vs) > 1:
            a, b = ball(T, vs[0], 2), ball(T, vs[1], 2)
            assert rooted_isomorphic(a, a.root, b, b.root) is not None


def test_prototile_occurrences_in_its_subdivision():
    rule = load_rule()
    for name in rule.tile_types:
        child = supertile_of(Decoration(name, 0), 1)
        for other in rule.tile_types:
            p = single_tile(Decoration(other, 0))
            found = find_occurrences(p, child, check_degree=False)
            # every orientation counts; the count equals the children of that type
            assert len(found) == int(np.sum(child.types == rule.type_index(other)))


def test_primitivity_is_finite_and_small():
    k = primitivity()
    assert all(v is not None and v <= 4 for v in k.values())
