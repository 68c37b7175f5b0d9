"""The twelve acceptance criteria, each at its stated tolerance.

Every test records one ``PASS``/``FAIL`` line; pytest prints them in the
terminal summary and ``python tests/test_acceptance.py`` prints them directly.
"""

import math
import sys
import time

import numpy as np
import pytest

from penthull.complex.iso import find_occurrences
from penthull.complex.patch import ball
from penthull.complex.tiling import desubstitute, make_supertile, single_tile, subdivide
from penthull.geometry.metrics import ball_inclusions, compare_metrics
from penthull.hull.census import epsilon_net, primitivity
from penthull.hull.omega import omega_pointed, omega_preimage, supertile_chain
from penthull.hull.pointed import pointed_patch
from penthull.hull.quadpent import quadpent_tiling
from penthull.hull.sampling import PatchCache, omega_contraction, sample_vertex_pairs, sandwich
from penthull.substitution.lipschitz import edge_consistency, random_point, round_trip_error, verify_lipschitz
from penthull.substitution.partition import partition_constants

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []

TOL = 1e-6


def report(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_golden_constants():
    partition_constants.cache_clear()
    t = time.perf_counter()
    d = partition_constants()
    dt = time.perf_counter() - t
    printed = {
        ("norm", "M0"): 2.2028, ("norm", "M1"): 2.85906, ("norm", "M2"): 3.39406,
        ("inv", "M0"): 0.453968, ("inv", "M1"): 0.453968, ("inv", "M2"): 0.538918,
        ("det", "M0"): 4.85231, ("det", "M1"): 6.29792, ("det", "M2"): 6.29792,
    }
    got = {("norm", k): v for k, v in d.norms.items()}
    got.update({("inv", k): v for k, v in d.inverse_norms.items()})
    got.update({("det", k): v for k, v in d.dets.items()})
    worst = max(abs(got[k] - v) for k, v in printed.items())
    report(1, worst <= 1e-3 and dt < 1.0, f"max deviation {worst:.2e} from printed values, s={d.s:.7f}, {dt * 1e3:.1f} ms")


def test_02_counting_suite():
    t = time.perf_counter()
    T = single_tile()
    ok = True
    rows = []
    for n in range(6):
        V, E, F = T.counts()
        ok &= F == 6**n and V - E + F == 1
        if n < 5:
            S = subdivide(T)
            ok &= S.counts() == (V + E + 5 * F, 2 * E + 10 * F, 6 * F)
            T = S
        rows.append(f"K{n}=({V},{E},{F})")
    dt = time.perf_counter() - t
    report(2, bool(ok) and dt < 30, f"{' '.join(rows[-2:])}, Euler 1 throughout, {dt:.1f} s")


def test_03_edge_vs_surface_metric():
    t = time.perf_counter()
    rep = compare_metrics(make_supertile(4), 1000, seed=2024, tol=TOL)
    dt = time.perf_counter() - t
    report(3, rep.ok and rep.max_ratio <= 3 + TOL and dt < 300,
           f"1000 K4 pairs, {len(rep.violations)} violations, max d'/d = {rep.max_ratio:.4f}, {dt:.0f} s")


def test_04_ball_inclusions():
    t = time.perf_counter()
    T = make_supertile(4)
    rng = np.random.default_rng(4)
    bad = 0
    for v in rng.choice(T.n_vertices, 50, replace=False):
        for n in range(1, 5):
            bad += sum(not ok for ok in ball_inclusions(T, int(v), n))
    dt = time.perf_counter() - t
    report(4, bad == 0 and dt < 120, f"50 vertices x n=1..4 in K4, {bad} failed inclusions, {dt:.1f} s")


def test_05_lipschitz_constants():
    rep = verify_lipschitz(make_supertile(2), 1000, seed=5, tol=TOL, blue_samples=100)
    blue = np.asarray(rep.blue_ratios)
    blue_ok = len(blue) > 0 and np.all(np.abs(blue - 2.2028) <= 1e-3)
    report(5, rep.ok and blue_ok,
           f"1000 K2 pairs, {len(rep.violations)} violations, forward max {rep.forward_max:.4f} <= 3.40, "
           f"inverse max {rep.inverse_max:.4f} <= 0.54, blue ratio {blue.min():.6f}..{blue.max():.6f}")


def test_06_well_defined_and_round_trip():
    T = make_supertile(2)
    gap = edge_consistency(T, 50, 100, seed=6)
    rt = round_trip_error(T, 10**4, seed=6)
    report(6, gap <= 1e-9 and rt <= 1e-9, f"edge image gap {gap:.1e} (50 edges x 100), round trip {rt:.1e} (10^4 points)")


def test_07_hull_sandwich():
    T = make_supertile(4)
    P = PatchCache(T)
    rows = [sandwich(P(a), P(b), TOL, a, b) for a, b in sample_vertex_pairs(T, 200, seed=7)]
    bad = [r for r in rows if not r.ok]
    ratios = [r.d.lower / r.d_edge.upper for r in rows if r.d_edge.exact and r.d.lower > 0]
    report(7, not bad, f"200 K4 pairs, {len(bad)} violations of d' <= d <= 18 d', "
                       f"max d/d' = {max(ratios, default=0):.3f}")


def test_08_omega_contraction():
    T = make_supertile(3)
    P = PatchCache(T)
    rows = [omega_contraction(P(a), P(b), TOL) for a, b in sample_vertex_pairs(T, 100, seed=8)]
    bad = sum(not r.ok for r in rows)
    tight = sum(r.tight for r in rows)
    report(8, bad == 0, f"100 K3 pairs, {bad} violations of d(wA, wB) <= 20.4 d(A, B); "
                        f"{tight} also hold with the brackets reversed")


def test_09_census_stabilises():
    t = time.perf_counter()
    a, b = epsilon_net(2, 5), epsilon_net(2, 6)
    dt = time.perf_counter() - t
    report(9, a.same_classes(b), f"radius-2 classes K5={a.size}, K6={b.size}, identical={a.same_classes(b)}, {dt:.1f} s")


def test_10_primitivity():
    k = primitivity()
    ok = all(v is not None and v <= 4 for v in k.values())
    report(10, ok, "k per prototile " + ", ".join(f"{n}={v}" for n, v in sorted(k.items())))


def test_11_quadpent():
    level = 2
    Q = quadpent_tiling(level)
    Q.patch.validate()
    host = make_supertile(level + 2)
    missing = 0
    n_balls = 0
    for v in range(Q.patch.n_vertices):
        B = ball(Q.patch, v, 2)
        if B.n_faces:
            n_balls += 1
            missing += not find_occurrences(B, host, check_degree=False)
    A = quadpent_tiling(4)
    links = supertile_chain(A, 3)
    T = A.patch
    shape_ok = True
    for c in links:
        row = list(T.faces[c.face])
        pos = row.index(A.vertex)
        degs = [int(T.degree[u]) for u in row]
        shape_ok &= degs[pos] == 3 and degs[(pos + 1) % 5] == 4 and degs[(pos - 1) % 5] == 4
        T = desubstitute(T)
    ok = int(Q.patch.degree[Q.vertex]) == 3 and missing == 0 and all(c.verified for c in links) and shape_ok
    report(11, ok, f"centre degree {int(Q.patch.degree[Q.vertex])}, {n_balls - missing}/{n_balls} radius-2 balls "
                   f"found in K{level + 2}, chain faces {[c.face for c in links]} types "
                   f"{''.join(c.tile_type for c in links)} with two degree-4 neighbours of the origin")


def test_12_surjectivity():
    T = make_supertile(4)
    rng = np.random.default_rng(12)
    bad = 0
    for _ in range(50):
        A = pointed_patch(T, random_point(T, rng))
        B = omega_preimage(A)
        C = omega_pointed(B)
        bad += not (C.patch.same_as(A.patch) and C.origin.close_to(A.origin, 1e-9)
                    and C.guaranteed_radius <= A.guaranteed_radius + 1e-9)
    report(12, bad == 0, f"50 K4 pointed patches, {bad} failed omega(omega^-1(A)) = A round trips")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
