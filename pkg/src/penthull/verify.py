"""Verification suites behind ``penthull verify``."""

import time
from dataclasses import dataclass, field

import numpy as np

from .complex.tiling import make_supertile
from .geometry.metrics import ball_inclusions, compare_metrics
from .hull.census import primitivity
from .hull.quadpent import quadpent_tiling
from .hull.sampling import PatchCache, sample_vertex_pairs, sandwich
from .substitution.lipschitz import edge_consistency, round_trip_error, verify_lipschitz
from .substitution.partition import partition_constants

SUITES = ("counts", "metrics", "substitution", "hull")


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, name, ok, **detail):
        self.checks.append(Check(name, bool(ok), detail))

    def to_json(self):
        return {
            "suite": self.suite,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "checks": [{"name": c.name, "ok": c.ok, **c.detail} for c in self.checks],
            "violated": [c.name for c in self.checks if not c.ok],
        }


def counts_suite(level, **_):
    rep = SuiteReport("counts")
    prev = None
    for n in range(level + 1):
        T = make_supertile(n)
        V, E, F = T.counts()
        rep.add(f"K{n}.faces", F == 6**n, V=V, E=E, F=F)
        rep.add(f"K{n}.euler", V - E + F == 1, chi=V - E + F)
        if prev is not None:
            pV, pE, pF = prev
            rep.add(f"K{n}.edges_recurrence", E == 2 * pE + 10 * pF)
            rep.add(f"K{n}.vertices_recurrence", V == pV + pE + 5 * pF)
        prev = (V, E, F)
    return rep


def metrics_suite(level, samples, seed, tol, **_):
    rep = SuiteReport("metrics")
    T = make_supertile(level)
    m = compare_metrics(T, samples, seed=seed, tol=tol)
    rep.add("d<=d'<=3d", m.ok and m.max_ratio <= 3.0 + tol, **m.to_json())
    rng = np.random.default_rng(seed)
    n_v = min(10, T.n_vertices)
    bad = 0
    for v in rng.choice(T.n_vertices, n_v, replace=False):
        for n in (1, 2):
            bad += sum(not ok for ok in ball_inclusions(T, int(v), n))
    rep.add("ball_inclusions", bad == 0, vertices=int(n_v), failures=bad)
    return rep


def substitution_suite(level, samples, seed, tol, **_):
    rep = SuiteReport("substitution")
    d = partition_constants()
    rep.add("constants", abs(d.s - 0.4539685) < 1e-6, s=d.s)
    T = make_supertile(level)
    lip = verify_lipschitz(T, samples, seed=seed, tol=tol, blue_samples=max(1, samples // 20))
    rep.add("lipschitz", lip.ok, **lip.to_json())
    gap = edge_consistency(T, 20, 20, seed=seed)
    rep.add("well_defined_on_edges", gap <= 1e-9, max_gap=gap)
    rt = round_trip_error(T, samples, seed=seed)
    rep.add("round_trip", rt <= 1e-9, max_error=rt)
    return rep


def hull_suite(level, samples, seed, tol, **_):
    rep = SuiteReport("hull")
    Q = quadpent_tiling(1)
    rep.add("quadpent.degree3", int(Q.patch.degree[Q.vertex]) == 3)
    prim = primitivity()
    rep.add("primitivity", all(k is not None for k in prim.values()), k=prim)
    T = make_supertile(level)
    P = PatchCache(T)
    rows = [sandwich(P(a), P(b), tol, a, b) for a, b in sample_vertex_pairs(T, samples, seed)]
    rep.add("d'<=d<=18d'", all(r.ok for r in rows), pairs=len(rows),
            failures=[[r.a, r.b] for r in rows if not r.ok])
    return rep


RUNNERS = {"counts": counts_suite, "metrics": metrics_suite, "substitution": substitution_suite, "hull": hull_suite}


def run_suite(name, level, samples, seed=0, tol=1e-6):
    t = time.perf_counter()
    rep = RUNNERS[name](level=level, samples=samples, seed=seed, tol=tol)
    rep.seconds = time.perf_counter() - t
    return rep
