"""The full verification run behind ``coxlattice verify``."""

from __future__ import annotations

import random
import time

from . import invariants as inv
from .absorder import group, interval
from .cluster import build_GA, isomorphism_check
from .complexes import build_EX, build_X, sphere_check
from .lattice import verify_lattice
from .rootsystem import build

BIG_TYPES = {"E7", "E8"}


def verify(symbol: str, seed: int = 0, extension: bool = False, samples: int = 1000,
           timing: bool = False) -> dict:
    """Run every invariant for one type and return a JSON-ready report.

    The report is deterministic for a fixed symbol, seed and flag set;
    ``wall_time_ms`` stays ``None`` unless ``timing`` is requested.
    """
    start = time.perf_counter()
    rng = random.Random(seed)
    sd = build(symbol)
    G = group(sd)
    checks = [
        inv.check_root_closure(sd),
        inv.check_petrie(sd),
        inv.check_tables(sd),
        inv.check_consecutive(G),
        inv.check_mu_of(G),
        inv.check_flag_lemma(G, rng, samples),
        inv.check_cones(G, rng, 50),
    ]
    poset = interval(G)
    X = build_X(G)
    checks += [
        inv.check_interval_dual(G, poset),
        inv.check_facet_windows(G, X),
        inv.check_root_angles(G, X),
        inv.check_simple_systems(G, poset),
        inv.check_dihedral(G, poset, X),
        inv.check_halfspaces(G, poset),
    ]
    if G.n <= 3:
        checks.append(inv.check_simplicial(G, poset, X, random.Random(seed)))
    lattice = verify_lattice(poset, X)
    ex = build_EX(G)
    sphere = sphere_check(ex, G.n)
    if sd.datum.is_crystallographic or extension:
        assoc = isomorphism_check(ex, build_GA(G, extension=True))
    else:
        assoc = {"skipped": "non-crystallographic type; pass --extension", "passed": True}
    passed = all(c.passed for c in checks) and lattice.passed and sphere.passed and assoc["passed"]
    report = {
        "type": sd.datum.type_label,
        "seed": seed,
        "n": sd.n,
        "h": sd.h,
        "s": sd.s,
        "positive_roots": sd.N,
        "interval": {"elements": len(poset), "rank_sizes": poset.rank_sizes()},
        "checks": [c.to_dict() for c in checks],
        "lattice": lattice.to_dict(),
        "sphere": sphere.to_dict(),
        "associahedron": assoc,
        "passed": passed,
        "wall_time_ms": round((time.perf_counter() - start) * 1000, 3) if timing else None,
    }
    return report
