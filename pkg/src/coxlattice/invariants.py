"""Executable invariants shared by the test-suite and ``verify``.

Each check returns a :class:`Check` carrying a pass flag, a small summary and
the first witness of failure.  Randomised checks take a ``random.Random`` so
runs are reproducible from a seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Any

from . import linalg
from .absorder import GroupElement, IntervalPoset, ReflectionGroup, bits
from .complexes import (
    FlagComplex, build_X_sigma, cone_membership, halfspace_realization, project_mu,
    simple_system, simplicial_intersection_ok, z_region,
)
from .rootsystem import SteinbergData, dot_table


@dataclass
class Check:
    name: str
    passed: bool = True
    checked: int = 0
    witness: Any = None
    detail: dict = dc_field(default_factory=dict)

    def fail(self, witness: Any) -> None:
        if self.passed:
            self.witness = witness
        self.passed = False

    def to_dict(self) -> dict:
        d = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.detail:
            d["detail"] = self.detail
        if self.witness is not None:
            d["witness"] = self.witness
        return d


def _neg(v):
    return tuple(-c for c in v)


# -- root system ----------------------------------------------------------


def check_petrie(sd: SteinbergData) -> Check:
    """gamma mu_i = mu_i - 2 rho_i, mu_i . rho_i = 1 and R(rho_i) gamma fixes mu_i."""
    c = Check("petrie_identity")
    for i in range(1, sd.nh + 1):
        mu, rho = sd.mu(i), sd.root(i)
        lhs = sd.apply_gamma(mu)
        rhs = linalg.vec_sub(mu, linalg.vec_scale(2, rho))
        c.checked += 1
        if lhs != rhs or sd.dot(mu, rho) != 1:
            c.fail({"i": i})
            continue
        # R(rho) gamma mu = R(rho)(mu - 2 rho) = mu - 2 rho - 2((rho.mu) - 2) rho = mu
        back = linalg.vec_sub(lhs, linalg.vec_scale(2 * sd.dot(rho, lhs), rho))
        if back != mu:
            c.fail({"i": i, "part": "fixed"})
    return c


def check_tables(sd: SteinbergData) -> Check:
    """Symmetry, sign and zero-band structure of ``mu_i . rho_j``."""
    c = Check("table_signs")
    n, N = sd.n, sd.N
    co = {i: linalg.mat_vec(sd.gram, sd.mu(i)) for i in range(1, sd.nh + n + 1)}

    def d(i: int, j: int):
        i = (i - 1) % sd.nh + 1
        return linalg._dot(co[i], sd.root(j))

    for i in range(1, N + 1):
        for j in range(1, N + 1):
            c.checked += 1
            v = d(i, j)
            if v != -d(j + n, i):
                c.fail({"part": "a", "i": i, "j": j})
            if i <= j and v.sign() < 0:
                c.fail({"part": "b", "i": i, "j": j})
            if j < i and d(i, j).sign() > 0:
                c.fail({"part": "d", "i": j, "j": i})
    for i in range(1, sd.nh + 1):
        for t in range(1, n):
            c.checked += 1
            if d(i + t, i):
                c.fail({"part": "c", "i": i, "t": t})
    table = dot_table(sd)
    if any(table[i][i] != 1 for i in range(N)):
        c.fail({"part": "diagonal"})
    return c


def check_consecutive(G: ReflectionGroup) -> Check:
    """Every cyclic window of n consecutive reflections multiplies to gamma^{-1}."""
    c = Check("consecutive_windows")
    for i in range(1, G.nh + 1):
        w = G.identity
        for j in range(i, i + G.n):
            w = w * G.reflection_at(j)
        c.checked += 1
        if w != G.gamma_inv:
            c.fail({"i": i})
    return c


def check_root_closure(sd: SteinbergData) -> Check:
    """The Steinberg roots are closed under the simple reflections and number nh."""
    c = Check("root_closure")
    roots = set(sd.rho)
    for R in sd.simple_reflections:
        for v in sd.rho:
            c.checked += 1
            if linalg.mat_vec(R, v) not in roots:
                c.fail({"root": sd.root_index(v)})
    if len(roots) != sd.nh or sum(1 for v in sd.rho if v in roots) != sd.nh:
        c.fail({"count": len(roots)})
    c.detail = {"positive_roots": sd.N}
    return c


# -- order --------------------------------------------------------------------


def check_flag_lemma(G: ReflectionGroup, rng: random.Random, samples: int = 1000) -> Check:
    """Length criterion versus orthogonality criterion on random increasing subsets."""
    c = Check("flag_lemma")
    sd = G.sd
    mus = {i: linalg.mat_vec(sd.gram, G.mu_of(sd.root(i))) for i in range(1, G.N + 1)}
    hits = 0
    for _ in range(samples):
        k = rng.randint(1, G.n)
        subset = sorted(rng.sample(range(1, G.N + 1), min(k, G.N)))
        if rng.random() < 0.5 and G.N >= G.n:
            start = rng.randint(1, G.N - k + 1)
            subset = list(range(start, start + k))
        w = G.word(reversed(subset)) * G.gamma
        a = G.length(w) == G.n - len(subset)
        b = all(not linalg._dot(mus[subset[i]], sd.root(subset[j]))
                for i in range(len(subset)) for j in range(i))
        c.checked += 1
        hits += a
        if a != b:
            c.fail({"subset": subset})
    c.detail = {"length_criterion_true": hits}
    return c


def check_mu_of(G: ReflectionGroup) -> Check:
    """mu(rho_i) from the linear solve agrees with the Steinberg mu_i."""
    c = Check("mu_solve")
    for i in range(1, G.N + 1):
        c.checked += 1
        if G.mu_of(G.sd.root(i)) != G.sd.mu(i):
            c.fail({"i": i})
    return c


def check_interval_dual(G: ReflectionGroup, poset: IntervalPoset, max_order: int = 1152) -> Check:
    """BFS interval equals the filtered full group when |W| is small enough."""
    from .errors import VerificationError

    c = Check("interval_dual_oracle")
    try:
        everything = G.all_elements(limit=max_order)
    except VerificationError:
        c.detail = {"skipped": f"|W| > {max_order}", "size": len(poset)}
        return c
    filtered = {w for w in everything if G.leq(w, G.gamma)}
    c.checked = len(everything)
    c.detail = {"group_order": len(everything), "size": len(poset)}
    if filtered != set(poset.elements):
        c.fail({"bfs": len(poset), "filter": len(filtered)})
    return c


def check_root_angles(G: ReflectionGroup, X: FlagComplex) -> Check:
    """Signs of rho_i . rho_j for products below gamma, and the edge characterisation."""
    c = Check("root_angles")
    sd = G.sd
    for i, j in itertools.permutations(range(1, G.N + 1), 2):
        u = G.reflections[i - 1] * G.reflections[j - 1]
        below = G.leq(u, G.gamma)
        s = sd.dot(sd.root(i), sd.root(j)).sign()
        c.checked += 1
        if below and ((i < j and s > 0) or (i > j and s < 0)):
            c.fail({"i": i, "j": j})
        if i < j:
            other = G.leq(G.reflections[j - 1] * G.reflections[i - 1], G.gamma)
            expected = s >= 0 and (below or other)
            if X.has_edge(i, j) != expected:
                c.fail({"edge": [i, j]})
    return c


# -- complexes ------------------------------------------------------------


def check_facet_windows(G: ReflectionGroup, X: FlagComplex) -> Check:
    """At least N-n+1 facets, including every window of n consecutive roots."""
    c = Check("facet_windows")
    facets = set(X.facets())
    need = G.N - G.n + 1
    for i in range(1, need + 1):
        c.checked += 1
        if tuple(range(i, i + G.n)) not in facets:
            c.fail({"window": i})
    if len(facets) < need:
        c.fail({"facets": len(facets), "bound": need})
    if any(len(f) > G.n for f in facets):
        c.fail({"oversized": True})
    c.detail = {"facets": len(facets), "bound": need}
    return c


def check_simple_systems(G: ReflectionGroup, poset: IntervalPoset) -> Check:
    """Epsilon factorisations, sigma action on P, duality and commuting roots."""
    c = Check("simple_systems")
    sd = G.sd
    for sigma in poset.elements:
        if sigma.is_identity():
            continue
        ssd = simple_system(G, sigma)
        c.checked += 1
        tau, delta, eps = ssd.tau, ssd.delta, ssd.epsilon
        k = ssd.k
        if k != G.length(sigma):
            c.fail({"sigma": poset.index(sigma), "part": "size"})
        # sigma = R(eps_i) R(delta_1)..^..R(delta_k)
        for i in range(k):
            rest = delta[:i] + delta[i + 1:]
            w = G.reflections[eps[i] - 1] * G.word(reversed(rest))
            if w != sigma:
                c.fail({"sigma": poset.index(sigma), "part": "epsilon_i", "i": i + 1})
        # sigma^{-1} tau is in -P exactly for the epsilons
        inv = sigma.inverse()
        negP = {sd.neg[t] for t in tau}
        for t in tau:
            if (inv.image(t) in negP) != (t in eps):
                c.fail({"sigma": poset.index(sigma), "part": "sigma_action", "tau": t})
        # mu(eps_i) . delta_i = 1 and mu'(eps_i) . delta_j = [i == j]
        for i in range(k):
            if sd.dot(G.mu_of(sd.root(eps[i])), sd.root(delta[i])) != 1:
                c.fail({"sigma": poset.index(sigma), "part": "dual", "i": i + 1})
            mp = project_mu(G, sigma, eps[i])
            for j in range(k):
                if sd.dot(mp, sd.root(delta[j])) != (1 if i == j else 0):
                    c.fail({"sigma": poset.index(sigma), "part": "dual_basis", "i": i + 1, "j": j + 1})
        # mu'(tau) is moved by sigma exactly as by R(tau)
        for t in tau:
            mp = project_mu(G, sigma, t)
            if sigma.apply(mp) != linalg.vec_sub(mp, linalg.vec_scale(2, sd.root(t))):
                c.fail({"sigma": poset.index(sigma), "part": "muprime", "tau": t})
        # out-of-order epsilons are orthogonal and commute
        for i, j in itertools.combinations(range(k), 2):
            if eps[i] > eps[j]:
                a, b = G.reflections[eps[i] - 1], G.reflections[eps[j] - 1]
                if sd.dot(sd.root(eps[i]), sd.root(eps[j])) or a * b != b * a:
                    c.fail({"sigma": poset.index(sigma), "part": "commroot"})
    return c


def check_dihedral(G: ReflectionGroup, poset: IntervalPoset, X: FlagComplex) -> Check:
    """Length-two elements: X(sigma) is a path and the end reflections reverse P."""
    c = Check("dihedral_paths")
    for sigma in poset.elements:
        if G.length(sigma) != 2:
            continue
        c.checked += 1
        cx = build_X_sigma(G, sigma, X)
        tau = cx.vertices
        t = len(tau)
        path = {(tau[i], tau[i + 1]) for i in range(t - 1)}
        if set(cx.edges()) != path:
            c.fail({"sigma": poset.index(sigma), "part": "path"})
        r1, rt = G.reflections[tau[0] - 1], G.reflections[tau[-1] - 1]
        for i in range(2, t + 1):
            if r1.image(tau[i - 1]) != tau[t - i + 1]:
                c.fail({"sigma": poset.index(sigma), "part": "first", "i": i})
        for i in range(1, t):
            if rt.image(tau[i - 1]) != tau[t - i - 1]:
                c.fail({"sigma": poset.index(sigma), "part": "last", "i": i})
    return c


def check_halfspaces(G: ReflectionGroup, poset: IntervalPoset) -> Check:
    """P_sigma lies in the halfspace region; Z(sigma, tau_i) meets P in tau_1..tau_i."""
    c = Check("halfspace_realisation")
    sd = G.sd
    for sigma in poset.elements:
        if sigma.is_identity():
            continue
        ssd = simple_system(G, sigma)
        inside = halfspace_realization(G, ssd)
        c.checked += 1
        if not all(inside(sd.root(t)) for t in ssd.tau):
            c.fail({"sigma": poset.index(sigma), "part": "contains"})
        if inside(_neg(sd.root(ssd.tau[0]))):
            c.fail({"sigma": poset.index(sigma), "part": "antipode"})
        start = ssd.tau.index(ssd.theta[-1]) + 1
        for i in range(start, len(ssd.tau) + 1):
            z = z_region(G, ssd, i)
            got = tuple(t for t in ssd.tau if z(sd.root(t)))
            if got != ssd.tau[:i]:
                c.fail({"sigma": poset.index(sigma), "part": "filtration", "i": i})
    return c


def check_simplicial(G: ReflectionGroup, poset: IntervalPoset, X: FlagComplex,
                     rng: random.Random | None = None, combos: int = 5) -> Check:
    """Facet cones of X(sigma) meet in faces and cover the positive cone on P_sigma."""
    c = Check("simplicial_geometry")
    sd = G.sd
    rng = rng or random.Random(0)
    K = G.field
    for sigma in poset.elements:
        if G.length(sigma) < 2:
            continue
        cx = build_X_sigma(G, sigma, X)
        facets = cx.facets()
        c.checked += 1
        if any(len(f) != G.length(sigma) for f in facets):
            c.fail({"sigma": poset.index(sigma), "part": "dimension"})
        for F, H in itertools.combinations(facets, 2):
            if not simplicial_intersection_ok(G, F, H):
                c.fail({"sigma": poset.index(sigma), "part": "intersection", "facets": [F, H]})
        cones = [[sd.root(i) for i in f] for f in facets]
        points = [sd.root(t) for t in cx.vertices]
        for _ in range(combos):
            x = tuple(K.zero for _ in range(G.n))
            for t in cx.vertices:
                x = linalg.vec_add(x, linalg.vec_scale(rng.randint(0, 3), sd.root(t)))
            if any(x):
                points.append(x)
        for x in points:
            if not any(cone_membership(g, x) is not None for g in cones):
                c.fail({"sigma": poset.index(sigma), "part": "cover"})
                break
    return c


def check_cones(G: ReflectionGroup, rng: random.Random, samples: int = 50) -> Check:
    """rho_k is never a nonnegative combination of earlier positive roots."""
    c = Check("cones")
    sd = G.sd
    if G.N < 2:
        return c
    for _ in range(samples):
        k = rng.randint(2, G.N)
        m = rng.randint(1, min(k - 1, G.n + 2))
        subset = sorted(rng.sample(range(1, k), m))
        c.checked += 1
        if cone_membership([sd.root(i) for i in subset], sd.root(k)) is not None:
            c.fail({"k": k, "subset": subset})
    return c
