"""Flag complexes on roots: X(gamma), X(sigma) and the extended complex EX(gamma).

Vertices are Steinberg indices.  For EX the indices run from ``-n+s+1`` to
``N+s`` and are read cyclically, so ``rho_{-k}`` is ``rho_{nh-k}``; the
:class:`ExtIndex` wrapper keeps that reading explicit.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable, Sequence

from . import linalg
from .absorder import GroupElement, ReflectionGroup, bits, reflection_set
from .errors import NotInIntervalError, VerificationError
from .rootsystem import RootVector


class ExtIndex(int):
    """A Steinberg index that may fall outside ``1..N`` (read cyclically)."""

    def __repr__(self) -> str:
        return f"rho[{int(self)}]"


def ext_root(G: ReflectionGroup, i: int) -> RootVector:
    return G.sd.root(i)


def _product_below_gamma_inv(G: ReflectionGroup, i: int, j: int) -> bool:
    u = G.reflection_at(i) * G.reflection_at(j)
    return G.leq(u, G.gamma_inv)


def edge_test(G: ReflectionGroup, i: int, j: int) -> bool:
    """Edge criterion ``R(rho_i) R(rho_j) <= gamma^{-1}`` for ``i < j``.

    Antipodal pairs (possible only among extended indices) are never joined.
    """
    if not i < j:
        raise ValueError("edge_test expects i < j")
    ri, rj = G.sd.root(i), G.sd.root(j)
    if ri == rj or ri == tuple(-c for c in rj):
        return False
    return _product_below_gamma_inv(G, i, j)


def lex_first_max_clique(adj: Sequence[int], cand: int) -> int:
    """Lexicographically first maximum clique inside the vertex mask ``cand``.

    ``adj[p]`` is the neighbour mask of position ``p``.  Cliques are grown in
    increasing vertex order, so the first clique reaching a new record size
    is the lexicographically smallest of that size.
    """
    best = [0, 0]

    def grow(clique: int, size: int, c: int) -> None:
        if size > best[1]:
            best[0], best[1] = clique, size
        while c:
            if size + c.bit_count() <= best[1]:
                return
            low = c & -c
            p = low.bit_length() - 1
            c ^= low
            grow(clique | low, size + 1, c & adj[p])

    grow(0, 0, cand)
    return best[0]


class FlagComplex:
    """Clique complex of a graph on an ordered vertex list.

    Simplices are reported as tuples of vertex labels in vertex-list order.
    """

    def __init__(self, vertices: Sequence[int], edges: Iterable[tuple[int, int]], vectors=None,
                 label: str = ""):
        self.vertices = tuple(vertices)
        self.pos = {v: p for p, v in enumerate(self.vertices)}
        self.adj = [0] * len(self.vertices)
        for a, b in edges:
            pa, pb = self.pos[a], self.pos[b]
            if pa == pb:
                raise ValueError("loops are not allowed")
            self.adj[pa] |= 1 << pb
            self.adj[pb] |= 1 << pa
        self.vectors = dict(vectors) if vectors is not None else {}
        self.label = label
        self._facets = None

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adj[self.pos[a]] >> self.pos[b] & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for p, row in enumerate(self.adj):
            for q in bits(row >> (p + 1)):
                out.append((self.vertices[p], self.vertices[p + q]))
        return out

    def is_face(self, simplex: Sequence[int]) -> bool:
        ps = [self.pos[v] for v in simplex]
        if len(set(ps)) != len(ps):
            return False
        return all(self.adj[a] >> b & 1 for a, b in itertools.combinations(ps, 2))

    def _labels(self, mask: int) -> tuple[int, ...]:
        return tuple(self.vertices[p - 1] for p in bits(mask))

    # -- cliques ----------------------------------------------------------

    def facets(self) -> list[tuple[int, ...]]:
        """Maximal cliques, lexicographically sorted by vertex position."""
        if self._facets is None:
            found: list[int] = []
            adj = self.adj

            def expand(r: int, p: int, x: int) -> None:
                if not p and not x:
                    found.append(r)
                    return
                u = max(bits(p | x), key=lambda q: (adj[q - 1] & p).bit_count()) - 1
                for q in bits(p & ~adj[u]):
                    v = 1 << (q - 1)
                    expand(r | v, p & adj[q - 1], x & adj[q - 1])
                    p &= ~v
                    x |= v

            if self.vertices:
                expand(0, (1 << len(self.vertices)) - 1, 0)
            self._facets = sorted((tuple(bits(m)) for m in found))
            self._facets = [tuple(self.vertices[p - 1] for p in f) for f in self._facets]
        return self._facets

    def faces(self) -> list[tuple[int, ...]]:
        """All nonempty simplices."""
        out = []
        adj = self.adj

        def grow(face: int, cand: int) -> None:
            for q in bits(cand):
                f = face | 1 << (q - 1)
                out.append(f)
                grow(f, cand & adj[q - 1] & ~((1 << q) - 1))

        grow(0, (1 << len(self.vertices)) - 1)
        return [self._labels(f) for f in out]

    def f_vector(self) -> list[int]:
        counts: list[int] = []
        for f in self.faces():
            while len(counts) < len(f):
                counts.append(0)
            counts[len(f) - 1] += 1
        return counts

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets()), default=0) - 1

    def first_top_simplex(self) -> tuple[int, ...]:
        """Lexicographically first simplex of maximal size."""
        top = max((len(f) for f in self.facets()), default=0)
        return min((f for f in self.facets() if len(f) == top), key=lambda f: [self.pos[v] for v in f],
                   default=())

    def top_simplices(self) -> list[tuple[int, ...]]:
        top = max((len(f) for f in self.facets()), default=0)
        return [f for f in self.facets() if len(f) == top]

    def induced(self, subset: Iterable[int], label: str = "") -> "FlagComplex":
        keep = [v for v in self.vertices if v in set(subset)]
        kept = set(keep)
        edges = [(a, b) for a, b in self.edges() if a in kept and b in kept]
        vecs = {v: self.vectors[v] for v in keep if v in self.vectors}
        return FlagComplex(keep, edges, vecs, label)

    # -- export -----------------------------------------------------------

    def to_dict(self) -> dict:
        def vec(v):
            c = self.vectors.get(v)
            return None if c is None else [x.poly_string() for x in c]

        return {
            "label": self.label,
            "vertices": [{"index": int(v), "coords": vec(v)} for v in self.vertices],
            "edges": [[int(a), int(b)] for a, b in self.edges()],
            "facets": [[int(v) for v in f] for f in self.facets()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def to_dot(self) -> str:
        name = self.label.replace("(", "_").replace(")", "") or "complex"
        lines = [f"graph \"{name}\" {{"]
        lines += [f"  v{int(v)} [label=\"{int(v)}\"];".replace("v-", "vm") for v in self.vertices]
        lines += [f"  v{int(a)} -- v{int(b)};".replace("v-", "vm") for a, b in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"FlagComplex({self.label!r}, vertices={len(self.vertices)}, edges={len(self.edges())})"


def build_X(G: ReflectionGroup) -> FlagComplex:
    """X(gamma): all positive roots, edges by :func:`edge_test`."""
    verts = list(range(1, G.N + 1))
    edges = [(i, j) for i, j in itertools.combinations(verts, 2) if _product_below_gamma_inv(G, i, j)]
    return FlagComplex(verts, edges, {i: G.sd.root(i) for i in verts}, f"X({G.label})")


def build_X_sigma(G: ReflectionGroup, sigma: GroupElement, X: FlagComplex | None = None) -> FlagComplex:
    """X(sigma): the subcomplex of X(gamma) induced on ``P_sigma``."""
    P = reflection_set(sigma)
    if X is not None:
        return X.induced(P, f"X(sigma) in {G.label}")
    edges = [(i, j) for i, j in itertools.combinations(P, 2) if _product_below_gamma_inv(G, i, j)]
    return FlagComplex(P, edges, {i: G.sd.root(i) for i in P}, f"X(sigma) in {G.label}")


def ex_vertices(G: ReflectionGroup) -> list[ExtIndex]:
    n, s, N = G.n, G.sd.s, G.N
    return [ExtIndex(i) for i in range(-n + s + 1, N + s + 1)]


def build_EX(G: ReflectionGroup) -> FlagComplex:
    """EX(gamma) on ``rho_{-n+s+1}, ..., rho_{N+s}``."""
    verts = ex_vertices(G)
    edges = [(i, j) for i, j in itertools.combinations(verts, 2) if edge_test(G, i, j)]
    cx = FlagComplex(verts, edges, {i: G.sd.root(i) for i in verts}, f"EX({G.label})")
    negatives = {G.sd.root(i) for i in verts if i < 1 or i > G.N}
    if negatives != {tuple(-c for c in a) for a in G.sd.simple}:
        raise VerificationError("extra vertices of EX are not the negative simple roots")
    return cx


# -- simple systems -------------------------------------------------------


@dataclass
class SimpleSystemData:
    """Simple system of ``P_sigma`` with the derived epsilon and theta orders.

    All entries are positive Steinberg indices; ``tau`` lists ``P_sigma`` in
    Steinberg order, so ``tau[i-1]`` is the root called tau_i.
    """

    sigma: GroupElement
    tau: tuple[int, ...]
    delta: tuple[int, ...]
    epsilon: tuple[int, ...]
    theta: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.delta)

    def tau_position(self, i: int) -> int:
        """1-based position of Steinberg index ``i`` inside ``tau``."""
        return self.tau.index(i) + 1


def simple_system(G: ReflectionGroup, sigma: GroupElement) -> SimpleSystemData:
    """Simple system by the last-root rule, then epsilon and theta.

    ``delta_k`` is the last positive root in ``M(sigma)`` and ``delta_i`` the
    last positive root in ``M(sigma R(delta_k) ... R(delta_{i+1}))``.
    """
    tau = reflection_set(sigma)
    if not tau:
        raise ValueError("the identity has no simple system")
    sd = G.sd
    rev = []
    w = sigma
    while not w.is_identity():
        last = G.moved_mask(w).bit_length()
        rev.append(last)
        w = w * G.reflections[last - 1]
    delta = tuple(reversed(rev))
    for a, b in itertools.combinations(delta, 2):
        if sd.dot(sd.root(a), sd.root(b)).sign() > 0:
            raise VerificationError("delta is not a simple system")
    eps = []
    prefix = G.identity
    for d in delta:
        idx = prefix.image(d)
        if idx > G.N:
            raise VerificationError("epsilon root is not positive")
        eps.append(idx)
        prefix = prefix * G.reflections[d - 1]
    epsilon = tuple(eps)
    theta = tuple(sorted(epsilon))
    if G.word(epsilon) != sigma or G.word(theta) != sigma:
        raise VerificationError("epsilon/theta products do not recover sigma")
    return SimpleSystemData(sigma, tau, delta, epsilon, theta)


def first_facet(G: ReflectionGroup, sigma: GroupElement, X: FlagComplex | None = None) -> tuple[int, ...]:
    """``<theta_1, ..., theta_k>``, checked against the facet enumeration."""
    if sigma.is_identity():
        return ()
    ssd = simple_system(G, sigma)
    cx = build_X_sigma(G, sigma, X)
    if cx.first_top_simplex() != ssd.theta:
        raise VerificationError("theta is not the first top simplex")
    return ssd.theta


# -- exact cone geometry --------------------------------------------------


def cone_membership(generators: Sequence[Sequence], x: Sequence) -> tuple | None:
    """Nonnegative coefficients expressing ``x`` in the generators, or None.

    Independent generators are solved directly.  Otherwise every independent
    subset of full rank is tried (any cone point lies in the cone of such a
    subset), so keep inputs small.
    """
    gens = [tuple(g) for g in generators]
    if not gens:
        return None if any(x) else ()
    field = gens[0][0].field
    A = linalg.transpose(gens)
    r = linalg.rank(A)
    subsets = [range(len(gens))] if r == len(gens) else itertools.combinations(range(len(gens)), r)
    for sub in subsets:
        sub = tuple(sub)
        cols = [gens[i] for i in sub]
        M = linalg.transpose(cols)
        if len(sub) != len(gens) and linalg.rank(M) < r:
            continue
        c = linalg.solve(M, tuple(x))
        if c is None:
            return None
        if all(v.sign() >= 0 for v in c):
            out = [field.zero] * len(gens)
            for i, v in zip(sub, c):
                out[i] = v
            return tuple(out)
    return None


def halfspace_realization(G: ReflectionGroup, ssd: SimpleSystemData) -> Callable[[Sequence], bool]:
    """Predicate for ``M(sigma) & mu(theta_1)^+ & ... & mu(theta_k)^+``."""
    sd = G.sd
    _, fixed = G.moved_fixed(ssd.sigma)
    fixed_co = [linalg.mat_vec(sd.gram, f) for f in fixed]
    walls = [linalg.mat_vec(sd.gram, G.mu_of(sd.root(t))) for t in ssd.theta]

    def contains(x: Sequence) -> bool:
        if any(linalg._dot(f, x) for f in fixed_co):
            return False
        return all(linalg._dot(w, x).sign() >= 0 for w in walls)

    return contains


def z_region(G: ReflectionGroup, ssd: SimpleSystemData, i: int) -> Callable[[Sequence], bool]:
    """Predicate for Z(sigma, tau_i); requires ``tau_i >= theta_k``."""
    if ssd.tau[i - 1] < ssd.theta[-1]:
        raise ValueError("Z(sigma, tau_i) needs tau_i at or after theta_k")
    sd = G.sd
    inside = halfspace_realization(G, ssd)
    later = [linalg.mat_vec(sd.gram, G.mu_of(sd.root(t))) for t in ssd.tau[i:]]

    def contains(x: Sequence) -> bool:
        return inside(x) and all(linalg._dot(w, x).sign() <= 0 for w in later)

    return contains


def project_to_moved(G: ReflectionGroup, sigma: GroupElement, v: Sequence) -> RootVector:
    """Orthogonal projection of ``v`` onto ``M(sigma)`` for the Gram form."""
    sd = G.sd
    moved, _ = G.moved_fixed(sigma)
    if not moved:
        return tuple(G.field.zero for _ in v)
    gram = tuple(tuple(sd.dot(a, b) for b in moved) for a in moved)
    rhs = tuple(sd.dot(a, v) for a in moved)
    coeffs = linalg.solve(gram, rhs)
    out = tuple(G.field.zero for _ in v)
    for c, m in zip(coeffs, moved):
        out = linalg.vec_add(out, linalg.vec_scale(c, m))
    return out


def project_mu(G: ReflectionGroup, sigma: GroupElement, i: int) -> RootVector:
    """``mu'(rho_i)``: the projection of ``mu(rho_i)`` into ``M(sigma)``."""
    if not G.moved_mask(sigma) >> (i - 1) & 1:
        raise NotInIntervalError(f"rho_{i} is not in P_sigma")
    return project_to_moved(G, sigma, G.mu_of(G.sd.root(i)))


def _coords(basis: Sequence[Sequence], x: Sequence):
    return linalg.solve(linalg.transpose(basis), tuple(x))


def cone_intersection_rays(G: ReflectionGroup, F: Sequence[int], H: Sequence[int]) -> list[RootVector]:
    """Extreme rays of cone(F) & cone(H) for two simplices spanning one subspace."""
    sd = G.sd
    VF = [sd.root(i) for i in F]
    VH = [sd.root(i) for i in H]
    k = len(VF)
    # coordinates c in the F basis; H coordinates are T c
    T = linalg.transpose([_coords(VH, v) for v in VF])
    if any(col is None for col in T):
        raise ValueError("simplices do not span the same subspace")
    K = G.field
    rows = [tuple(K.one if a == b else K.zero for b in range(k)) for a in range(k)] + list(T)
    rays = []
    seen = set()
    for sub in itertools.combinations(range(len(rows)), k - 1):
        A = tuple(rows[r] for r in sub) if sub else ()
        if sub:
            null = linalg.nullspace(A)
            if len(null) != 1:
                continue
            r = null[0]
        else:
            r = (K.one,)
        for cand in (r, tuple(-c for c in r)):
            if all(linalg._dot(row, cand).sign() >= 0 for row in rows):
                x = tuple(sum((c * v[j] for c, v in zip(cand, VF)), K.zero) for j in range(len(VF[0])))
                # normalise by the first nonzero coordinate for deduplication
                lead = next(c for c in x if c)
                key = tuple(c / abs_(lead) for c in x)
                if key not in seen:
                    seen.add(key)
                    rays.append(x)
    return rays


def abs_(x):
    return -x if x.sign() < 0 else x


def simplicial_intersection_ok(G: ReflectionGroup, F: Sequence[int], H: Sequence[int]) -> bool:
    """cone(F) & cone(H) equals cone(F & H), checked on extreme rays."""
    common = [i for i in F if i in set(H)]
    gens = [G.sd.root(i) for i in common]
    for ray in cone_intersection_rays(G, F, H):
        if cone_membership(gens, ray) is None:
            return False
    return True


# -- sphere recognition ---------------------------------------------------


@dataclass
class SphereReport:
    pure: bool
    pseudomanifold: bool
    connected: bool
    euler: int
    expected_euler: int
    witness: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.pure and self.pseudomanifold and self.connected and self.euler == self.expected_euler

    def to_dict(self) -> dict:
        return {
            "pure": self.pure,
            "pseudomanifold": self.pseudomanifold,
            "connected": self.connected,
            "euler": self.euler,
            "expected_euler": self.expected_euler,
            "passed": self.passed,
            "witness": [list(map(int, w)) for w in self.witness],
        }


def sphere_check(c: FlagComplex, n: int) -> SphereReport:
    """Combinatorial (n-1)-sphere tests: purity, pseudomanifold, connectivity, Euler."""
    facets = c.facets()
    witness: list = []
    impure = [f for f in facets if len(f) != n]
    pure = not impure and bool(facets)
    witness += impure[:1]
    ridges: dict[tuple, list[int]] = {}
    for k, f in enumerate(facets):
        for ridge in itertools.combinations(f, len(f) - 1):
            ridges.setdefault(ridge, []).append(k)
    bad = [r for r, fs in ridges.items() if len(fs) != 2]
    pseudo = not bad
    witness += bad[:1]
    # facet adjacency through shared ridges
    parent = list(range(len(facets)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for fs in ridges.values():
        for b in fs[1:]:
            parent[find(b)] = find(fs[0])
    connected = len({find(k) for k in range(len(facets))}) == 1 if facets else False
    chi = c.euler_characteristic()
    return SphereReport(pure, pseudo, connected, chi, 1 + (-1) ** (n - 1), witness)
