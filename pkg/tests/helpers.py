"""Shared builders and brute-force oracles for the tests."""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from coxlattice import linalg
from coxlattice.absorder import ReflectionGroup, group, interval
from coxlattice.complexes import build_X
from coxlattice.rootsystem import bipartition, from_coxeter_matrix, steinberg
from coxlattice.scalar import number_field

import golden


@lru_cache(maxsize=None)
def G_(symbol: str) -> ReflectionGroup:
    return group(symbol)


@lru_cache(maxsize=None)
def P_(symbol: str):
    return interval(G_(symbol))


@lru_cache(maxsize=None)
def X_(symbol: str):
    return build_X(G_(symbol))


@lru_cache(maxsize=None)
def tetra_group() -> ReflectionGroup:
    datum = from_coxeter_matrix(golden.TETRA_COXETER, "A3")
    return ReflectionGroup(steinberg(bipartition(datum)))


def vec(field, strs):
    return tuple(field.parse(s) if isinstance(s, str) else field(s) for s in strs)


def to_ambient(field, coords, alpha_rows):
    A = [vec(field, row) for row in alpha_rows]
    return tuple(sum((c * a[j] for c, a in zip(coords, A)), field.zero) for j in range(len(A[0])))


def cayley_lengths(G: ReflectionGroup) -> dict:
    """Reflection length by breadth-first search over all reflections."""
    dist = {G.identity: 0}
    queue = deque([G.identity])
    while queue:
        w = queue.popleft()
        for r in G.reflections:
            u = r * w
            if u not in dist:
                dist[u] = dist[w] + 1
                queue.append(u)
    return dist


def cayley_interval(G: ReflectionGroup, dist: dict) -> list:
    g = G.gamma
    return [w for w in dist if dist[w] + dist[w.inverse() * g] == dist[g]]


# -- Sym(4) model of the tetrahedral example ---------------------------------


def tetra_transposition(G: ReflectionGroup, i: int) -> tuple[int, int]:
    """Transposition of the (possibly negative) root rho_i as an ordered pair (a, b): e_a - e_b."""
    K = number_field(3)
    amb = to_ambient(K, G.sd.root(i), golden.TETRA_ALPHA)
    a = next(k for k in range(4) if amb[k] == 1)
    b = next(k for k in range(4) if amb[k] == -1)
    return a + 1, b + 1


def tetra_perm(G: ReflectionGroup, w) -> tuple[int, ...]:
    """The permutation of {1,2,3,4} acting like ``w`` on the ambient roots."""
    image = {}
    for i in range(1, G.nh + 1):
        a, b = tetra_transposition(G, i)
        c, d = tetra_transposition(G, w.image(i))
        image[a], image[b] = c, d
    return tuple(image[k] for k in range(1, 5))


def perm_cycles(p: tuple[int, ...]) -> int:
    seen, count = set(), 0
    for s in range(1, len(p) + 1):
        if s not in seen:
            count += 1
            while s not in seen:
                seen.add(s)
                s = p[s - 1]
    return count


def perm_length(p: tuple[int, ...]) -> int:
    return len(p) - perm_cycles(p)


def perm_compose(p, q):
    """(p q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def perm_inverse(p):
    inv = [0] * len(p)
    for i, j in enumerate(p, 1):
        inv[j - 1] = i
    return tuple(inv)


def cycle_perm(*cycles, n=4):
    p = list(range(1, n + 1))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a - 1] = b
    return tuple(p)


def element_for_perm(G: ReflectionGroup, p):
    for w in G.all_elements():
        if tetra_perm(G, w) == p:
            return w
    raise KeyError(p)


def mat_of(G, fn, field, alpha_rows):
    """Simple-root matrix of an ambient linear map ``fn`` preserving the root span."""
    A = [vec(field, row) for row in alpha_rows]
    At = linalg.transpose(A)
    images = [fn(a) for a in A]
    cols = [linalg.solve(At, im) for im in images]
    return linalg.transpose(cols)
