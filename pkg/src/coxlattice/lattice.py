"""Meets and joins in ``[I, gamma]`` and an exhaustive lattice check."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field

from .absorder import GroupElement, IntervalPoset, ReflectionGroup, bits, interval
from .complexes import FlagComplex, build_X, lex_first_max_clique
from .errors import NotInIntervalError, VerificationError


@dataclass(frozen=True)
class MeetResult:
    element: GroupElement
    witness_simplex: tuple[int, ...]
    verified: bool


class MeetJoin:
    """Meet and join for one Coxeter element, sharing X(gamma)'s adjacency."""

    def __init__(self, G: ReflectionGroup, X: FlagComplex | None = None):
        self.G = G
        self.X = build_X(G) if X is None else X
        if self.X.vertices != tuple(range(1, G.N + 1)):
            raise ValueError("X must be X(gamma) on the positive roots in order")
        self.adj = self.X.adj

    def _check(self, w: GroupElement) -> None:
        if not self.G.leq(w, self.G.gamma):
            raise NotInIntervalError("element is not below the Coxeter element")

    def meet(self, a: GroupElement, b: GroupElement, check: bool = True) -> MeetResult:
        G = self.G
        if check:
            self._check(a)
            self._check(b)
        common = G.moved_mask(a) & G.moved_mask(b)
        if not common:
            return MeetResult(G.identity, (), True)
        simplex = tuple(bits(lex_first_max_clique(self.adj, common)))
        sigma = G.word(simplex)
        ok = G.leq(sigma, a) and G.leq(sigma, b) and G.moved_mask(sigma) == common
        if not ok:
            raise VerificationError(f"meet construction failed in {G.label} on simplex {simplex}")
        return MeetResult(sigma, simplex, True)

    def join(self, a: GroupElement, b: GroupElement, check: bool = True) -> GroupElement:
        G = self.G
        g = G.gamma
        m = self.meet(a.inverse() * g, b.inverse() * g, check).element
        j = g * m.inverse()
        if not (G.leq(a, j) and G.leq(b, j)):
            raise VerificationError(f"join construction failed in {G.label}")
        return j


def meet(a: GroupElement, b: GroupElement, X: FlagComplex | None = None) -> MeetResult:
    return MeetJoin(a.group, X).meet(a, b)


def join(a: GroupElement, b: GroupElement, X: FlagComplex | None = None) -> GroupElement:
    return MeetJoin(a.group, X).join(a, b)


def catalan_count(poset: IntervalPoset) -> int:
    return len(poset)


def full_group_interval(G: ReflectionGroup) -> list[GroupElement]:
    """``[I, gamma]`` by filtering every element of W (small groups only)."""
    return [w for w in G.all_elements() if G.leq(w, G.gamma)]


def order_masks(poset: IntervalPoset) -> tuple[list[int], list[int]]:
    """Down-set and up-set bitmasks over poset positions, from the definition of <=."""
    G = poset.group
    els = poset.elements
    down = [0] * len(els)
    up = [0] * len(els)
    for j, w in enumerate(els):
        for i, u in enumerate(els):
            if poset.lengths[i] <= poset.lengths[j] and G.leq(u, w):
                down[j] |= 1 << i
                up[i] |= 1 << j
    return down, up


def brute_glb(down: list[int], i: int, j: int) -> int | None:
    lower = down[i] & down[j]
    hits = [z for z in bits(lower) if down[z - 1] == lower]
    return hits[0] - 1 if len(hits) == 1 else None


def brute_lub(up: list[int], i: int, j: int) -> int | None:
    upper = up[i] & up[j]
    hits = [z for z in bits(upper) if up[z - 1] == upper]
    return hits[0] - 1 if len(hits) == 1 else None


@dataclass
class LatticeReport:
    type: str
    elements: int
    pairs_checked: int = 0
    failures: list = dc_field(default_factory=list)
    wall_time_ms: float | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "type": self.type,
            "elements": self.elements,
            "pairs_checked": self.pairs_checked,
            "failures": self.failures,
            "max_discrepancy": len(self.failures),
            "wall_time_ms": self.wall_time_ms,
        }


def verify_lattice(poset: IntervalPoset, X: FlagComplex | None = None, timing: bool = False) -> LatticeReport:
    """Compare meet/join against brute-force glb/lub for every unordered pair."""
    start = time.perf_counter()
    G = poset.group
    mj = MeetJoin(G, X)
    down, up = order_masks(poset)
    report = LatticeReport(G.label, len(poset))
    els = poset.elements
    for i, j in itertools.combinations(range(len(els)), 2):
        a, b = els[i], els[j]
        report.pairs_checked += 1
        try:
            m = mj.meet(a, b, check=False).element
            jn = mj.join(a, b, check=False)
        except VerificationError as exc:
            report.failures.append({"pair": [i, j], "error": str(exc)})
            continue
        g, l = brute_glb(down, i, j), brute_lub(up, i, j)
        if g is None or els[g] != m:
            report.failures.append({"pair": [i, j], "error": "meet differs from brute-force glb"})
        if l is None or els[l] != jn:
            report.failures.append({"pair": [i, j], "error": "join differs from brute-force lub"})
    if timing:
        report.wall_time_ms = round((time.perf_counter() - start) * 1000, 3)
    return report


def verify_type(symbol: str) -> LatticeReport:
    from .absorder import group

    G = group(symbol)
    return verify_lattice(interval(G))
