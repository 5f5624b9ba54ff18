"""Almost-positive roots, the tau involutions and the compatibility degree.

Almost-positive roots carry the same labels as the vertices of EX(gamma):
the negative simple roots sit at ``rho_{-n+s+1}, ..., rho_0`` (these are
``-S2``) and ``rho_{N+1}, ..., rho_{N+s}`` (these are ``-S1``).
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass

from .absorder import ReflectionGroup
from .complexes import ExtIndex, FlagComplex, ex_vertices
from .errors import VerificationError
from .rootsystem import RootVector
from .scalar import FieldElement


@dataclass(frozen=True)
class AlmostPositiveRoot:
    label: ExtIndex
    vector: RootVector
    positive: bool
    # Steinberg index for positive roots, simple index for negative simple ones
    tag: int

    def __repr__(self) -> str:
        return f"+rho_{self.tag}" if self.positive else f"-alpha_{self.tag}"


class ClusterData:
    """tau_plus, tau_minus and compatibility on the almost-positive roots of ``G``."""

    def __init__(self, G: ReflectionGroup):
        self.G = G
        sd = G.sd
        self.n, self.s, self.N, self.nh, self.h = sd.n, sd.s, sd.N, sd.nh, sd.h
        self.labels = ex_vertices(G)
        self.steinberg_of = {lab: (lab - 1) % self.nh + 1 for lab in self.labels}
        self.label_of = {v: k for k, v in self.steinberg_of.items()}
        neg_simple = {sd.neg[sd.simple_index(k)]: k for k in range(1, self.n + 1)}
        self.neg_simple = neg_simple  # Steinberg index of -alpha_k -> k
        self.minus_S1 = {i for i, k in neg_simple.items() if k <= self.s}
        self.minus_S2 = {i for i, k in neg_simple.items() if k > self.s}
        plus = G.identity
        for R in G.simple_reflections[: self.s]:
            plus = plus * R
        minus = G.identity
        for R in G.simple_reflections[self.s:]:
            minus = minus * R
        self._plus, self._minus = plus, minus
        self.roots = [self.root(lab) for lab in self.labels]

    def root(self, label: int) -> AlmostPositiveRoot:
        i = self.steinberg_of[label]
        pos = i <= self.N
        return AlmostPositiveRoot(ExtIndex(label), self.G.sd.root(i), pos, i if pos else self.neg_simple[i])

    def _in_omega(self, i: int) -> bool:
        return i <= self.N or i in self.neg_simple

    def tau_plus(self, i: int) -> int:
        """tau_+ on Steinberg indices: ``R_1 ... R_s`` except on ``-S2``."""
        j = i if i in self.minus_S2 else self._plus.image(i)
        if not self._in_omega(j):
            raise VerificationError("tau_plus left the almost-positive roots")
        return j

    def tau_minus(self, i: int) -> int:
        """tau_- on Steinberg indices: ``R_{s+1} ... R_n`` except on ``-S1``."""
        j = i if i in self.minus_S1 else self._minus.image(i)
        if not self._in_omega(j):
            raise VerificationError("tau_minus left the almost-positive roots")
        return j

    def compatibility(self, a: int, b: int) -> FieldElement:
        """``(a || b)`` on Steinberg indices of almost-positive roots.

        The pair is rotated by tau_- tau_+ until ``a`` is a negative simple
        root, then the coefficient of ``b`` on that simple root is read off.
        """
        if not (self._in_omega(a) and self._in_omega(b)):
            raise ValueError("arguments must be almost-positive roots")
        cap = self.h + 2
        for first, second in ((self.tau_plus, self.tau_minus), (self.tau_minus, self.tau_plus)):
            x, y = a, b
            for _ in range(cap + 1):
                if x in self.neg_simple:
                    coeff = self.G.sd.root(y)[self.neg_simple[x] - 1]
                    return coeff if coeff.sign() > 0 else coeff.field.zero
                x, y = second(first(x)), second(first(y))
        raise VerificationError(f"rotation did not reach a negative simple root within {cap} steps")

    def compatibility_labels(self, a: int, b: int) -> FieldElement:
        return self.compatibility(self.steinberg_of[a], self.steinberg_of[b])

    def table(self) -> list[list[FieldElement]]:
        return [[self.compatibility_labels(a, b) for b in self.labels] for a in self.labels]

    def table_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [int(l) for l in self.labels])
        for lab, row in zip(self.labels, self.table()):
            w.writerow([int(lab)] + [x.poly_string() for x in row])
        return buf.getvalue()


def build_GA(G: ReflectionGroup, extension: bool = False, data: ClusterData | None = None) -> FlagComplex:
    """Flag complex on the almost-positive roots joined by zero compatibility."""
    if not G.sd.datum.is_crystallographic and not extension:
        raise ValueError(f"{G.label} is not crystallographic; pass extension=True")
    cd = ClusterData(G) if data is None else data
    edges = [
        (a, b) for a, b in itertools.combinations(cd.labels, 2)
        if not cd.compatibility_labels(a, b)
    ]
    return FlagComplex(cd.labels, edges, {lab: G.sd.root(lab) for lab in cd.labels}, f"GA({G.label})")


def isomorphism_check(ex: FlagComplex, ga: FlagComplex) -> dict:
    """Identity-map comparison of two complexes on the same vertex labels."""
    same_vertices = list(ex.vertices) == list(ga.vertices)
    e1, e2 = set(ex.edges()), set(ga.edges())
    only_ex = sorted([int(a), int(b)] for a, b in e1 - e2)
    only_ga = sorted([int(a), int(b)] for a, b in e2 - e1)
    return {
        "vertices_equal": same_vertices,
        "edges": len(e1),
        "only_in_EX": only_ex,
        "only_in_GA": only_ga,
        "passed": same_vertices and not only_ex and not only_ga,
    }
