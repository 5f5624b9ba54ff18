"""Reflection length, the absolute order and the interval ``[I, gamma]``.

A group element is stored as the permutation it induces on the ``nh``
Steinberg roots.  The action on roots is faithful, so the permutation is a
canonical key; the matrix in simple-root coordinates is recovered on demand
from the images of the simple roots.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Sequence

from . import linalg
from .errors import NotInIntervalError, VerificationError
from .rootsystem import RootVector, SteinbergData, build
from .scalar import FieldElement

Perm = tuple


class GroupElement:
    """An element of the reflection group, compared and hashed by root permutation."""

    __slots__ = ("group", "perm", "_matrix", "_hash")

    def __init__(self, group: "ReflectionGroup", perm: Perm):
        self.group = group
        self.perm = perm
        self._matrix = None
        self._hash = hash(perm)

    @property
    def matrix(self) -> linalg.Matrix:
        if self._matrix is None:
            g = self.group
            cols = [g.sd.rho[self.perm[k - 1] - 1] for k in g.simple_positions]
            self._matrix = linalg.transpose(cols)
        return self._matrix

    @property
    def length(self) -> int:
        return self.group.length(self)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ValueError("elements belong to different groups")
        p = self.perm
        return GroupElement(self.group, tuple(p[j - 1] for j in other.perm))

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.perm)
        for i, j in enumerate(self.perm, 1):
            inv[j - 1] = i
        return GroupElement(self.group, tuple(inv))

    def image(self, i: int) -> int:
        """Steinberg index of ``w(rho_i)``; ``i`` is read cyclically."""
        return self.perm[(i - 1) % len(self.perm)]

    def apply(self, v: Sequence) -> RootVector:
        return linalg.mat_vec(self.matrix, v)

    __call__ = apply

    def is_identity(self) -> bool:
        return self.perm == self.group.identity.perm

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and other.group is self.group and other.perm == self.perm

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "GroupElement") -> bool:
        return self.perm < other.perm

    def __repr__(self) -> str:
        return f"GroupElement({self.group.label}, length={self.length})"


class ReflectionGroup:
    """The finite reflection group generated by the simple reflections of ``sd``."""

    def __init__(self, sd: SteinbergData):
        self.sd = sd
        self.n, self.nh, self.N = sd.n, sd.nh, sd.N
        self.label = sd.datum.type_label
        self.field = sd.field
        self.simple_positions = tuple(sd.simple_index(k) for k in range(1, self.n + 1))
        self.identity = GroupElement(self, tuple(range(1, self.nh + 1)))
        rho, index = sd.rho, sd.index
        self.simple_reflections = [
            GroupElement(self, tuple(index[linalg.mat_vec(R, v)] for v in rho))
            for R in sd.simple_reflections
        ]
        for s, R in zip(self.simple_reflections, sd.simple_reflections):
            s._matrix = R
        g = self.identity
        for s in self.simple_reflections:
            g = g * s
        self.gamma = g
        self.gamma_inv = g.inverse()
        # rho_i = P_i alpha_k with P_i the cyclic prefix product, hence
        # R(rho_i) = P_i R_k P_i^{-1}.
        refl = []
        prefix = self.identity
        for i in range(self.N):
            k = i % self.n
            refl.append(prefix * self.simple_reflections[k] * prefix.inverse())
            prefix = prefix * self.simple_reflections[k]
        self.reflections: tuple[GroupElement, ...] = tuple(refl)
        self._lengths: dict[Perm, int] = {self.identity.perm: 0}
        self._moved: dict[Perm, int] = {}
        self._mu_solver = None
        self._covectors = [linalg.mat_vec(sd.gram, v) for v in sd.rho[: self.N]]

    # -- construction -----------------------------------------------------

    def positive_index(self, i: int) -> int:
        """Index in ``1..N`` of the positive root among ``+-rho_i``."""
        i = (i - 1) % self.nh + 1
        return i if i <= self.N else self.sd.neg[i]

    def reflection_at(self, i: int) -> GroupElement:
        """``R(rho_i)`` for any (cyclic, possibly negative) Steinberg index."""
        return self.reflections[self.positive_index(i) - 1]

    def reflection(self, v: Sequence) -> GroupElement:
        """The reflection ``x -> x - 2(v.x)v`` in a unit root ``v``."""
        v = tuple(v)
        if self.sd.dot(v, v) != 1:
            raise ValueError("reflection vector must have unit length")
        if v not in self.sd.index:
            raise ValueError("reflection vector is not a root of this group")
        return self.reflection_at(self.sd.index[v])

    def word(self, indices: Iterable[int]) -> GroupElement:
        """``R(rho_{w_k}) ... R(rho_{w_1})`` for the word ``w_1, ..., w_k``."""
        w = self.identity
        for i in indices:
            w = self.reflection_at(i) * w
        return w

    def from_matrix(self, M: linalg.Matrix) -> GroupElement:
        """Wrap a matrix in simple-root coordinates, checking it preserves the form."""
        B = self.sd.gram
        if linalg.mat_mul(linalg.mat_mul(linalg.transpose(M), B), M) != tuple(map(tuple, B)):
            raise ValueError("matrix does not preserve the Gram form")
        try:
            perm = tuple(self.sd.index[linalg.mat_vec(M, v)] for v in self.sd.rho)
        except KeyError:
            raise ValueError("matrix does not permute the roots") from None
        w = GroupElement(self, perm)
        w._matrix = tuple(map(tuple, M))
        return w

    def all_elements(self, limit: int = 200_000) -> list[GroupElement]:
        """Every group element, by closure under the simple reflections."""
        seen = {self.identity.perm}
        out = [self.identity]
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.simple_reflections:
                    u = s * w
                    if u.perm not in seen:
                        seen.add(u.perm)
                        out.append(u)
                        nxt.append(u)
                        if len(out) > limit:
                            raise VerificationError(f"group order exceeds {limit}")
            frontier = nxt
        return out

    # -- length and order -------------------------------------------------

    def length(self, w: GroupElement) -> int:
        """Reflection length, computed as ``rank(w - I)``."""
        cached = self._lengths.get(w.perm)
        if cached is None:
            ident = linalg.identity(self.field, self.n)
            cached = linalg.rank(linalg.mat_sub(w.matrix, ident))
            self._lengths[w.perm] = cached
        return cached

    def leq(self, u: GroupElement, w: GroupElement) -> bool:
        return self.length(w) == self.length(u) + self.length(u.inverse() * w)

    def moved_fixed(self, w: GroupElement) -> tuple[list[RootVector], list[RootVector]]:
        """Bases of ``M(w) = im(w - I)`` and ``F(w) = ker(w - I)``."""
        A = linalg.mat_sub(w.matrix, linalg.identity(self.field, self.n))
        return linalg.column_space(A), linalg.nullspace(A)

    def moved_mask(self, w: GroupElement) -> int:
        """Bitmask over positive roots (bit ``i-1`` for ``rho_i``) of roots in ``M(w)``.

        A root lies in ``M(w)`` iff it is orthogonal to ``F(w)``, and for
        such roots ``R(rho) <= w``.
        """
        mask = self._moved.get(w.perm)
        if mask is None:
            _, fixed = self.moved_fixed(w)
            mask = 0
            for i, cov in enumerate(self._covectors):
                if all(not linalg._dot(cov, f) for f in fixed):
                    mask |= 1 << i
            self._moved[w.perm] = mask
        return mask

    def mu_of(self, v: Sequence) -> RootVector:
        """``mu(v) = -2 (gamma - I)^{-1} v``."""
        if self._mu_solver is None:
            A = linalg.mat_sub(self.sd.gamma, linalg.identity(self.field, self.n))
            self._mu_solver = linalg.inverse(A)
        return tuple(-2 * c for c in linalg.mat_vec(self._mu_solver, v))

    def __repr__(self) -> str:
        return f"ReflectionGroup({self.label}, n={self.n}, h={self.sd.h})"


def group(symbol_or_sd: str | SteinbergData) -> ReflectionGroup:
    sd = build(symbol_or_sd) if isinstance(symbol_or_sd, str) else symbol_or_sd
    return ReflectionGroup(sd)


def reflection_length(w: GroupElement) -> int:
    return w.group.length(w)


def leq(u: GroupElement, w: GroupElement) -> bool:
    return u.group.leq(u, w)


def moved_fixed(w: GroupElement):
    return w.group.moved_fixed(w)


def bits(mask: int) -> list[int]:
    """1-based positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def reflection_set(sigma: GroupElement, gamma: GroupElement | None = None) -> tuple[int, ...]:
    """Indices ``i`` with ``R(rho_i) <= sigma``, in Steinberg order."""
    G = sigma.group
    gamma = G.gamma if gamma is None else gamma
    if not G.leq(sigma, gamma):
        raise NotInIntervalError("element is not below the Coxeter element")
    return tuple(bits(G.moved_mask(sigma)))


def kreweras(w: GroupElement, gamma: GroupElement | None = None) -> GroupElement:
    """The complement ``w^{-1} gamma``; order reversing on ``[I, gamma]``."""
    G = w.group
    gamma = G.gamma if gamma is None else gamma
    if not G.leq(w, gamma):
        raise NotInIntervalError("element is not below the Coxeter element")
    return w.inverse() * gamma


@dataclass
class IntervalPoset:
    """Elements of ``[I, top]`` sorted by (length, permutation)."""

    group: ReflectionGroup
    elements: list[GroupElement]
    lengths: list[int]
    lower_covers: list[list[int]]
    masks: list[int]
    index_by_hash: dict[GroupElement, int] = dc_field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[GroupElement]:
        return iter(self.elements)

    def __contains__(self, w: GroupElement) -> bool:
        return w in self.index_by_hash

    def index(self, w: GroupElement) -> int:
        return self.index_by_hash[w]

    @property
    def bottom(self) -> GroupElement:
        return self.elements[0]

    @property
    def top(self) -> GroupElement:
        return self.elements[-1]

    def rank_sizes(self) -> list[int]:
        sizes = [0] * (max(self.lengths) + 1)
        for l in self.lengths:
            sizes[l] += 1
        return sizes

    def leq(self, u: GroupElement, w: GroupElement) -> bool:
        return self.group.leq(u, w)

    def reflection_set(self, w: GroupElement) -> tuple[int, ...]:
        return tuple(bits(self.masks[self.index_by_hash[w]]))

    def to_json(self) -> str:
        items = [
            {"index": i, "length": l, "covers": covers}
            for i, (l, covers) in enumerate(zip(self.lengths, self.lower_covers))
        ]
        return json.dumps({"type": self.group.label, "size": len(self), "elements": items}, indent=1)


def interval(G: ReflectionGroup, top: GroupElement | None = None, order: Sequence[int] | None = None,
             check_lengths: bool = True) -> IntervalPoset:
    """Enumerate ``[I, top]`` by descending from ``top``.

    ``R(rho) w`` is one step shorter than ``w`` exactly when ``rho`` lies in
    the moved space of ``w``, so each level is generated from the moved-space
    masks of the level above.  With ``check_lengths`` every new element's
    length is also recomputed by rank.  ``order`` permutes the processing
    order of the reflections (the result does not depend on it).
    """
    top = G.gamma if top is None else top
    refl_order = list(range(1, G.N + 1)) if order is None else list(order)
    rank_of = {i: r for r, i in enumerate(refl_order)}
    found = {top: G.length(top)}
    level = [top]
    while level:
        nxt = []
        for w in level:
            target = found[w] - 1
            for i in sorted(bits(G.moved_mask(w)), key=rank_of.__getitem__):
                u = G.reflections[i - 1] * w
                if u in found:
                    continue
                if check_lengths and G.length(u) != target:
                    raise VerificationError("moved-space step did not lower the length")
                G._lengths.setdefault(u.perm, target)
                found[u] = target
                nxt.append(u)
        level = nxt
    elements = sorted(found, key=lambda w: (found[w], w.perm))
    index = {w: k for k, w in enumerate(elements)}
    covers, masks = [], []
    for w in elements:
        m = G.moved_mask(w)
        masks.append(m)
        covers.append(sorted(index[G.reflections[i - 1] * w] for i in bits(m)))
    poset = IntervalPoset(G, elements, [found[w] for w in elements], covers, masks, index)
    if not poset.bottom.is_identity() or poset.top != top:
        raise VerificationError("interval lacks its minimum or maximum")
    return poset
