"""Coxeter data, bipartite simple systems and the Steinberg root ordering.

All vectors live in the basis of simple roots ``alpha_1 .. alpha_n`` and
all inner products go through the Gram matrix ``B[i][j] = -cos(pi/m_ij)``
(unit simple roots).  Roots are numbered cyclically:

    rho_i = R_1 R_2 ... R_{i-1} alpha_i,    mu_i = R_1 R_2 ... R_{i-1} beta_i

with indices of ``R`` and ``alpha``/``beta`` read modulo ``n``; ``beta`` is
the basis dual to the simple roots.  With a bipartite ordering of the
simple roots, ``rho_1 .. rho_{nh/2}`` are exactly the positive roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple, Sequence

from . import linalg
from .errors import TypeParseError, VerificationError
from .scalar import FieldElement, NumberField, number_field

__all__ = [
    "CoxeterDatum",
    "Bipartition",
    "SteinbergData",
    "parse_type",
    "from_coxeter_matrix",
    "bipartition",
    "gram",
    "dot",
    "dual_basis",
    "steinberg",
    "dot_table",
    "build",
    "is_positive",
    "is_negative",
]

RootVector = tuple  # tuple[FieldElement, ...] in simple-root coordinates

_SYMBOL_RE = re.compile(r"^([A-IH])([0-9]+)$")
_DIHEDRAL_RE = re.compile(r"^I2\(([0-9]+)\)$")
_RANK_LIMITS = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
    "H": (3, 4),
}
MAX_COXETER_ORDER = 1000


@dataclass(frozen=True)
class CoxeterDatum:
    """A finite irreducible Coxeter system together with its scalar field."""

    type_label: str
    coxeter_matrix: tuple[tuple[int, ...], ...]
    field: NumberField = dc_field(compare=False)

    @property
    def rank(self) -> int:
        return len(self.coxeter_matrix)

    @property
    def is_crystallographic(self) -> bool:
        return all(m in (1, 2, 3, 4, 6) for row in self.coxeter_matrix for m in row)


class Bipartition(NamedTuple):
    datum: CoxeterDatum
    s: int
    order: tuple[int, ...]  # original (0-based) index of each reordered node


def _path(n: int, special: dict | None = None) -> list[list[int]]:
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = 3
    for (i, j), v in (special or {}).items():
        m[i][j] = m[j][i] = v
    return m


def _standard_matrix(letter: str, n: int, label_m: int | None = None) -> list[list[int]]:
    if letter == "A":
        return _path(n)
    if letter in "BC":
        return _path(n, {(0, 1): 4})
    if letter == "D":
        m = _path(n - 1)
        for row in m:
            row.append(2)
        m.append([2] * n)
        m[n - 1][n - 1] = 1
        m[n - 3][n - 1] = m[n - 1][n - 3] = 3
        return m
    if letter == "E":
        m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        for i, j in edges:
            m[i][j] = m[j][i] = 3
        return m
    if letter == "F":
        return _path(4, {(1, 2): 4})
    if letter == "G":
        return [[1, 6], [6, 1]]
    if letter == "H":
        return _path(n, {(n - 2, n - 1): 5})
    if letter == "I":
        return [[1, label_m], [label_m, 1]]
    raise TypeParseError(f"unknown Coxeter type letter {letter!r}")


def _field_for_matrix(matrix: Sequence[Sequence[int]]) -> NumberField:
    labels = {m for row in matrix for m in row if m > 3}
    if not labels:
        return number_field(3)
    if len(labels) > 1:
        raise TypeParseError(f"labels {sorted(labels)} need more than one real extension")
    (m,) = labels
    try:
        return number_field(m)
    except ValueError as exc:
        raise TypeParseError(str(exc)) from None


def _is_connected(matrix: Sequence[Sequence[int]]) -> bool:
    n = len(matrix)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if matrix[i][j] > 2 and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def from_coxeter_matrix(matrix: Sequence[Sequence[int]], type_label: str = "custom") -> CoxeterDatum:
    """Datum for an explicit Coxeter matrix, kept in the given node order."""
    n = len(matrix)
    mat = tuple(tuple(int(v) for v in row) for row in matrix)
    if n == 0 or any(len(row) != n for row in mat):
        raise TypeParseError("Coxeter matrix must be square and non-empty")
    for i in range(n):
        if mat[i][i] != 1:
            raise TypeParseError("Coxeter matrix must have 1 on the diagonal")
        for j in range(n):
            if i != j and (mat[i][j] < 2 or mat[i][j] != mat[j][i]):
                raise TypeParseError("Coxeter matrix must be symmetric with off-diagonal entries >= 2")
    if not _is_connected(mat):
        raise TypeParseError("Coxeter graph must be connected (irreducible group)")
    return CoxeterDatum(type_label, mat, _field_for_matrix(mat))


def parse_type(symbol: str) -> CoxeterDatum:
    """Parse ``A3``, ``B4``, ``H3``, ``E6``, ``I2(7)`` ... into a datum.

    >>> d = parse_type("I2(7)")
    >>> d.rank, d.coxeter_matrix[0][1], d.field.m
    (2, 7, 7)
    """
    sym = symbol.strip()
    m = _DIHEDRAL_RE.match(sym)
    if m:
        order = int(m.group(1))
        if order < 3:
            raise TypeParseError(f"I2(m) needs m >= 3, got {symbol!r}")
        return from_coxeter_matrix(_standard_matrix("I", 2, order), f"I2({order})")
    m = _SYMBOL_RE.match(sym)
    if not m or m.group(1) not in _RANK_LIMITS:
        raise TypeParseError(f"cannot parse Coxeter type {symbol!r}")
    letter, n = m.group(1), int(m.group(2))
    lo, hi = _RANK_LIMITS[letter]
    if n < lo or (hi is not None and n > hi):
        raise TypeParseError(f"rank {n} out of range for type {letter}")
    return from_coxeter_matrix(_standard_matrix(letter, n), f"{letter}{n}")


def _two_colouring(matrix) -> list[int]:
    n = len(matrix)
    colour = [-1] * n
    for start in range(n):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if matrix[i][j] > 2:
                    if colour[j] < 0:
                        colour[j] = 1 - colour[i]
                        stack.append(j)
                    elif colour[j] == colour[i]:
                        raise TypeParseError("Coxeter graph is not 2-colourable")
    return colour


def bipartition(datum: CoxeterDatum) -> Bipartition:
    """Reorder the simple roots so that the first ``s`` and the last ``n-s``
    are pairwise orthogonal.

    The colour class of the smallest original index comes first and each
    class keeps the original relative order, so the result is
    deterministic.
    """
    colour = _two_colouring(datum.coxeter_matrix)
    order = tuple(i for i in range(datum.rank) if colour[i] == 0) + tuple(
        i for i in range(datum.rank) if colour[i] == 1
    )
    s = colour.count(0)
    mat = tuple(tuple(datum.coxeter_matrix[i][j] for j in order) for i in order)
    return Bipartition(CoxeterDatum(datum.type_label, mat, datum.field), s, order)


def _neg_half_cos(m: int, field: NumberField) -> FieldElement:
    if m == 1:
        return field.one
    if m == 2:
        return field.zero
    if m == 3:
        return field(-1) / 2
    if m == field.m:
        return -field.theta / 2
    raise VerificationError(f"-cos(pi/{m}) is not expressible in {field!r}")


def gram(datum: CoxeterDatum) -> linalg.Matrix:
    """Gram matrix of the unit simple roots; checked positive definite."""
    K = datum.field
    B = tuple(tuple(_neg_half_cos(m, K) for m in row) for row in datum.coxeter_matrix)
    for k in range(1, datum.rank + 1):
        minor = tuple(row[:k] for row in B[:k])
        if linalg.det(minor).sign() != 1:
            raise VerificationError(f"Gram matrix of {datum.type_label} is not positive definite")
    return B


def dot(x: Sequence, y: Sequence, B: linalg.Matrix) -> FieldElement:
    """Inner product ``x^T B y`` of two vectors in simple-root coordinates."""
    return linalg._dot(x, linalg.mat_vec(B, y))


def dual_basis(datum_or_gram) -> list[RootVector]:
    """Vectors ``beta_i`` with ``beta_i . alpha_j = delta_ij``."""
    B = gram(datum_or_gram) if isinstance(datum_or_gram, CoxeterDatum) else datum_or_gram
    Binv = linalg.inverse(B)
    return [tuple(Binv[r][i] for r in range(len(B))) for i in range(len(B))]


def is_positive(v: Sequence[FieldElement]) -> bool:
    return any(v) and all(c.sign() >= 0 for c in v)


def is_negative(v: Sequence[FieldElement]) -> bool:
    return any(v) and all(c.sign() <= 0 for c in v)


def _simple_reflection(B: linalg.Matrix, i: int) -> linalg.Matrix:
    n = len(B)
    K = B[0][0].field
    rows = []
    for r in range(n):
        if r == i:
            rows.append(tuple((K.one if c == i else K.zero) - 2 * B[i][c] for c in range(n)))
        else:
            rows.append(tuple(K.one if c == r else K.zero for c in range(n)))
    return tuple(rows)


class SteinbergData:
    """Steinberg sequences ``rho`` and ``mu`` of a bipartite-ordered datum.

    Roots and Petrie vertices are addressed with 1-based cyclic indices
    through :meth:`root` and :meth:`mu`, so that ``root(0) == root(nh)``
    and ``root(-k) == root(nh - k)``.
    """

    def __init__(self, datum: CoxeterDatum, s: int):
        self.datum = datum
        self.field = datum.field
        self.n = n = datum.rank
        self.s = s
        self.gram = B = gram(datum)
        self.beta = dual_basis(B)
        K = self.field
        self.simple = [tuple(K.one if j == i else K.zero for j in range(n)) for i in range(n)]
        self.simple_reflections = [_simple_reflection(B, i) for i in range(n)]
        g = linalg.identity(K, n)
        for R in self.simple_reflections:
            g = linalg.mat_mul(g, R)
        self.gamma = g
        self.h = h = _order(g, K)
        self.gamma_inv = linalg.inverse(g)
        self.nh = n * h
        if self.nh % 2:
            raise VerificationError("nh must be even")
        self.N = self.nh // 2
        rho, mu = [], []
        prefix = linalg.identity(K, n)
        for i in range(self.nh):
            k = i % n
            rho.append(linalg.mat_vec(prefix, self.simple[k]))
            mu.append(linalg.mat_vec(prefix, self.beta[k]))
            prefix = linalg.mat_mul(prefix, self.simple_reflections[k])
        self.rho: tuple[RootVector, ...] = tuple(rho)
        self.mu_vectors: tuple[RootVector, ...] = tuple(mu)
        self._check_closed_forms()
        self.index = {v: i + 1 for i, v in enumerate(self.rho)}
        if len(self.index) != self.nh:
            raise VerificationError("Steinberg roots are not distinct")
        self.neg = {i: self.index[tuple(-c for c in v)] for v, i in self.index.items()}
        self._gram_rows = B

    # -- accessors --------------------------------------------------------

    def root(self, i: int) -> RootVector:
        return self.rho[(i - 1) % self.nh]

    def mu(self, i: int) -> RootVector:
        return self.mu_vectors[(i - 1) % self.nh]

    def positive_roots(self) -> tuple[RootVector, ...]:
        return self.rho[: self.N]

    def dot(self, x: Sequence, y: Sequence) -> FieldElement:
        return dot(x, y, self.gram)

    def apply_gamma(self, x: Sequence) -> RootVector:
        return linalg.mat_vec(self.gamma, x)

    def root_index(self, v: Sequence) -> int:
        """1-based Steinberg index of a root vector (KeyError if not a root)."""
        return self.index[tuple(v)]

    def simple_index(self, k: int) -> int:
        """Steinberg index of the simple root ``alpha_k`` (k is 1-based)."""
        return self.index[self.simple[k - 1]]

    # -- checks -----------------------------------------------------------

    def _check_closed_forms(self) -> None:
        n, s, g = self.n, self.s, self.gamma
        rho, mu = self.rho, self.mu_vectors
        for i in range(n):
            if i < s:
                want = self.simple[i]
            else:
                want = tuple(-c for c in linalg.mat_vec(g, self.simple[i]))
            if rho[i] != want:
                raise VerificationError(f"closed form for rho_{i + 1} failed")
            if mu[i] != self.beta[i]:
                raise VerificationError(f"closed form for mu_{i + 1} failed")
        for i in range(n, self.nh):
            if rho[i] != linalg.mat_vec(g, rho[i - n]) or mu[i] != linalg.mat_vec(g, mu[i - n]):
                raise VerificationError(f"cyclic recursion failed at index {i + 1}")
        for i, v in enumerate(rho):
            ok = is_positive(v) if i < self.N else is_negative(v)
            if not ok:
                raise VerificationError(f"rho_{i + 1} violates the positive/negative split")
        tail = set(rho[self.N - (n - s) : self.N])
        if tail != set(self.simple[s:]):
            raise VerificationError("last n-s positive roots are not a permutation of S2")

    def __repr__(self) -> str:
        return f"SteinbergData({self.datum.type_label}, n={self.n}, h={self.h}, s={self.s})"


def _order(g: linalg.Matrix, K: NumberField) -> int:
    ident = linalg.identity(K, len(g))
    p = g
    for k in range(1, MAX_COXETER_ORDER + 1):
        if p == ident:
            return k
        p = linalg.mat_mul(p, g)
    raise VerificationError(f"Coxeter element order exceeds {MAX_COXETER_ORDER}")


def _bipartite_split(datum: CoxeterDatum) -> int:
    colour = _two_colouring(datum.coxeter_matrix)
    s = colour.count(colour[0])
    if any(c != colour[0] for c in colour[:s]):
        raise TypeParseError("datum is not in bipartite order; apply bipartition() first")
    return s


def steinberg(datum: CoxeterDatum | Bipartition) -> SteinbergData:
    """Steinberg sequences for a bipartite-ordered datum."""
    if isinstance(datum, Bipartition):
        return SteinbergData(datum.datum, datum.s)
    return SteinbergData(datum, _bipartite_split(datum))


def dot_table(sd: SteinbergData) -> list[list[FieldElement]]:
    """Matrix of ``mu_i . rho_j`` for ``1 <= i, j <= nh/2``."""
    B = sd.gram
    co_mu = [linalg.mat_vec(B, sd.mu(i)) for i in range(1, sd.N + 1)]
    return [[linalg._dot(cm, sd.root(j)) for j in range(1, sd.N + 1)] for cm in co_mu]


def build(symbol: str) -> SteinbergData:
    """Parse, bipartition and compute the Steinberg data in one step."""
    return steinberg(bipartition(parse_type(symbol)))
