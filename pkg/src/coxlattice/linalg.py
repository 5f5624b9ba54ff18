"""Exact dense linear algebra over a :class:`~coxlattice.scalar.NumberField`.

Matrices are tuples of row tuples, vectors are tuples.  Sizes here never
exceed 8x8, so plain Python loops are the right tool.
"""

from __future__ import annotations

from typing import Sequence

from .scalar import FieldElement, NumberField

Vector = tuple
Matrix = tuple


def identity(field: NumberField, n: int) -> Matrix:
    one, zero = field.one, field.zero
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def zeros(field: NumberField, rows: int, cols: int) -> Matrix:
    return tuple((field.zero,) * cols for _ in range(rows))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def mat_vec(a: Matrix, x: Sequence) -> Vector:
    return tuple(_dot(row, x) for row in a)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def vec_add(x: Sequence, y: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence, y: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x: Sequence) -> Vector:
    return tuple(c * a for a in x)


def is_zero_vector(x: Sequence) -> bool:
    return not any(x)


def _dot(x: Sequence, y: Sequence):
    it = iter(zip(x, y))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        if a and b:
            acc = acc + a * b
    return acc


def rank(a: Matrix) -> int:
    """Rank by division-free elimination (only exact zero tests)."""
    rows = [list(r) for r in a if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        pc = p[c]
        for i in range(r + 1, len(rows)):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [pc * x - f * y if (x or y) else x for x, y in zip(row, p)]
        r += 1
        if r == len(rows):
            break
    return r


def rref(a: Matrix) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in a]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        p = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], p)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(a: Matrix) -> list[Vector]:
    """Basis of {x : a x = 0}, one vector per free column."""
    if not a:
        return []
    ncols = len(a[0])
    field = a[0][0].field
    rows, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for r, pc in enumerate(pivots):
            x[pc] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def column_space(a: Matrix) -> list[Vector]:
    """Basis of the image of ``a``, taken from its own pivot columns."""
    _, pivots = rref(a)
    cols = transpose(a)
    return [tuple(cols[c]) for c in pivots]


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """One solution of ``a x = b`` or None when inconsistent."""
    ncols = len(a[0])
    field = a[0][0].field
    aug = tuple(tuple(row) + (bi,) for row, bi in zip(a, b))
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][ncols]
    return tuple(x)


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    field = a[0][0].field
    ident = identity(field, n)
    aug = tuple(tuple(row) + e for row, e in zip(a, ident))
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(r[n:]) for r in rows)


def det(a: Matrix):
    n = len(a)
    field = a[0][0].field
    rows = [list(r) for r in a]
    result = field.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return field.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        pc = rows[c][c]
        result = result * pc
        inv = pc.inverse()
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                g = f * inv
                rows[i] = [x - g * y if y else x for x, y in zip(rows[i], rows[c])]
    return result
