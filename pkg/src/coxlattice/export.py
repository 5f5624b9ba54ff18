"""Serialisation: exact tables as CSV/JSON, complexes as OFF meshes.

Exact scalars are written as polynomial strings in ``t`` (the field
generator), highest power first.  Floats appear only in OFF output, which
embeds simple-root coordinates in Euclidean space through a Cholesky factor
of the Gram matrix.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .complexes import FlagComplex
from .rootsystem import SteinbergData, dot_table


def _s(x) -> str:
    return x.poly_string()


def roots_rows(sd: SteinbergData) -> list[list[str]]:
    header = ["i"] + [f"rho_{k}" for k in range(1, sd.n + 1)] + [f"mu_{k}" for k in range(1, sd.n + 1)]
    rows = [header]
    for i in range(1, sd.N + 1):
        rows.append([str(i)] + [_s(c) for c in sd.root(i)] + [_s(c) for c in sd.mu(i)])
    return rows


def tables_csv(sd: SteinbergData) -> str:
    """Root/Petrie-vertex listing, a blank line, then the ``mu_i . rho_j`` matrix."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(roots_rows(sd))
    buf.write("\n")
    w.writerow([""] + [str(j) for j in range(1, sd.N + 1)])
    for i, row in enumerate(dot_table(sd), 1):
        w.writerow([str(i)] + [_s(x) for x in row])
    return buf.getvalue()


def tables_dict(sd: SteinbergData) -> dict:
    return {
        "type": sd.datum.type_label,
        "field_order": sd.field.m,
        "min_poly": list(sd.field.min_poly),
        "n": sd.n,
        "h": sd.h,
        "s": sd.s,
        "gram": [[_s(x) for x in row] for row in sd.gram],
        "rho": [[_s(c) for c in sd.root(i)] for i in range(1, sd.N + 1)],
        "mu": [[_s(c) for c in sd.mu(i)] for i in range(1, sd.N + 1)],
        "dot_table": [[_s(x) for x in row] for row in dot_table(sd)],
    }


def tables_text(sd: SteinbergData) -> str:
    rows = [[str(i)] + [_s(x) for x in row] for i, row in enumerate(dot_table(sd), 1)]
    width = max(len(c) for r in rows for c in r)
    head = f"{sd.datum.type_label}: n={sd.n} h={sd.h} s={sd.s} positive roots={sd.N}\n"
    return head + "\n".join(" ".join(c.rjust(width) for c in r) for r in rows) + "\n"


def ambient_basis(sd: SteinbergData) -> np.ndarray:
    """Rows are Euclidean images of the simple roots (Gram = rows @ rows.T)."""
    B = np.array([[float(x) for x in row] for row in sd.gram])
    return np.linalg.cholesky(B)


def to_ambient(sd: SteinbergData, v, basis: np.ndarray | None = None) -> np.ndarray:
    basis = ambient_basis(sd) if basis is None else basis
    return np.array([float(c) for c in v]) @ basis


def off(cx: FlagComplex, sd: SteinbergData) -> str:
    """OFF mesh of a complex of rank-3 roots: vertices on S^2, facets as faces."""
    if sd.n != 3:
        raise ValueError("OFF export needs rank 3")
    basis = ambient_basis(sd)
    facets = cx.facets()
    lines = ["OFF", f"{len(cx.vertices)} {len(facets)} 0"]
    for v in cx.vertices:
        x = to_ambient(sd, sd.root(v), basis)
        lines.append(" ".join(format(float(c), ".17g") for c in x))
    for f in facets:
        lines.append(" ".join([str(len(f))] + [str(cx.pos[v]) for v in f]))
    return "\n".join(lines) + "\n"


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"
