import itertools

import pytest

from coxlattice import linalg
from coxlattice.errors import TypeParseError
from coxlattice.rootsystem import (
    bipartition, build, dot_table, dual_basis, from_coxeter_matrix, gram, parse_type, steinberg,
)
from coxlattice.scalar import number_field

import golden
from helpers import tetra_group, tetra_transposition, to_ambient, vec

# Coxeter numbers from the classification, used as an independent oracle
COXETER_NUMBER = {
    "A1": 2, "A2": 3, "A3": 4, "A4": 5, "A5": 6, "B2": 4, "B3": 6, "B4": 8, "C3": 6, "D4": 6, "D5": 8,
    "E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6, "H3": 10, "H4": 30,
}
TYPES = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "F4", "G2", "H3", "H4", "E6"] + [
    f"I2({m})" for m in range(3, 13)
]


@pytest.mark.parametrize(
    "symbol,rank,m",
    [("A1", 1, 3), ("H3", 3, 5), ("I2(7)", 2, 7), ("B4", 4, 4), ("G2", 2, 6), ("E8", 8, 3), ("C3", 3, 4)],
)
def test_parse_type(symbol, rank, m):
    d = parse_type(symbol)
    assert d.rank == rank
    assert d.field is number_field(m)


def test_parse_h3_has_one_edge_labelled_5():
    d = parse_type("H3")
    labels = sorted(d.coxeter_matrix[i][j] for i, j in itertools.combinations(range(3), 2))
    assert labels == [2, 3, 5]


@pytest.mark.parametrize("bad", ["A0", "B1", "D3", "E5", "E9", "F3", "G3", "H2", "H5", "I2(2)", "Z3", "a3", "I2()", ""])
def test_parse_errors(bad):
    with pytest.raises(TypeParseError):
        parse_type(bad)


def test_from_matrix_rejects_disconnected():
    with pytest.raises(TypeParseError):
        from_coxeter_matrix([[1, 2], [2, 1]])


@pytest.mark.parametrize("symbol", TYPES + ["E7", "E8", "D5", "C3"])
def test_bipartition_orthonormal_halves(symbol):
    bp = bipartition(parse_type(symbol))
    B = gram(bp.datum)
    s, n = bp.s, bp.datum.rank
    for i, j in itertools.combinations(range(n), 2):
        if (i < s) == (j < s):
            assert B[i][j] == 0


def test_bipartition_examples():
    assert bipartition(parse_type("A1")).s == 1
    assert bipartition(parse_type("H3")).s == 2
    tetra = bipartition(from_coxeter_matrix(golden.TETRA_COXETER, "A3"))
    assert tetra.s == 1
    assert tetra.order == (0, 1, 2)


def test_gram_examples():
    A2 = gram(parse_type("A2"))
    K = number_field(3)
    assert A2 == ((K.one, K(-1) / 2), (K(-1) / 2, K.one))
    H3 = gram(bipartition(parse_type("H3")).datum)
    K5 = number_field(5)
    assert H3[1][2] == -K5.theta / 2
    assert H3[0][1] == 0


def test_icosahedral_gram_matches_ambient():
    K = number_field(5)
    alpha = [vec(K, a) for a in golden.ICOS_ALPHA]
    amb = tuple(tuple(linalg._dot(a, b) for b in alpha) for a in alpha)
    assert amb == build("H3").gram


def test_cube_gram_matches_ambient():
    K = number_field(4)
    alpha = [vec(K, a) for a in golden.CUBE_ALPHA]
    amb = tuple(tuple(linalg._dot(a, b) for b in alpha) for a in alpha)
    assert amb == build("B4").gram


def test_tetra_gram_matches_ambient():
    G = tetra_group()
    K = number_field(3)
    amb = tuple(tuple(K(sum(x * y for x, y in zip(a, b))) / 2 for b in golden.TETRA_ALPHA) for a in golden.TETRA_ALPHA)
    assert amb == G.sd.gram


@pytest.mark.parametrize("symbol", ["A2", "B3", "H3", "H4", "F4", "I2(7)"])
def test_dot_symmetry_and_units(symbol):
    sd = build(symbol)
    for a in sd.simple:
        assert sd.dot(a, a) == 1
    for x, y in itertools.combinations(sd.rho[:8], 2):
        assert sd.dot(x, y) == sd.dot(y, x)


@pytest.mark.parametrize("symbol", ["A1", "A3", "B4", "D4", "F4", "G2", "H3", "H4", "I2(9)"])
def test_dual_basis(symbol):
    sd = build(symbol)
    for i, b in enumerate(sd.beta):
        for j, a in enumerate(sd.simple):
            assert sd.dot(b, a) == (1 if i == j else 0)


def test_dual_basis_a1():
    sd = build("A1")
    assert sd.beta == [sd.simple[0]]


def test_icosahedral_dual_basis_ambient():
    K = number_field(5)
    sd = build("H3")
    expected = [vec(K, b) for b in [("1", "0", "t"), ("0", "1", "t+1"), ("0", "0", "2*t")]]
    got = [to_ambient(K, b, golden.ICOS_ALPHA) for b in sd.beta]
    assert got == expected
    for i, j in itertools.product(range(3), repeat=2):
        assert sd.dot(sd.beta[i], sd.beta[j]) == linalg._dot(expected[i], expected[j])


@pytest.mark.parametrize("symbol", TYPES + ["E7", "E8", "D5", "C3"])
def test_coxeter_number_and_root_count(symbol):
    sd = build(symbol)
    h = int(symbol[3:-1]) if symbol.startswith("I2") else COXETER_NUMBER[symbol]
    assert sd.h == h
    assert sd.N == sd.n * h // 2


def _closure_roots(sd):
    """All roots by repeatedly reflecting the simple roots."""
    seen = set(sd.simple)
    frontier = list(sd.simple)
    while frontier:
        nxt = []
        for v in frontier:
            for R in sd.simple_reflections:
                u = linalg.mat_vec(R, v)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


@pytest.mark.parametrize("symbol", TYPES)
def test_steinberg_roots_are_all_roots(symbol):
    sd = build(symbol)
    assert _closure_roots(sd) == set(sd.rho)
    assert all(all(c.sign() >= 0 for c in sd.root(i)) for i in range(1, sd.N + 1))
    assert all(all(c.sign() <= 0 for c in sd.root(i)) for i in range(sd.N + 1, sd.nh + 1))


@pytest.mark.parametrize("symbol", TYPES)
def test_closed_forms(symbol):
    sd = build(symbol)
    n, s = sd.n, sd.s
    for i in range(1, n + 1):
        if i <= s:
            assert sd.root(i) == sd.simple[i - 1]
        else:
            assert sd.root(i) == tuple(-c for c in sd.apply_gamma(sd.simple[i - 1]))
        assert sd.mu(i) == sd.beta[i - 1]
    for i in range(1, sd.nh + 1):
        assert sd.root(i + n) == sd.apply_gamma(sd.root(i))
        assert sd.mu(i + n) == sd.apply_gamma(sd.mu(i))
    assert set(sd.rho[sd.N - (n - s): sd.N]) == set(sd.simple[s:])


def test_icosahedral_rho_mu_ambient():
    K = number_field(5)
    sd = build("H3")
    assert sd.h == 10 and sd.N == 15
    for i in range(15):
        assert to_ambient(K, sd.root(i + 1), golden.ICOS_ALPHA) == vec(K, golden.ICOS_RHO[i])
        assert to_ambient(K, sd.mu(i + 1), golden.ICOS_ALPHA) == vec(K, golden.ICOS_MU[i])


def test_icosahedral_dot_table():
    K = number_field(5)
    table = dot_table(build("H3"))
    expected = [[K.parse(x) for x in row] for row in golden.ICOS_DOTS]
    assert table == expected
    assert table[0][4] == K.theta
    assert table[2][8] == 2 * K.theta
    assert table[3][0] == -1


def test_tetra_global_order():
    G = tetra_group()
    assert G.sd.h == 4
    order = [tuple(sorted(tetra_transposition(G, i))) for i in range(1, 7)]
    assert order == golden.TETRA_ORDER


def test_cube_counts():
    sd = build("B4")
    assert sd.h == 8 and sd.N == 16


@pytest.mark.parametrize("symbol", TYPES)
def test_dot_table_diagonal_and_band(symbol):
    sd = build(symbol)
    T = dot_table(sd)
    for i in range(sd.N):
        assert T[i][i] == 1
        for t in range(1, sd.n):
            if i + t < sd.N:
                assert T[i + t][i] == 0


def test_custom_matrix_must_be_bipartite_ordered():
    d = parse_type("A3")  # middle node is index 1, so order 0,1,2 is not bipartite
    with pytest.raises(TypeParseError):
        steinberg(d)
