import itertools

import pytest

from coxlattice.cluster import ClusterData, build_GA, isomorphism_check
from coxlattice.complexes import build_EX, sphere_check
from coxlattice.errors import VerificationError

from helpers import G_

CRYSTAL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "G2"]
NONCRYSTAL = ["H3", "H4", "I2(5)", "I2(7)", "I2(8)"]

_cache = {}


def cd_(symbol):
    if symbol not in _cache:
        _cache[symbol] = ClusterData(G_(symbol))
    return _cache[symbol]


def omega(cd):
    return [cd.steinberg_of[lab] for lab in cd.labels]


def test_almost_positive_roots():
    cd = cd_("B3")
    assert len(cd.labels) == cd.N + cd.n
    negs = [r for r in cd.roots if not r.positive]
    assert sorted(r.tag for r in negs) == [1, 2, 3]
    for r in negs:
        assert r.vector == tuple(-c for c in cd.G.sd.simple[r.tag - 1])
    assert repr(negs[0]).startswith("-alpha_")
    assert len(cd.minus_S1) == cd.s and len(cd.minus_S2) == cd.n - cd.s


@pytest.mark.parametrize("symbol", CRYSTAL + NONCRYSTAL)
def test_tau_examples(symbol):
    cd = cd_(symbol)
    sd = cd.G.sd
    for i in cd.minus_S2:
        assert cd.tau_plus(i) == i
    for i in cd.minus_S1:
        assert cd.tau_minus(i) == i
    # tau_+ sends alpha_1 to -alpha_1
    a1 = sd.simple_index(1)
    assert cd.tau_plus(a1) == sd.neg[a1]
    S2 = {sd.simple_index(k) for k in range(cd.s + 1, cd.n + 1)}
    for i in omega(cd):
        got = cd.tau_plus(cd.tau_minus(i))
        if i in cd.minus_S1 or i in S2:
            assert got == sd.neg[i]
        else:
            assert sd.root(got) == sd.apply_gamma(sd.root(i))


@pytest.mark.parametrize("symbol", CRYSTAL + NONCRYSTAL)
def test_taus_are_involutions(symbol):
    cd = cd_(symbol)
    for i in omega(cd):
        assert cd.tau_plus(cd.tau_plus(i)) == i
        assert cd.tau_minus(cd.tau_minus(i)) == i


@pytest.mark.parametrize("symbol", CRYSTAL + NONCRYSTAL)
def test_rotation_has_finite_order(symbol):
    cd = cd_(symbol)
    for i in omega(cd):
        x, steps = cd.tau_minus(cd.tau_plus(i)), 1
        while x != i:
            x, steps = cd.tau_minus(cd.tau_plus(x)), steps + 1
            assert steps <= 2 * (cd.h + 2)


def test_compatibility_examples():
    cd = cd_("A2")
    sd = cd.G.sd
    neg = {k: sd.neg[sd.simple_index(k)] for k in (1, 2)}
    pos = {k: sd.simple_index(k) for k in (1, 2)}
    assert cd.compatibility(neg[1], pos[2]) == 0
    assert cd.compatibility(neg[1], pos[1]) == 1
    both = next(i for i in range(1, cd.N + 1) if sd.root(i) == tuple(a + b for a, b in zip(*sd.simple)))
    assert cd.compatibility(neg[1], both) == 1
    with pytest.raises(ValueError):
        cd.compatibility(neg[1], sd.neg[both])


@pytest.mark.parametrize("symbol", ["A3", "B3", "H3", "F4"])
def test_negative_simple_against_simple(symbol):
    cd = cd_(symbol)
    sd = cd.G.sd
    for i, j in itertools.product(range(1, cd.n + 1), repeat=2):
        val = cd.compatibility(sd.neg[sd.simple_index(i)], sd.simple_index(j))
        assert val == (1 if i == j else 0)


def test_a2_is_a_pentagon():
    ga = build_GA(G_("A2"))
    assert len(ga.vertices) == 5 and len(ga.edges()) == 5
    assert sphere_check(ga, 2).passed


def test_a3_facets():
    ga = build_GA(G_("A3"))
    assert len(ga.facets()) == 14
    assert len(ga.vertices) == 9


@pytest.mark.parametrize("symbol", CRYSTAL + NONCRYSTAL)
def test_zero_locus_symmetric(symbol):
    cd = cd_(symbol)
    om = omega(cd)
    for a, b in itertools.combinations(om, 2):
        assert (cd.compatibility(a, b) == 0) == (cd.compatibility(b, a) == 0)


@pytest.mark.parametrize("symbol", ["A2", "A3", "B3", "G2", "D4", "H3", "I2(7)"])
def test_rule_ii_invariance(symbol):
    cd = cd_(symbol)
    om = omega(cd)
    for a, b in itertools.product(om, repeat=2):
        if a == b:
            continue
        v = cd.compatibility(a, b)
        assert cd.compatibility(cd.tau_plus(a), cd.tau_plus(b)) == v
        assert cd.compatibility(cd.tau_minus(a), cd.tau_minus(b)) == v


@pytest.mark.parametrize("symbol", CRYSTAL)
def test_crystallographic_degrees_are_integers(symbol):
    cd = cd_(symbol)
    for row in cd.table():
        for x in row:
            assert all(c.denominator == 1 for c in x.coeffs)
            assert x.sign() >= 0


def test_noncrystallographic_requires_extension():
    with pytest.raises(ValueError):
        build_GA(G_("H3"))
    assert len(build_GA(G_("H3"), extension=True).vertices) == 18


@pytest.mark.parametrize("symbol", CRYSTAL + NONCRYSTAL + ["E6"])
def test_isomorphism_with_ex(symbol):
    G = G_(symbol)
    cd = cd_(symbol)
    rep = isomorphism_check(build_EX(G), build_GA(G, extension=True, data=cd))
    assert rep["passed"], rep
    assert rep["vertices_equal"] and not rep["only_in_EX"] and not rep["only_in_GA"]


def test_isomorphism_report_lists_differences():
    G = G_("A2")
    ex = build_EX(G)
    ga = build_GA(G)
    from coxlattice.complexes import FlagComplex

    broken = FlagComplex(ga.vertices, ga.edges()[1:])
    rep = isomorphism_check(ex, broken)
    assert not rep["passed"] and len(rep["only_in_EX"]) == 1


def test_table_csv():
    cd = cd_("A2")
    lines = cd.table_csv().strip().split("\n")
    assert len(lines) == 6
    header = lines[0].split(",")
    assert header[1:] == [str(int(l)) for l in cd.labels]
    # zero on the diagonal
    for k, line in enumerate(lines[1:], start=1):
        assert line.split(",")[k] == "0"


def test_tau_leaving_omega_is_an_error():
    cd = ClusterData(G_("A2"))
    cd._plus = cd.G.gamma
    with pytest.raises(VerificationError):
        for i in omega(cd):
            cd.tau_plus(i)
