import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from coxlattice import linalg
from coxlattice.absorder import bits, interval, kreweras, leq
from coxlattice.complexes import build_EX
from coxlattice.errors import NotInIntervalError
from coxlattice.lattice import (
    MeetJoin, brute_glb, brute_lub, catalan_count, full_group_interval, join, meet, order_masks, verify_lattice,
)

from helpers import G_, P_, X_, cycle_perm, element_for_perm, tetra_group, tetra_perm

SMALL = ["A2", "A3", "B3", "H3", "I2(7)", "G2"]


def mj(symbol):
    return MeetJoin(G_(symbol), X_(symbol))


def test_sym4_examples():
    G = tetra_group()
    M = MeetJoin(G)
    a = element_for_perm(G, cycle_perm((1, 2), (3, 4)))
    b = element_for_perm(G, cycle_perm((1, 4), (2, 3)))
    assert M.meet(a, b).element == G.identity
    assert M.join(a, b) == G.gamma
    t12 = element_for_perm(G, cycle_perm((1, 2)))
    t23 = element_for_perm(G, cycle_perm((2, 3)))
    t34 = element_for_perm(G, cycle_perm((3, 4)))
    assert M.join(t12, t34) == a
    assert M.join(t12, t23) == element_for_perm(G, cycle_perm((1, 2, 3)))
    # crossing transpositions generate everything
    t13 = element_for_perm(G, cycle_perm((1, 3)))
    t24 = element_for_perm(G, cycle_perm((2, 4)))
    assert M.join(t13, t24) == G.gamma
    assert M.meet(G.gamma, a).element == a


def _blocks(p):
    seen, out = set(), []
    for start in range(1, len(p) + 1):
        if start in seen:
            continue
        block, k = set(), start
        while k not in block:
            block.add(k)
            k = p[k - 1]
        seen |= block
        out.append(frozenset(block))
    return set(out)


def test_sym4_meet_is_partition_refinement():
    # noncrossing partitions: the meet is the common refinement of the cycle partitions
    G = tetra_group()
    M = MeetJoin(G)
    els = interval(G).elements
    for a, b in itertools.combinations(els, 2):
        pa, pb = _blocks(tetra_perm(G, a)), _blocks(tetra_perm(G, b))
        common = {x & y for x in pa for y in pb if x & y}
        assert _blocks(tetra_perm(G, M.meet(a, b).element)) == common


@pytest.mark.parametrize("m", range(3, 11))
def test_dihedral_lattice(m):
    G = G_(f"I2({m})")
    M = MeetJoin(G)
    R = G.reflections
    for r, q in itertools.combinations(R, 2):
        assert M.meet(r, q).element == G.identity
        assert M.join(r, q) == G.gamma
    for r in R:
        assert M.meet(r, G.gamma).element == r
        assert M.join(r, G.identity) == r


@pytest.mark.parametrize("symbol", SMALL + ["B4"])
def test_lattice_laws(symbol):
    M = mj(symbol)
    G, P = G_(symbol), P_(symbol)
    els = P.elements
    rng = random.Random(1)
    pairs = list(itertools.combinations(els, 2))
    for a, b in rng.sample(pairs, min(300, len(pairs))):
        m, j = M.meet(a, b).element, M.join(a, b)
        assert m == M.meet(b, a).element and j == M.join(b, a)
        assert M.meet(a, j).element == a and M.join(a, m) == a
        assert leq(m, a) and leq(m, b) and leq(a, j) and leq(b, j)
    for a in els[:20]:
        assert M.meet(a, a).element == a and M.join(a, a) == a
        assert M.meet(a, G.identity).element == G.identity
        assert M.join(a, G.gamma) == G.gamma


@settings(max_examples=80)
@given(st.sampled_from(["A3", "B3", "H3", "A4", "B4"]), st.randoms(use_true_random=False))
def test_associativity(symbol, rnd):
    M = mj(symbol)
    a, b, c = (rnd.choice(P_(symbol).elements) for _ in range(3))
    assert M.meet(M.meet(a, b).element, c).element == M.meet(a, M.meet(b, c).element).element
    assert M.join(M.join(a, b), c) == M.join(a, M.join(b, c))


@pytest.mark.parametrize("symbol", ["A3", "B3", "H3", "B4"])
def test_meet_does_not_depend_on_the_top_simplex(symbol):
    G, P, X = G_(symbol), P_(symbol), X_(symbol)
    M = MeetJoin(G, X)
    rng = random.Random(2)
    pairs = list(itertools.combinations(P.elements, 2))
    for a, b in rng.sample(pairs, min(150, len(pairs))):
        common = G.moved_mask(a) & G.moved_mask(b)
        if not common:
            continue
        m = M.meet(a, b).element
        for simplex in X.induced(bits(common)).top_simplices():
            assert G.word(simplex) == m


@pytest.mark.parametrize("symbol", ["A3", "H3", "B4", "D4"])
def test_meet_moves_the_roots_in_common(symbol):
    # M(a ^ b) is spanned by the roots lying in M(a) & M(b); that span may be
    # smaller than the intersection itself
    G, P = G_(symbol), P_(symbol)
    M = mj(symbol)
    sd = G.sd
    rng = random.Random(3)
    for _ in range(100):
        a, b = rng.choice(P.elements), rng.choice(P.elements)
        Ma, _ = G.moved_fixed(a)
        Mb, _ = G.moved_fixed(b)
        span = linalg.rank(tuple(Ma) + tuple(Mb)) if Ma or Mb else 0
        roots = [sd.root(i) for i in bits(G.moved_mask(a) & G.moved_mask(b))]
        res = M.meet(a, b)
        k = G.length(res.element)
        assert k == (linalg.rank(tuple(roots)) if roots else 0)
        assert k <= len(Ma) + len(Mb) - span
        assert res.verified and len(res.witness_simplex) == k


@pytest.mark.parametrize("symbol", ["A3", "I2(7)", "H3"])
def test_join_is_kreweras_dual_of_meet(symbol):
    G, P = G_(symbol), P_(symbol)
    M = mj(symbol)
    inv_k = {kreweras(w): w for w in P.elements}
    for a, b in itertools.combinations(P.elements, 2):
        # K reverses order, so K(a v b) = K(a) ^ K(b)
        assert kreweras(M.join(a, b)) == M.meet(kreweras(a), kreweras(b)).element
        assert inv_k[kreweras(M.join(a, b))] == M.join(a, b)


def test_i2_join_against_independent_lub():
    G, P = G_("I2(7)"), P_("I2(7)")
    M = mj("I2(7)")
    els = P.elements
    for a, b in itertools.product(els, repeat=2):
        ub = [w for w in els if leq(a, w) and leq(b, w)]
        lub = [w for w in ub if all(leq(w, u) for u in ub)]
        assert lub == [M.join(a, b)]


def test_module_level_helpers():
    G = G_("A3")
    a, b = G.reflections[0], G.reflections[1]
    assert meet(a, b).element == MeetJoin(G).meet(a, b).element
    assert join(a, b) == MeetJoin(G).join(a, b)


def test_errors():
    G = G_("A3")
    M = MeetJoin(G)
    outside = next(w for w in G.all_elements() if not leq(w, G.gamma))
    with pytest.raises(NotInIntervalError):
        M.meet(outside, G.identity)
    with pytest.raises(ValueError):
        MeetJoin(G, build_EX(G))


@pytest.mark.parametrize("symbol,size", [("A2", 5), ("A3", 14), ("B3", 20), ("H3", 32), ("I2(7)", 9), ("A4", 42)])
def test_catalan_count(symbol, size):
    assert catalan_count(P_(symbol)) == size


@pytest.mark.parametrize("symbol", ["A3", "B3", "H3", "I2(7)"])
def test_full_group_filter(symbol):
    assert set(full_group_interval(G_(symbol))) == set(P_(symbol).elements)


def test_brute_helpers():
    P = P_("A3")
    down, up = order_masks(P)
    bottom, top = P.index(P.bottom), P.index(P.top)
    assert brute_glb(down, bottom, top) == bottom
    assert brute_lub(up, bottom, top) == top


@pytest.mark.parametrize("symbol", ["A1", "A2", "A3", "B3", "H3", "G2", "I2(7)", "A4", "B4", "D4", "F4"])
def test_verify_lattice(symbol):
    rep = verify_lattice(P_(symbol), X_(symbol))
    n = len(P_(symbol))
    assert rep.pairs_checked == n * (n - 1) // 2
    assert rep.passed, rep.failures[:3]
    d = rep.to_dict()
    assert d["max_discrepancy"] == 0 and d["wall_time_ms"] is None


def test_verify_lattice_timing():
    rep = verify_lattice(P_("A2"), timing=True)
    assert rep.wall_time_ms is not None and rep.wall_time_ms >= 0
