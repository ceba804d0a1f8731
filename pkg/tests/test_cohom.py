import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chevdeform import ring as rg
from chevdeform.cohom import (congruence_extension, find_complement, h1_dim, h2_trivial_dim,
                              h2_trivial_dim_direct, hom_to_fp_dim, is_coboundary, small_generating_set,
                              trivial_module, view)
from chevdeform.liemod import adjoint_module, build_lie
from chevdeform.matgroup import BudgetExceeded, GroupSpec, enumerate_group

import oracles


def F(q):
    return rg.field_of_order(q)


def group(fam, n, q):
    return enumerate_group(GroupSpec(fam, n, rg.field_ring(F(q))))


def adjoint(fam, lie, n, q):
    G = group(fam, n, q)
    return G, adjoint_module(G, build_lie(lie, n, F(q)))


# ---------------------------------------------------------------------------
# H^1 against the full cocycle equations

@pytest.mark.parametrize("p,expected", [(2, 1), (3, 0), (5, 1), (7, 0)])
def test_h1_adjoint_sl2_matches_oracle(p, expected):
    els, gens, mul, ident = oracles.sl_group_mod(2, p)
    act, d = oracles.adjoint_action_sl(2, p)
    assert oracles.h1_dim(els, mul, ident, gens, act, d, p) == expected
    G, M = adjoint("SL", "sl", 2, p)
    assert h1_dim(G, M) == expected


def test_h1_adjoint_sl3_f2_matches_oracle():
    els, gens, mul, ident = oracles.sl_group_mod(3, 2)
    act, d = oracles.adjoint_action_sl(3, 2)
    G, M = adjoint("SL", "sl", 3, 2)
    assert h1_dim(G, M) == oracles.h1_dim(els, mul, ident, gens, act, d, 2)


def _pgl2_oracle(p):
    """PGL_2(F_p) as normalized GL_2 matrices acting on gl_2 / scalars with
    coordinates (b, c, a - d) of [[a, b], [c, d]]."""
    R = oracles._IntMod(p)

    def norm(x):
        lead = next(e for e in x if e % p)
        s = pow(lead, -1, p)
        return tuple(e * s % p for e in x)

    def mul(x, y):
        return norm(oracles.matmul(x, y, 2, R))

    els = {norm(x) for x in itertools.product(range(p), repeat=4) if (x[0] * x[3] - x[1] * x[2]) % p}
    ident = (1, 0, 0, 1)
    gens = [norm(x) for x in itertools.product(range(p), repeat=4) if (x[0] * x[3] - x[1] * x[2]) % p][:0]
    gens = list(els)

    def act(g):
        det = (g[0] * g[3] - g[1] * g[2]) % p
        di = pow(det, -1, p)
        ginv = (g[3] * di % p, -g[1] * di % p, -g[2] * di % p, g[0] * di % p)
        cols = []
        for X in [(0, 1, 0, 0), (0, 0, 1, 0), (1, 0, 0, 0)]:
            Y = oracles.matmul(oracles.matmul(g, X, 2, R), ginv, 2, R)
            cols.append((Y[1], Y[2], (Y[0] - Y[3]) % p))
        return [cols[j][i] for i in range(3) for j in range(3)]

    return els, mul, ident, gens, act


@pytest.mark.parametrize("p,expected", [(2, 1), (3, 0), (5, 0)])
def test_h1_adjoint_pgl2_matches_oracle(p, expected):
    els, mul, ident, gens, act = _pgl2_oracle(p)
    assert len(els) == p * (p * p - 1)
    assert oracles.h1_dim(els, mul, ident, gens, act, 3, p) == expected
    G, M = adjoint("PGL", "pgl", 2, p)
    assert h1_dim(G, M) == expected


@settings(max_examples=15)
@given(seed=st.integers(0, 10 ** 6), case=st.sampled_from([("SL", "sl", 2, 2), ("SL", "sl", 2, 5),
                                                           ("PGL", "pgl", 2, 3), ("SL", "sl", 2, 4)]))
def test_h1_independent_of_generating_set(seed, case):
    G, M = adjoint(*case)
    base = h1_dim(G, M)
    rnd = random.Random(seed)
    gens = list(G.generators) + rnd.sample(G.elements, 2)
    rnd.shuffle(gens)
    assert h1_dim(G, M, gens=gens) == base
    gens2 = small_generating_set(view(G), seed=seed)
    assert h1_dim(G, M, gens=gens2) == base


@pytest.mark.parametrize("fam,n,q", [("SL", 2, 5), ("SL", 3, 2), ("SL", 2, 4), ("SL", 2, 7)])
def test_perfect_groups_have_no_trivial_h1(fam, n, q):
    G = group(fam, n, q)
    assert hom_to_fp_dim(G, rg.field_of_order(q).p) == 0


@pytest.mark.parametrize("q,p,expected", [(2, 2, 1), (2, 3, 0), (3, 3, 1), (3, 2, 0)])
def test_hom_to_fp_of_small_sl2(q, p, expected):
    # SL2(F2) = S3 has abelianization Z/2, SL2(F3) has Z/3
    assert hom_to_fp_dim(group("SL", 2, q), p) == expected


def test_h1_trivial_group_action_is_hom_space():
    G = group("SL", 2, 3)
    M = trivial_module(G, 3, dim=2)
    assert h1_dim(G, M) == 2


# ---------------------------------------------------------------------------
# H^2 with trivial coefficients

@pytest.mark.parametrize("q,p,expected", [(2, 2, 1), (2, 3, 0), (3, 3, 1), (3, 2, 0)])
def test_h2_small_groups_match_all_cochain_oracle(q, p, expected):
    G = group("SL", 2, q)
    els, mul, ident = oracles.sl2_field(oracles.GF(q))
    assert oracles.h2_trivial_dim(els, mul, p) == expected
    assert h2_trivial_dim(G, p) == expected
    assert h2_trivial_dim_direct(G, p) == expected


@pytest.mark.parametrize("q,p,expected", [(4, 2, 1), (5, 2, 0), (5, 5, 0), (7, 7, 0), (9, 3, 1)])
def test_h2_schur_multiplier_values(q, p, expected):
    # SL2(F4) = A5 has Schur multiplier Z/2, SL2(F9) has Z/3, SL2(F5) and SL2(F7) have none
    assert h2_trivial_dim(group("SL", 2, q), p) == expected


@settings(max_examples=10)
@given(seed=st.integers(0, 1000))
def test_h2_independent_of_generating_set(seed):
    G = group("SL", 2, 3)
    gens = small_generating_set(view(G), seed=seed)
    assert h2_trivial_dim(G, 3, gens=gens) == 1


def test_h2_budget():
    with pytest.raises(BudgetExceeded):
        h2_trivial_dim(group("SL", 3, 3), 3)
    with pytest.raises(BudgetExceeded):
        h2_trivial_dim_direct(group("SL", 2, 5), 5)


# ---------------------------------------------------------------------------
# extensions

def _random_triples(Q, k, seed):
    rnd = random.Random(seed)
    return [(rnd.choice(Q.elements), rnd.choice(Q.elements), rnd.choice(Q.elements)) for _ in range(k)]


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("route", ["tree", "total"])
def test_congruence_cocycle_identity(q, route):
    e = congruence_extension("SL", 2, F(q), route=route)
    for g, h, k in _random_triples(e.quotient, 60, q):
        assert not np.any(e.cocycle_residual(g, h, k))
    assert e.r == 3 * F(q).f


@pytest.mark.parametrize("fam,n,q", [("SL", 2, 2), ("SL", 2, 3), ("SL", 2, 4), ("SL", 2, 5), ("PGL", 2, 3),
                                     ("SL", 3, 2)])
def test_splitting_agrees_with_complement_search_and_routes(fam, n, q):
    tree = congruence_extension(fam, n, F(q), route="tree")
    total = congruence_extension(fam, n, F(q), route="total")
    split = is_coboundary(tree)
    assert is_coboundary(total) == split
    comp = find_complement(tree, budget=2 ** 22)
    assert (comp is not None) == split
    if comp is not None:
        assert len(comp) == tree.quotient.order


@pytest.mark.parametrize("q,split", [(2, False), (3, True), (4, False), (5, False)])
def test_sl2_congruence_splitting_values(q, split):
    # the q=2 value is a direct consequence of the order-2 lifts argument and
    # is confirmed by the subgroup oracle below
    assert is_coboundary(congruence_extension("SL", 2, F(q))) == split


def test_sl2_z4_has_no_complement_oracle():
    els, gens, mul, ident = oracles.sl_group_mod(2, 4)
    assert len(els) == 48
    subs = oracles.all_subgroups(els, mul, ident)
    sixes = [H for H in subs if len(H) == 6]
    assert sixes
    for H in sixes:
        assert len({tuple(c % 2 for c in x) for x in H}) < 6


@given(seed=st.integers(0, 10 ** 6))
@settings(max_examples=10)
def test_section_change_preserves_cocycle_and_class(seed):
    e = congruence_extension("SL", 2, F(3))
    rnd = random.Random(seed)
    kernel = [e.kexp([rnd.randrange(3) for _ in range(e.r)]) for _ in range(5)]
    section = {g: (e.emul(rnd.choice(kernel), s) if g != e.quotient.identity else s)
               for g, s in e.section.items()}
    e2 = e.with_section(section)
    for g, h, k in _random_triples(e.quotient, 20, seed):
        assert not np.any(e2.cocycle_residual(g, h, k))
    assert is_coboundary(e2) == is_coboundary(e)


def test_pushforward_by_whole_kernel_splits():
    e = congruence_extension("SL", 2, F(5))
    assert not is_coboundary(e)
    assert is_coboundary(e.pushforward(np.eye(e.r, dtype=np.int64)))


def test_kernel_module_is_adjoint():
    e = congruence_extension("SL", 2, F(5))
    M = e.module()
    G, A = adjoint("SL", "sl", 2, 5)
    assert M.dim == 3
    assert h1_dim(e.quotient, M) == h1_dim(G, A) == 1
