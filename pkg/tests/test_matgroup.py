import itertools
import random

import pytest
from hypothesis import given, strategies as st

from chevdeform import ring as rg
from chevdeform.matgroup import (BudgetExceeded, GroupSpec, LevelLog, NotResiduallyFull, OrderNotCoprime,
                                 UnsupportedFamily, are_conjugate, commutator_subgroup, enumerate_group,
                                 exp_level, group_spec_from_json, h_c, h_perfection, is_perfect,
                                 lift_prime_order_subgroup, predicted_order, reduction_hom, residue_map)

import oracles


def field(q):
    return rg.field_ring(rg.field_of_order(q))


def dual(q):
    return rg.dual_numbers(rg.field_of_order(q))


def trunc(q, d, k):
    return rg.make_trunc_poly(rg.field_of_order(q), d, k)


def witt2(q):
    return rg.make_witt2(rg.field_of_order(q))


# ---------------------------------------------------------------------------
# enumeration

@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (2, 5), (2, 7), (3, 2), (3, 3), (4, 2)])
def test_sl_over_prime_fields_equals_oracle_closure(n, p):
    G = enumerate_group(GroupSpec("SL", n, field(p)))
    els, *_ = oracles.sl_group_mod(n, p)
    assert set(G.elements) == els
    assert G.order == oracles.sl_order_formula(n, p)


@pytest.mark.parametrize("p", [2, 3])
def test_sl2_over_witt2_equals_oracle_over_integers_mod_p_squared(p):
    W = rg.get_ring(witt2(p))
    to_int = {W.from_int(k): k for k in range(p * p)}
    G = enumerate_group(GroupSpec("SL", 2, witt2(p)))
    els, *_ = oracles.sl_group_mod(2, p * p)
    assert {tuple(to_int[c] for c in x) for x in G.elements} == els


@pytest.mark.parametrize("q", [4, 8, 9])
def test_sl2_over_prime_power_fields_matches_oracle_order_and_perfectness(q):
    G = enumerate_group(GroupSpec("SL", 2, field(q)))
    O = oracles.GF(q)
    els, mul, ident = oracles.sl2_field(O)
    assert G.order == len(els) == oracles.sl_order_formula(2, q)
    # commutators of a few elements with everything already generate the
    # whole group, which certifies perfectness from below
    inv = oracles.inverse_in(els, mul, ident)
    comms = {mul(mul(a, b), mul(inv[a], inv[b])) for a in els[:40] for b in els}
    assert len(oracles.closure(list(comms), mul, ident)) == len(els)
    assert is_perfect(G)


@pytest.mark.parametrize("spec,order", [
    (GroupSpec("SL", 2, field(3)), 24),
    (GroupSpec("SL", 2, dual(2)), 48),
    (GroupSpec("SU", 3, field(2)), 216),
    (GroupSpec("Sp", 4, field(2)), 720),
    (GroupSpec("GL", 2, field(3)), 48),
    (GroupSpec("PGL", 2, field(5)), 120),
    (GroupSpec("PGL", 2, dual(2)), 48),
    (GroupSpec("SL", 2, witt2(3)), 24 * 27),
    (GroupSpec("SL", 2, trunc(2, 2, 3)), 196608),
])
def test_enumerated_orders(spec, order):
    G = enumerate_group(spec)
    assert G.order == order == predicted_order(spec)
    assert G.identity in G
    assert len(set(G.elements)) == G.order


@pytest.mark.parametrize("spec", [GroupSpec("SL", 2, dual(3)), GroupSpec("PGL", 2, field(4)),
                                  GroupSpec("GL", 2, witt2(2)), GroupSpec("Sp", 4, field(2))])
def test_closed_under_products_and_inverses(spec):
    G = enumerate_group(spec)
    rnd = random.Random(0)
    for _ in range(300):
        a, b = rnd.choice(G.elements), rnd.choice(G.elements)
        assert G.mul(a, b) in G
        assert G.inv(a) in G
        assert G.mul(a, G.inv(a)) == G.identity
    assert set(G.subgroup(G.generators).elements) == set(G.elements)


def test_enumeration_errors():
    with pytest.raises(BudgetExceeded):
        enumerate_group(GroupSpec("SL", 3, field(5)), budget=1000)
    with pytest.raises(UnsupportedFamily):
        enumerate_group(GroupSpec("SU", 3, field(3)))
    with pytest.raises(UnsupportedFamily):
        enumerate_group(GroupSpec("Sp", 3, field(2)))


def test_group_json_round_trip():
    spec = GroupSpec("SL", 2, dual(3))
    assert group_spec_from_json(spec.to_json()) == spec
    G = enumerate_group(spec)
    data = G.to_json()
    assert group_spec_from_json(data["spec"]) == spec
    assert "elements" not in data
    assert G.subgroup([tuple(g) for g in data["generators"]]).order == G.order


# ---------------------------------------------------------------------------
# reductions and kernels

@pytest.mark.parametrize("spec,level,kernel", [
    (GroupSpec("SL", 2, dual(2)), 1, 8),
    (GroupSpec("SL", 2, witt2(3)), 1, 27),
    (GroupSpec("SL", 2, dual(3)), 2, 1),
    (GroupSpec("SL", 2, trunc(2, 1, 3)), 2, 8),
    (GroupSpec("SL", 2, trunc(2, 1, 3)), 1, 64),
    (GroupSpec("PGL", 2, dual(3)), 1, 27),
])
def test_reduction_kernels(spec, level, kernel):
    h = reduction_hom(spec, level)
    G = h.source
    assert h.kernel().order == kernel
    assert h.image().order * h.kernel().order == G.order
    assert h.image().order == h.target.order
    for a, b in itertools.product(G.generators, repeat=2):
        assert h(G.mul(a, b)) == h.target.mul(h(a), h(b))


def test_reduction_level_out_of_range():
    with pytest.raises(rg.LevelOutOfRange):
        reduction_hom(GroupSpec("SL", 2, dual(2)), 3)


# ---------------------------------------------------------------------------
# perfectness

@pytest.mark.parametrize("spec,perfect", [
    (GroupSpec("SL", 2, field(4)), True),
    (GroupSpec("SL", 2, field(3)), False),
    (GroupSpec("SU", 3, field(2)), False),
    (GroupSpec("SL", 2, witt2(5)), True),
])
def test_perfectness_examples(spec, perfect):
    assert is_perfect(enumerate_group(spec)) is perfect


def test_commutator_subgroup_matches_oracle():
    G = enumerate_group(GroupSpec("SL", 2, field(3)))
    els, _, mul, ident = oracles.sl_group_mod(2, 3)
    assert commutator_subgroup(G.whole()).order == oracles.commutator_subgroup_order(els, mul, ident) == 8


# ---------------------------------------------------------------------------
# H^c and H-perfection

def _residually_full(G, HF, extra_kernel, seed):
    """Subgroup generated by lifts of the residual generators twisted by
    random kernel elements, together with ``extra_kernel`` kernel elements."""
    rnd = random.Random(seed)
    res = residue_map(G)
    kernel = [x for x in G.elements if res(x) == G.identity]
    gens = []
    for g in HF.generators:
        lift = next(x for x in G.elements if res(x) == g)
        gens.append(G.mul(rnd.choice(kernel), lift))
    gens += rnd.sample(kernel, extra_kernel)
    return G.subgroup(gens)


def test_hc_of_full_group_over_f7_dual_numbers_is_everything():
    G = enumerate_group(GroupSpec("SL", 2, dual(7)))
    GF = enumerate_group(GroupSpec("SL", 2, field(7)))
    assert h_c(G.whole(), GF.whole()).order == G.order


def test_hc_of_central_extension_is_the_lifted_residual_group():
    G = enumerate_group(GroupSpec("SL", 2, dual(2)))
    GF = enumerate_group(GroupSpec("SL", 2, field(2)))
    res = residue_map(G)
    eps = rg.get_ring(G.spec.ring).level_basis(1)[0]
    centre = (1, eps, eps, 1)  # I + eps * [[1,1],[1,1]] is not central; use I + eps * I
    centre = (G.R.add(1, eps), 0, 0, G.R.add(1, eps))
    assert all(G.mul(centre, x) == G.mul(x, centre) for x in G.generators)
    lifts = [next(x for x in G.elements if res(x) == g and all(c in (0, 1) for c in x)) for g in GF.generators]
    H = G.subgroup(lifts + [centre])
    assert H.order == 12
    Hc = h_c(H, GF.whole())
    assert Hc.order == 6
    assert h_perfection(H, GF.whole()).order == 6


def test_hc_requires_residually_full():
    G = enumerate_group(GroupSpec("SL", 2, dual(3)))
    GF = enumerate_group(GroupSpec("SL", 2, field(3)))
    upper = [x for x in G.elements if x[2] % G.R.q == 0]
    with pytest.raises(NotResiduallyFull):
        h_c(G.subgroup(upper[:20]), GF.whole())


# residual groups with abelianization prime to p, where H^c is well defined:
# the cyclic group of order 3 in SL_2(F_2) and the quaternion group in SL_2(F_3)
RESIDUALS = {2: [(1, 1, 1, 0)], 3: [(0, 1, 2, 0), (1, 1, 1, 2)]}


@pytest.mark.parametrize("q", [2, 3])
@given(seed=st.integers(0, 10 ** 6), extra=st.integers(0, 2))
def test_hc_idempotent_after_perfection_and_compatible_with_reduction(q, seed, extra):
    G = enumerate_group(GroupSpec("SL", 2, trunc(q, 1, 3)))
    GF = enumerate_group(GroupSpec("SL", 2, field(q)))
    HF = GF.subgroup(RESIDUALS[q])
    assert HF.order == {2: 3, 3: 8}[q]
    H = _residually_full(G, HF, extra, seed)
    P = h_perfection(H, HF)
    assert h_c(P, HF).order == P.order
    # reduction modulo m^2 commutes with H -> H^c
    red = reduction_hom(G, 2)
    Hc = h_c(H, HF)
    assert set(red.image(Hc).elements) == set(h_c(red.image(H), HF).elements)


# ---------------------------------------------------------------------------
# prime-to-p lifts and conjugacy

def test_lift_of_diagonal_torus():
    GF = enumerate_group(GroupSpec("SL", 2, field(5)))
    torus = GF.subgroup([(2, 0, 0, 3)])
    assert torus.order == 4
    L = lift_prime_order_subgroup(torus, dual(5))
    res = residue_map(L.ambient)
    assert L.order == 4
    assert sorted(res(x) for x in L.elements) == sorted(torus.elements)
    assert set(L.elements) == set(torus.elements)


def test_lift_errors_and_trivial_case():
    GF = enumerate_group(GroupSpec("SL", 2, field(5)))
    assert lift_prime_order_subgroup(GF.subgroup([GF.identity]), dual(5)).order == 1
    with pytest.raises(OrderNotCoprime):
        lift_prime_order_subgroup(GF.subgroup([(1, 1, 0, 1)]), dual(5))


def test_coboundary_twist_is_conjugate():
    G = enumerate_group(GroupSpec("SL", 2, dual(7)))
    GF = enumerate_group(GroupSpec("SL", 2, field(7)))
    base = G.subgroup(list(GF.generators))
    eps = G.R.level_basis(1)[0]
    u = exp_level(G, (0, 1, 0, 0), eps)
    twisted = G.subgroup([G.conj(u, g) for g in GF.generators])
    assert set(twisted.elements) != set(base.elements)
    g = are_conjugate(base, twisted, G)
    assert g is not None
    assert {G.conj(g, x) for x in base.elements} == set(twisted.elements)
    assert are_conjugate(base, base, G) == G.identity


def test_non_isomorphic_subgroups_are_not_conjugate():
    G = enumerate_group(GroupSpec("SL", 2, dual(2)))
    res = residue_map(G)
    kernel = [x for x in G.elements if res(x) == G.identity]
    cyclic6 = None
    for x in G.elements:
        if G.element_order(x) == 6:
            cyclic6 = G.subgroup([x])
            break
    s3 = G.subgroup([(0, 1, 1, 0), (1, 1, 0, 1)])
    assert s3.order == 6 and cyclic6 is not None
    assert are_conjugate(s3, cyclic6, G) is None
    assert len(kernel) == 8


# ---------------------------------------------------------------------------
# level exponential

def test_transvection_over_dual_numbers():
    G = enumerate_group(GroupSpec("SL", 2, dual(2)))
    eps = G.R.level_basis(1)[0]
    x = exp_level(G, (0, 1, 0, 0), eps)
    assert x == (1, eps, 0, 1)
    assert G.mul(x, x) == G.identity
    assert exp_level(G, (0, 0, 0, 0), eps) == G.identity


def test_level_exponential_is_additive_modulo_next_level():
    G = enumerate_group(GroupSpec("SL", 2, trunc(3, 1, 3)))
    x = G.R.level_basis(1)[0]
    L = LevelLog(G, 1)
    sl2 = [(a, b, c, (-a) % 3) for a, b, c in itertools.product(range(3), repeat=3)]
    for X, Y in itertools.product(sl2, repeat=2):
        S = tuple((u + v) % 3 for u, v in zip(X, Y))
        lhs = G.mul(exp_level(G, X, x), exp_level(G, Y, x))
        assert L.log(lhs) == L.log(exp_level(G, S, x))


def test_exp_level_rejects_units():
    from chevdeform.matgroup import NotInIdealPower
    G = enumerate_group(GroupSpec("SL", 2, dual(3)))
    with pytest.raises(NotInIdealPower):
        exp_level(G, (0, 1, 0, 0), 1)
