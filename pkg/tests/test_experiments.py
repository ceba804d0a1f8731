import random

import pytest
from hypothesis import given, settings, strategies as st

from chevdeform import ring as rg
from chevdeform.experiments import (EXPERIMENTS, boston_commutator_check, classify_residually_full,
                                    example_sl2_char2, run_experiment, tangent_dim_check, w2_rigidity_check)
from chevdeform.matgroup import GroupSpec, UnsupportedFamily, enumerate_group

import oracles


def dual_spec(q):
    return GroupSpec("SL", 2, rg.dual_numbers(rg.field_of_order(q)))


@pytest.fixture(scope="module")
def oracle_classes_f2():
    """Conjugacy classes of residually full subgroups of SL2(F2[eps]), found
    by listing every subgroup."""
    els, mul, ident, res = oracles.sl2_dual_numbers(2)
    inv = oracles.inverse_in(els, mul, ident)
    subs = oracles.all_subgroups(els, mul, ident)
    full = [H for H in subs if len({res(x) for x in H}) == 6]
    classes = oracles.conjugacy_classes_of_subgroups(full, els, mul, inv)
    return len(subs), len(full), sorted(len(c[0]) for c in classes)


def test_residually_full_classes_over_f2_match_subgroup_oracle(oracle_classes_f2):
    n_subs, n_full, orders = oracle_classes_f2
    assert (n_subs, n_full, orders) == (98, 15, [6, 6, 12, 24, 24, 48])
    C = classify_residually_full(dual_spec(2))
    assert sorted(c.order for c in C.classes) == orders
    assert all(C.checks.values()), C.checks


@pytest.mark.parametrize("q,count", [(3, 2), (5, 6), (7, 2)])
def test_residually_full_class_counts(q, count):
    # sl2 is irreducible for odd q, so the classes are the q^h complements
    # (h = dim H^1(SL2(F), sl2), which is 1 for q = 5 and 0 otherwise) plus
    # the whole group
    C = classify_residually_full(dual_spec(q))
    assert C.count == count
    assert all(C.checks.values())
    assert C.signature()[0] == (C.residual_order, 0)
    assert C.signature()[-1] == (C.residual_order * q ** 3, 3)


@settings(max_examples=6)
@given(seed=st.integers(0, 10 ** 6))
def test_classification_invariant_under_conjugation(seed):
    spec = dual_spec(3)
    G = enumerate_group(spec)
    a = random.Random(seed).choice(G.elements)
    base = classify_residually_full(spec, verify=False)
    moved = classify_residually_full(spec, conjugator=a, seed=seed % 5, verify=False)
    assert moved.signature() == base.signature()
    assert moved.lattice_dims == base.lattice_dims


def test_classification_needs_square_zero_ring():
    with pytest.raises(UnsupportedFamily):
        classify_residually_full(GroupSpec("SL", 2, rg.make_witt2(rg.field_of_order(3))))
    with pytest.raises(UnsupportedFamily):
        classify_residually_full(GroupSpec("SL", 2, rg.make_trunc_poly(rg.field_of_order(3), 1, 3)))


def test_sl2_char2_example():
    r = example_sl2_char2(d=2, q=2)
    assert r.passed, r.to_json()
    assert r.measured["index"] == 4


def test_tangent_dimension_checks():
    for q in (5, 7):
        r = tangent_dim_check("SL", q=q, d=1)
        assert r.passed, r.to_json()


def test_boston_commutator():
    r = boston_commutator_check(GroupSpec("SL", 2, rg.make_trunc_poly(rg.field_of_order(3), 1, 3)))
    assert r.passed, r.to_json()


@pytest.mark.parametrize("q", [2, 5])
def test_w2_rigidity(q):
    r = w2_rigidity_check(q=q)
    assert r.passed, r.to_json()


@pytest.mark.parametrize("name", sorted(EXPERIMENTS))
def test_registry_defaults_pass(name):
    out = run_experiment(name)
    assert len(out) == 1
    rec = out[0].to_json()
    assert rec["pass"], rec
    assert set(rec["expected"]) <= set(rec["measured"])
    assert set(rec["basis"]) <= set(rec["expected"])


def test_unknown_experiment():
    with pytest.raises(KeyError):
        run_experiment("nope")
