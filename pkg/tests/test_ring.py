import itertools

import pytest
from hypothesis import given, strategies as st

from chevdeform import ring as rg

import oracles


FIELD_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_witt2_is_integers_mod_p_squared(p):
    R = rg.get_ring(rg.make_witt2(rg.make_field(p)))
    image = [R.from_int(n) for n in range(p * p)]
    assert sorted(image) == list(range(p * p))
    for a, b in itertools.product(range(p * p), repeat=2):
        assert R.add(image[a], image[b]) == image[(a + b) % (p * p)]
        assert R.mul(image[a], image[b]) == image[(a * b) % (p * p)]


@pytest.mark.parametrize("q", FIELD_ORDERS)
def test_field_matches_polynomial_oracle_up_to_isomorphism(q):
    R = rg.get_ring(rg.field_ring(rg.field_of_order(q)))
    O = oracles.GF(q)
    # the multiplicative groups are cyclic of order q - 1 in both models
    for M, mul in ((R, R.mul), (O, O.mul)):
        orders = []
        for a in range(1, q):
            k, x = 1, a
            while x != 1:
                x, k = mul(x, a), k + 1
            orders.append(k)
        assert max(orders) == q - 1
    # an isomorphism: send a generator to a root of the same minimal polynomial
    gen = next(a for a in range(1, q) if _mult_order(R, a) == q - 1)
    pows = [1]
    for _ in range(q - 2):
        pows.append(R.mul(pows[-1], gen))
    for ogen in range(1, q):
        if _mult_order(O, ogen) != q - 1:
            continue
        opows = [1]
        for _ in range(q - 2):
            opows.append(O.mul(opows[-1], ogen))
        phi = {0: 0, **{pows[i]: opows[i] for i in range(q - 1)}}
        if all(phi[R.add(a, b)] == O.add(phi[a], phi[b]) for a in range(q) for b in range(q)):
            break
    else:
        pytest.fail("no additive isomorphism found among the cyclic generators")
    assert all(phi[R.mul(a, b)] == O.mul(phi[a], phi[b]) for a in range(q) for b in range(q))


def _mult_order(M, a):
    k, x = 1, a
    while x != 1:
        x, k = M.mul(x, a), k + 1
    return k


RINGS = [rg.make_witt2(rg.make_field(3)), rg.dual_numbers(rg.make_field(5)),
         rg.make_trunc_poly(rg.make_field(2), 2, 3), rg.make_trunc_poly(rg.field_of_order(4), 1, 3),
         rg.make_witt2(rg.field_of_order(4)), rg.make_trunc_poly(rg.make_field(3), 2, 3, [(1, 1)])]


@st.composite
def ring_and_elements(draw, k=3):
    desc = draw(st.sampled_from(RINGS))
    R = rg.get_ring(desc)
    return desc, [draw(st.integers(0, R.size - 1)) for _ in range(k)]


@given(ring_and_elements())
def test_ring_axioms(data):
    desc, (a, b, c) = data
    R = rg.get_ring(desc)
    assert R.add(a, b) == R.add(b, a)
    assert R.mul(a, b) == R.mul(b, a)
    assert R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c))
    assert R.add(R.add(a, b), c) == R.add(a, R.add(b, c))
    assert R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c))
    assert R.add(a, R.neg(a)) == 0
    assert R.mul(a, 1) == a


@given(ring_and_elements(1))
def test_units_are_exactly_residue_nonzero(data):
    desc, (a,) = data
    R = rg.get_ring(desc)
    if a % R.q:
        assert R.mul(a, R.inv(a)) == 1
    else:
        with pytest.raises(ZeroDivisionError):
            R.inv(a)


@pytest.mark.parametrize("desc", RINGS)
def test_maximal_ideal_is_nilpotent_of_the_reported_degree(desc):
    R = rg.get_ring(desc)
    m = [a for a in range(R.size) if a % R.q == 0]
    # m^nil = 0 and m^(nil-1) != 0
    power = set(m)
    for _ in range(R.nil - 1):
        power = {R.mul(x, y) for x in power for y in m}
    assert power == {0}
    assert rg.nilpotency_degree(desc) == R.nil
    if R.nil > 1:
        top = [R.level_of(x) for x in range(R.size)]
        assert max(t for t in top if t < R.nil) == R.nil - 1


@pytest.mark.parametrize("desc", RINGS)
def test_reduction_is_a_ring_homomorphism(desc):
    R = rg.get_ring(desc)
    for i in range(1, R.nil + 1):
        Q = rg.get_ring(R.quotient_desc(i))
        for a, b in itertools.islice(itertools.product(range(R.size), repeat=2), 0, 4000, 7):
            assert R.reduce(R.mul(a, b), i) == Q.mul(R.reduce(a, i), R.reduce(b, i))
            assert R.reduce(R.add(a, b), i) == Q.add(R.reduce(a, i), R.reduce(b, i))


@pytest.mark.parametrize("desc", RINGS)
def test_json_round_trip(desc):
    assert rg.ring_from_json(desc.to_json()) == desc
    assert rg.ring_from_json(desc.dumps()) == desc


def test_parse_ring_names():
    assert rg.parse_ring("witt2:q=5") == rg.make_witt2(rg.make_field(5))
    assert rg.parse_ring("dual:q=7") == rg.dual_numbers(rg.make_field(7))
    assert rg.parse_ring("q=4") == rg.field_ring(rg.field_of_order(4))
    assert rg.parse_ring("trunc:q=2,d=2,k=3") == rg.make_trunc_poly(rg.make_field(2), 2, 3)
    with pytest.raises(rg.RingError):
        rg.parse_ring("banana:q=3")


def test_errors():
    with pytest.raises(rg.NonPrime):
        rg.field_of_order(6)
    with pytest.raises(rg.NonPrime):
        rg.make_field(9)
    with pytest.raises(rg.InvalidMonomial):
        rg.make_trunc_poly(rg.make_field(2), 1, 1)
    with pytest.raises(rg.LevelOutOfRange):
        rg.ideal_power_basis(rg.dual_numbers(rg.make_field(3)), 5)


def test_element_helpers():
    D = rg.dual_numbers(rg.make_field(5))
    eps = rg.element(D, [0, 1])
    assert (eps * eps).code == 0
    u = rg.element(D, [2, 3])
    assert (u * u.inverse()).code == 1
    assert rg.residue(u).code == 2
    assert len(rg.ideal_power_basis(D, 1)) == 1
