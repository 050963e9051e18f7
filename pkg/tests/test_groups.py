import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maskcrypt.errors import (
    InconsistentFactorizationError,
    InvalidElementError,
    InvalidSubgroupError,
    OrderUnavailableError,
    TooLargeError,
)
from maskcrypt.groups import (
    GroupElement,
    SubgroupSpec,
    element,
    element_order,
    enumerate_subgroup,
    find_element_of_order,
    has_exact_order,
    random_subgroup_element,
    smallest_generator,
    subgroup_exponent,
)
from maskcrypt.numtheory import Factorization, Rng, factorize

from conftest import naive_closure, naive_gcd, naive_is_prime, naive_order, naive_phi

F30 = Factorization.of([2, 3, 5])


def test_element_validation():
    assert int(element(-1, 31)) == 30
    with pytest.raises(InvalidElementError):
        GroupElement(0, 31)
    with pytest.raises(InvalidElementError):
        GroupElement(7, 77)
    with pytest.raises(InvalidElementError):
        GroupElement(31, 31)


def test_element_arithmetic():
    a, b = GroupElement(5, 31), GroupElement(2, 31)
    assert int(a * b) == 10
    assert int(a**3) == 1
    assert int(b**-1) == 16
    assert (b * b.inverse()).is_one()
    with pytest.raises(InvalidElementError):
        a * GroupElement(5, 77)
    assert GroupElement(1, 31).to_bytes() == b"\x01"
    assert GroupElement(2, 2**16 + 1).to_bytes() == b"\x00\x00\x02"


def test_orders_mod_31():
    by_order = {}
    for x in range(1, 31):
        by_order.setdefault(naive_order(x, 31), []).append(x)
    assert by_order[3] == [5, 25]
    assert by_order[5] == [2, 4, 8, 16]
    assert by_order[30] == [3, 11, 12, 13, 17, 21, 22, 24]
    for order, members in by_order.items():
        for x in members:
            assert element_order(GroupElement(x, 31), F30) == order
            assert has_exact_order(GroupElement(x, 31), order, factorize(order))


def test_orders_mod_77():
    f60 = Factorization.of([2, 2, 3, 5])  # p-1 times q-1 covers every order in Z_77^*
    assert element_order(GroupElement(4, 77), f60) == naive_order(4, 77) == 15
    assert element_order(GroupElement(2, 77), f60) == naive_order(2, 77) == 30


def test_element_order_rejects_wrong_factorization():
    with pytest.raises(InconsistentFactorizationError):
        element_order(GroupElement(3, 31), Factorization.of([3, 5]))


@given(st.sampled_from([p for p in range(3, 3000) if naive_is_prime(p)]), st.data())
@settings(max_examples=100)
def test_element_order_matches_naive(p, data):
    x = data.draw(st.integers(1, p - 1))
    assert element_order(GroupElement(x, p), factorize(p - 1)) == naive_order(x, p)


def test_subgroup_examples():
    H = SubgroupSpec.of(31, [5], [3])
    assert sorted(int(x) for x in enumerate_subgroup(H)) == [1, 5, 25]
    assert sorted(int(x) for x in enumerate_subgroup(SubgroupSpec.of(77, [23]))) == sorted(naive_closure([23], 77)) == [1, 23, 67]
    assert sorted(int(x) for x in enumerate_subgroup(SubgroupSpec.of(77, [36]))) == sorted(naive_closure([36], 77)) == [1, 15, 36, 64, 71]
    assert subgroup_exponent(SubgroupSpec.of(31, [5, 2]), F30) == 15


def test_subgroup_spec_validation():
    with pytest.raises(InvalidSubgroupError):
        SubgroupSpec(31, ())
    with pytest.raises(InvalidSubgroupError):
        SubgroupSpec(31, (GroupElement(5, 31), GroupElement(5, 77)))
    with pytest.raises(InvalidSubgroupError):
        SubgroupSpec.of(31, [5], [6])  # 5 has order 3, not 6
    with pytest.raises(InvalidSubgroupError):
        SubgroupSpec(31, (GroupElement(5, 31),), secret_exponent=5)
    H = SubgroupSpec.of(31, [5, 2], [3, 5])
    assert H.secret_exponent == 15
    assert H.public().secret_orders is None and H.public().secret_exponent is None
    assert H.public().residues == (5, 2)


def test_find_element_of_order():
    rng = Rng(11)
    for order in (1, 2, 3, 5, 6, 10, 15, 30):
        g = find_element_of_order(order, 31, factorize(order), rng)
        assert naive_order(int(g), 31) == order
    with pytest.raises(OrderUnavailableError):
        find_element_of_order(7, 31, factorize(7), rng)


def test_smallest_generator():
    assert int(smallest_generator(31, F30)) == 3
    assert int(smallest_generator(7, factorize(6))) == 3
    for p in [q for q in range(3, 500) if naive_is_prime(q)]:
        g = int(smallest_generator(p, factorize(p - 1)))
        assert naive_order(g, p) == p - 1
        assert all(naive_order(x, p) != p - 1 for x in range(2, g))


@given(st.integers(3, 3000), st.data())
@settings(max_examples=100)
def test_closure_matches_naive(m, data):
    units = [x for x in range(1, m) if naive_gcd(x, m) == 1]
    gens = data.draw(st.lists(st.sampled_from(units), min_size=1, max_size=3))
    H = SubgroupSpec.of(m, gens)
    assert {int(x) for x in enumerate_subgroup(H)} == naive_closure(gens, m)


def test_enumeration_cap():
    H = SubgroupSpec.of(1009, [11])  # primitive root, order 1008
    assert len(enumerate_subgroup(H)) == naive_phi(1009) == 1008
    with pytest.raises(TooLargeError):
        enumerate_subgroup(H, cap=100)


def test_random_subgroup_element_stays_inside():
    H = SubgroupSpec.of(77, [36])
    members = naive_closure([36], 77)
    rng = Rng(4)
    drawn = {int(random_subgroup_element(H, rng)) for _ in range(200)}
    assert drawn == members
