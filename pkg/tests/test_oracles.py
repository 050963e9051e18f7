from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maskcrypt.errors import InconsistentFactorizationError, InvalidArgumentError, TooLargeError
from maskcrypt.groups import GroupElement, SubgroupSpec
from maskcrypt.numtheory import Rng
from maskcrypt.oracles import (
    IndGameResult,
    brute_exponent,
    brute_membership,
    brute_membership_adversary,
    brute_order,
    brute_square_search,
    constant_adversary,
    ind_game,
    qr_by_euler,
    qr_by_order,
    random_adversary,
)
from maskcrypt.paramgen import build_field_mask_params, build_ring_with_orders
from maskcrypt.schemes import mask_keygen, rsa_mask_keygen

from conftest import naive_gcd, naive_is_prime


def test_order_examples():
    assert brute_order(GroupElement(2, 31)) == 5
    assert brute_order(GroupElement(3, 31)) == 30
    assert brute_order(GroupElement(1, 31)) == 1
    with pytest.raises(TooLargeError):
        brute_order(GroupElement(3, 31), cap=10)


def test_exponent_examples():
    assert brute_exponent(SubgroupSpec.of(31, [5, 2])) == 15
    assert brute_exponent(SubgroupSpec.of(77, [23])) == 3
    assert brute_exponent(SubgroupSpec.of(31, [1])) == 1


def test_membership_examples():
    H = SubgroupSpec.of(31, [5])
    assert brute_membership(GroupElement(25, 31), H)
    assert not brute_membership(GroupElement(2, 31), H)
    assert not brute_membership(GroupElement(5, 77), H)


def test_qr_examples():
    # mod 21 the squares are {1, 4, 16}
    squares = {w * w % 21 for w in range(21) if naive_gcd(w, 21) == 1}
    assert squares == {1, 4, 16}
    for f in (x for x in range(1, 21) if naive_gcd(x, 21) == 1):
        el = GroupElement(f, 21)
        assert qr_by_euler(el, 3, 7) == qr_by_order(el) == (f in squares)
    with pytest.raises(InconsistentFactorizationError):
        qr_by_euler(GroupElement(4, 21), 3, 5)
    with pytest.raises(InconsistentFactorizationError):
        qr_by_euler(GroupElement(4, 9), 3, 3)


def test_euler_matches_square_search_below_4096():
    primes = [p for p in range(3, 2048) if naive_is_prime(p)]
    checked = 0
    for i, p in enumerate(primes):
        for q in primes[i + 1 :]:
            n = p * q
            if n >= 2**12:
                break
            squares = {w * w % n for w in range(1, n) if naive_gcd(w, n) == 1}
            for f in range(1, n):
                if naive_gcd(f, n) != 1:
                    continue
                assert qr_by_euler(GroupElement(f, n), p, q) == (f in squares)
                checked += 1
    assert checked > 0


def test_square_search_spot_checks():
    assert brute_square_search(GroupElement(2, 31))  # 8^2 = 64 = 2
    assert not brute_square_search(GroupElement(3, 31))


def test_game_result_invariants():
    r = IndGameResult(10, 7)
    assert r.advantage == Fraction(1, 5)
    assert "advantage = 0.2000" in str(r)
    with pytest.raises(InvalidArgumentError):
        IndGameResult(10, 11)


def test_game_rejects_zero_trials(elgamal31):
    with pytest.raises(InvalidArgumentError):
        ind_game(elgamal31.public, constant_adversary(0), 0, Rng(0))


def test_brute_adversary_wins_every_trial(elgamal31, f31_params, z77_params):
    for pub in (elgamal31.public, mask_keygen(f31_params).public, mask_keygen(z77_params).public,
                rsa_mask_keygen(z77_params, 3).public):
        res = ind_game(pub, brute_membership_adversary(), 300, Rng(1))
        assert res.adversary_wins == 300 and res.advantage == Fraction(1, 2)


def test_brute_adversary_on_larger_field():
    _, params = build_field_mask_params([7, 9], [5, 11], 40, Rng(2))
    res = ind_game(mask_keygen(params).public, brute_membership_adversary(), 200, Rng(3))
    assert res.adversary_wins == 200


def test_brute_adversary_on_rsa_ring():
    _, params = build_ring_with_orders([7], [5, 3], 40, Rng(4))
    res = ind_game(rsa_mask_keygen(params, 65537).public, brute_membership_adversary(), 200, Rng(5))
    assert res.adversary_wins == 200


def test_constant_adversary_is_near_half(elgamal31):
    # wins exactly when the hidden bit is 0; 4 sigma for 4000 trials is about 0.032
    res = ind_game(elgamal31.public, constant_adversary(0), 4000, Rng(6))
    assert res.advantage <= Fraction(32, 1000)


@given(st.integers(0, 2**64 - 1))
@settings(max_examples=5, deadline=None)
def test_random_adversary_within_four_sigma(seed):
    _, params = build_field_mask_params([3], [5], 5, Rng(0))
    res = ind_game(mask_keygen(params).public, random_adversary(Rng(seed)), 2000, Rng(seed ^ 1))
    assert res.advantage <= Fraction(45, 1000)  # 4 / (2 * sqrt(2000))
