"""Exhaustive-search oracles for order, exponent, membership and quadratic
residuosity, plus a two-message distinguishing game.

These are desk-scale baselines: every answer comes from walking the group,
never from secret structure, so they double as independent checks on the
factorization-based code paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import InconsistentFactorizationError, InvalidArgumentError, TooLargeError
from .groups import ENUMERATION_CAP, GroupElement, SubgroupSpec, subgroup_residues, random_subgroup_element
from .numtheory import Rng, is_probable_prime, lcm_all
from .schemes import (
    Ciphertext,
    ElGamalPublicKey,
    MaskPublicKey,
    RsaMaskPublicKey,
    elgamal_encrypt,
    mask_encrypt,
    rsa_mask_encrypt,
)

ORDER_CAP = 2**20

Adversary = Callable[[object, GroupElement, GroupElement, Ciphertext], int]


def brute_order(g: GroupElement, cap: int = ORDER_CAP) -> int:
    """Least ``k >= 1`` with ``g**k == 1``, by repeated multiplication."""
    m, x = g.modulus, g.residue
    acc, k = x, 1
    while acc != 1:
        if k >= cap:
            raise TooLargeError(f"order of {g!r} exceeds {cap}")
        acc = acc * x % m
        k += 1
    return k


def brute_exponent(H: SubgroupSpec, cap: int = ENUMERATION_CAP) -> int:
    """lcm of the brute-force orders of every element of ``H``.

    Walking ``x, x**2, ...`` up to the order of ``x`` also yields the order
    of each power, ``k / gcd(j, k)``; those are recorded so no element is
    walked twice.
    """
    m = H.modulus
    elements = subgroup_residues(m, H.residues, cap)
    orders: dict[int, int] = {}
    for x in elements:
        if x in orders:
            continue
        walk = [x]
        while walk[-1] != 1:
            walk.append(walk[-1] * x % m)
            if len(walk) > cap:
                raise TooLargeError(f"order of {x} exceeds {cap}")
        k = len(walk)
        for j, y in enumerate(walk, start=1):
            orders.setdefault(y, k // math.gcd(j, k))
    return lcm_all(orders.values())


def brute_membership(f: GroupElement, H: SubgroupSpec, cap: int = ENUMERATION_CAP) -> bool:
    if f.modulus != H.modulus:
        return False
    return f.residue in subgroup_residues(H.modulus, H.residues, cap)


def qr_by_euler(f: GroupElement, p: int, q: int) -> bool:
    """Reference QR test from the factors: Euler's criterion mod p and mod q."""
    if p == q or p * q != f.modulus or not (is_probable_prime(p) and is_probable_prime(q)):
        raise InconsistentFactorizationError(f"{p}*{q} is not a factorization of {f.modulus} into distinct primes")
    return pow(f.residue, (p - 1) // 2, p) == 1 and pow(f.residue, (q - 1) // 2, q) == 1


def qr_by_order(f: GroupElement, order_oracle: Callable[[GroupElement], int] = brute_order) -> bool:
    """Decide quadratic residuosity from the element order alone.

    Valid for n = p*q with p, q = 3 (mod 4): the squares are exactly the
    elements of odd order.
    """
    return order_oracle(f) % 2 == 1


def brute_square_search(f: GroupElement) -> bool:
    """``True`` iff some ``w`` has ``w*w = f (mod n)``; O(n)."""
    n = f.modulus
    return any(w * w % n == f.residue for w in range(1, n))


# distinguishing game


@dataclass(frozen=True)
class IndGameResult:
    trials: int
    adversary_wins: int

    def __post_init__(self):
        if not 0 <= self.adversary_wins <= self.trials:
            raise InvalidArgumentError("wins must lie in [0, trials]")

    @property
    def advantage(self) -> Fraction:
        return abs(Fraction(self.adversary_wins, self.trials) - Fraction(1, 2))

    def __str__(self) -> str:
        return (
            f"trials = {self.trials}\nwins = {self.adversary_wins}\n"
            f"advantage = {float(self.advantage):.4f}"
        )


def message_space(pub) -> SubgroupSpec:
    if isinstance(pub, ElGamalPublicKey):
        return pub.message_space
    if isinstance(pub, (MaskPublicKey, RsaMaskPublicKey)):
        return pub.U
    raise InvalidArgumentError(f"no message space for {type(pub).__name__}")


def _default_encrypt(pub) -> Callable[[object, GroupElement, Rng], Ciphertext]:
    if isinstance(pub, ElGamalPublicKey):
        return elgamal_encrypt
    if isinstance(pub, RsaMaskPublicKey):
        return rsa_mask_encrypt
    if isinstance(pub, MaskPublicKey):
        return mask_encrypt
    raise InvalidArgumentError(f"cannot encrypt under {type(pub).__name__}")


def mask_subgroup(pub) -> SubgroupSpec:
    """The public subgroup a ciphertext's mask lives in, for the given scheme."""
    if isinstance(pub, ElGamalPublicKey):
        return SubgroupSpec(pub.p, (pub.y,))
    if isinstance(pub, RsaMaskPublicKey):
        return SubgroupSpec(pub.n, tuple(h**pub.e for h in pub.H.generators))
    if isinstance(pub, MaskPublicKey):
        return pub.H
    raise InvalidArgumentError(f"no mask subgroup for {type(pub).__name__}")


def brute_membership_adversary(cap: int = ENUMERATION_CAP) -> Adversary:
    """Guesses ``j`` iff ``u_j**-1 * c`` lies in the mask subgroup.

    Wins every trial whenever mask and message subgroups meet only in 1,
    i.e. whenever membership is decidable the scheme is distinguishable.
    """

    def adversary(pub, u0: GroupElement, u1: GroupElement, c: Ciphertext) -> int:
        H = mask_subgroup(pub)
        m0 = u0**pub.e if isinstance(pub, RsaMaskPublicKey) else u0
        return 0 if brute_membership(m0.inverse() * c.value, H, cap) else 1

    return adversary


def random_adversary(rng: Rng) -> Adversary:
    def adversary(pub, u0, u1, c) -> int:
        return rng.randrange(2)

    return adversary


def constant_adversary(bit: int) -> Adversary:
    def adversary(pub, u0, u1, c) -> int:
        return bit

    return adversary


def ind_game(
    pub,
    adversary: Adversary,
    trials: int,
    rng: Rng,
    *,
    encrypt: Callable | None = None,
    cap: int = ENUMERATION_CAP,
) -> IndGameResult:
    """Run ``trials`` rounds of: draw distinct ``u0, u1`` from the message
    space and a hidden bit ``i``, encrypt ``u_i``, ask the adversary for ``i``.

    Messages are drawn uniformly from the enumerated message space when it
    fits under ``cap``, otherwise by random subgroup sampling.
    """
    if trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    encrypt = encrypt or _default_encrypt(pub)
    U = message_space(pub)
    try:
        pool = sorted(subgroup_residues(U.modulus, U.residues, cap))
    except TooLargeError:
        pool = None
    if pool is not None and len(pool) < 2:
        raise InvalidArgumentError("message space has fewer than two elements")

    def draw_pair() -> tuple[GroupElement, GroupElement]:
        if pool is not None:
            a, b = rng.sample(pool, 2)
            return GroupElement(a, U.modulus), GroupElement(b, U.modulus)
        a = random_subgroup_element(U, rng)
        while (b := random_subgroup_element(U, rng)) == a:
            pass
        return a, b

    wins = 0
    for _ in range(trials):
        u0, u1 = draw_pair()
        i = rng.randrange(2)
        c = encrypt(pub, (u0, u1)[i], rng)
        wins += adversary(pub, u0, u1, c) == i
    return IndGameResult(trials, wins)
