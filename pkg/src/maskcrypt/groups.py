"""Multiplicative groups of residues: elements, subgroups, orders."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace

from .errors import (
    InconsistentFactorizationError,
    InvalidElementError,
    InvalidSubgroupError,
    OrderUnavailableError,
    SearchFailure,
    TooLargeError,
)
from .numtheory import Factorization, Rng, factorize, lcm_all, mod_inv

ENUMERATION_CAP = 2**20
FIND_ORDER_ATTEMPTS = 256


@dataclass(frozen=True, order=True)
class GroupElement:
    """A unit ``residue`` of Z_modulus, with ``1 <= residue < modulus``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidElementError(f"modulus must be >= 2, got {self.modulus}")
        if not 1 <= self.residue < self.modulus:
            raise InvalidElementError(f"residue {self.residue} outside [1, {self.modulus - 1}]")
        if math.gcd(self.residue, self.modulus) != 1:
            raise InvalidElementError(f"{self.residue} is not a unit mod {self.modulus}")

    @classmethod
    def one(cls, modulus: int) -> GroupElement:
        return cls(1, modulus)

    def _check(self, other: GroupElement) -> None:
        if other.modulus != self.modulus:
            raise InvalidElementError(f"moduli differ: {self.modulus} vs {other.modulus}")

    def __mul__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return GroupElement(self.residue * other.residue % self.modulus, self.modulus)

    def __pow__(self, exp: int) -> GroupElement:
        if exp < 0:
            return self.inverse() ** -exp
        return GroupElement(pow(self.residue, exp, self.modulus), self.modulus)

    def inverse(self) -> GroupElement:
        return GroupElement(mod_inv(self.residue, self.modulus), self.modulus)

    def is_one(self) -> bool:
        return self.residue == 1

    def __int__(self) -> int:
        return self.residue

    def to_bytes(self) -> bytes:
        """Big-endian, padded to the byte length of the modulus."""
        return self.residue.to_bytes((self.modulus.bit_length() + 7) // 8, "big")

    def __repr__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"


def element(residue: int, modulus: int) -> GroupElement:
    """Reduce ``residue`` and wrap it; raises if it is not a unit."""
    return GroupElement(residue % modulus, modulus)


@dataclass(frozen=True)
class SubgroupSpec:
    """Subgroup ``gp(generators)`` of Z_modulus^*.

    ``secret_orders`` and ``secret_exponent`` are the key holder's private
    knowledge; :meth:`public` drops them. When present they are checked on
    construction: each order must be exact and the exponent their lcm.
    """

    modulus: int
    generators: tuple[GroupElement, ...]
    secret_orders: tuple[int, ...] | None = field(default=None, repr=False)
    secret_exponent: int | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.secret_orders is not None:
            object.__setattr__(self, "secret_orders", tuple(self.secret_orders))
        if not self.generators:
            raise InvalidSubgroupError("a subgroup needs at least one generator")
        for g in self.generators:
            if g.modulus != self.modulus:
                raise InvalidSubgroupError(f"generator {g!r} not in Z_{self.modulus}^*")
        if self.secret_orders is not None:
            if len(self.secret_orders) != len(self.generators):
                raise InvalidSubgroupError("one secret order per generator is required")
            for g, order in zip(self.generators, self.secret_orders):
                if order < 1 or not has_exact_order(g, order, factorize(order)):
                    raise InvalidSubgroupError(f"{g!r} does not have order {order}")
            expected = lcm_all(self.secret_orders)
            if self.secret_exponent is None:
                object.__setattr__(self, "secret_exponent", expected)
            elif self.secret_exponent != expected:
                raise InvalidSubgroupError(
                    f"exponent {self.secret_exponent} != lcm of orders {expected}"
                )
        elif self.secret_exponent is not None:
            e = self.secret_exponent
            if e < 1 or any(not (g**e).is_one() for g in self.generators):
                raise InvalidSubgroupError(f"{e} does not annihilate the generators")

    @classmethod
    def of(cls, modulus: int, residues, orders=None) -> SubgroupSpec:
        gens = tuple(GroupElement(r % modulus, modulus) for r in residues)
        return cls(modulus, gens, tuple(orders) if orders is not None else None)

    def public(self) -> SubgroupSpec:
        return replace(self, secret_orders=None, secret_exponent=None)

    @property
    def residues(self) -> tuple[int, ...]:
        return tuple(g.residue for g in self.generators)


def has_exact_order(g: GroupElement, order: int, order_factorization: Factorization) -> bool:
    """``g**order == 1`` and ``g**(order/l) != 1`` for every prime ``l | order``."""
    if not (g**order).is_one():
        return False
    return all(not (g ** (order // ell)).is_one() for ell in order_factorization.primes)


def element_order(g: GroupElement, group_order_factorization: Factorization) -> int:
    """Order of ``g`` given the factored order N of a group containing it."""
    order = group_order_factorization.value
    if not (g**order).is_one():
        raise InconsistentFactorizationError(f"{g!r} raised to {order} is not 1")
    for ell, mult in group_order_factorization.pairs:
        for _ in range(mult):
            if (g ** (order // ell)).is_one():
                order //= ell
            else:
                break
    return order


def subgroup_exponent(H: SubgroupSpec, group_order_factorization: Factorization) -> int:
    return lcm_all(element_order(g, group_order_factorization) for g in H.generators)


def prime_power_split(n: int) -> list[int]:
    """Prime-power factors of ``n``; ``[1]`` for ``n == 1``."""
    return factorize(n).prime_powers() or [1]


def find_element_of_order(r: int, p: int, factorization_of_r: Factorization, rng: Rng) -> GroupElement:
    """Random element of exact order ``r`` in F_p^*, for prime ``p`` with ``r | p - 1``."""
    if factorization_of_r.value != r:
        raise InconsistentFactorizationError(f"factorization does not multiply to {r}")
    if r < 1 or (p - 1) % r:
        raise OrderUnavailableError(f"{r} does not divide p - 1 = {p - 1}")
    if r == 1:
        return GroupElement.one(p)
    cofactor = (p - 1) // r
    lo, hi = (2, p - 2) if p > 3 else (1, p - 1)
    for _ in range(FIND_ORDER_ATTEMPTS):
        g = GroupElement(pow(rng.randint(lo, hi), cofactor, p), p)
        if has_exact_order(g, r, factorization_of_r):
            return g
    raise SearchFailure(f"no element of order {r} mod {p} in {FIND_ORDER_ATTEMPTS} attempts")


def smallest_generator(p: int, pm1_factorization: Factorization) -> GroupElement:
    """Least primitive root of the prime ``p``."""
    if pm1_factorization.value != p - 1:
        raise InconsistentFactorizationError(f"factorization does not multiply to {p - 1}")
    for w in range(1, p):
        g = GroupElement(w, p)
        if has_exact_order(g, p - 1, pm1_factorization):
            return g
    raise SearchFailure(f"{p} has no primitive root")


def enumerate_subgroup(H: SubgroupSpec, cap: int = ENUMERATION_CAP) -> frozenset[GroupElement]:
    """All elements of ``H``, by closing the generators under multiplication."""
    return frozenset(GroupElement(x, H.modulus) for x in subgroup_residues(H.modulus, H.residues, cap))


@functools.lru_cache(maxsize=64)
def subgroup_residues(modulus: int, gens: tuple[int, ...], cap: int) -> frozenset[int]:
    seen = {1}
    for g in gens:
        # multiply the current set by successive powers of g until it stops growing
        layer = list(seen)
        while True:
            layer = [x * g % modulus for x in layer]
            fresh = [x for x in layer if x not in seen]
            if not fresh:
                break
            seen.update(fresh)
            if len(seen) > cap:
                raise TooLargeError(f"subgroup has more than {cap} elements")
            layer = fresh
    return frozenset(seen)


def random_subgroup_element(H: SubgroupSpec, rng: Rng) -> GroupElement:
    """Product of generator powers with exponents uniform in ``[0, modulus * 2**64)``.

    The encryptor does not know ``|H|``, so exponents are oversampled; the
    result is within 2**-64 of uniform on each cyclic factor.
    """
    if not H.generators:
        raise InvalidSubgroupError("empty generator list")
    bound = H.modulus << 64
    out = GroupElement.one(H.modulus)
    for g in H.generators:
        out = out * g ** rng.randrange(bound)
    return out
