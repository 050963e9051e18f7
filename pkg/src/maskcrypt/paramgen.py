"""Building prime fields and RSA-type rings with subgroups of prescribed order.

Every construction keeps the full factorization of ``p - 1`` (and ``q - 1``)
so the key holder can certify element orders. The factorizations are
secret; only moduli and generators are published.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import InvalidArgumentError, ParameterConflictError, SearchFailure
from .groups import GroupElement, SubgroupSpec, find_element_of_order, prime_power_split
from .numtheory import (
    DEFAULT_ROUNDS,
    Factorization,
    Rng,
    crt_pair,
    factorize,
    gen_prime_with_factor,
    is_prime_candidate,
    is_probable_prime,
    lcm_all,
    mod_inv,
    x_range,
)

# x below this always factors by trial division under 2**20
SMOOTH_X_LIMIT = 2**40
# bit length of the small cofactor m when x = m * P for a large prime P
SMALL_COFACTOR_BITS = 20
DISTINCT_PRIME_ATTEMPTS = 64


@dataclass(frozen=True)
class FieldParams:
    p: int
    secret_pm1_factorization: Factorization

    def __post_init__(self):
        if not is_probable_prime(self.p, DEFAULT_ROUNDS):
            raise ParameterConflictError(f"{self.p} is not prime")
        if self.secret_pm1_factorization.value != self.p - 1:
            raise ParameterConflictError("factorization does not reconstruct p - 1")

    @property
    def modulus(self) -> int:
        return self.p

    @property
    def group_order_factorization(self) -> Factorization:
        return self.secret_pm1_factorization


@dataclass(frozen=True)
class RingParams:
    n: int
    p: int
    q: int
    phi: int
    secret_pm1_factorization: Factorization
    secret_qm1_factorization: Factorization

    def __post_init__(self):
        if self.p == self.q:
            raise ParameterConflictError("p and q must differ")
        for prime, fact in ((self.p, self.secret_pm1_factorization), (self.q, self.secret_qm1_factorization)):
            FieldParams(prime, fact)
        if self.n != self.p * self.q:
            raise ParameterConflictError("n != p*q")
        if self.phi != (self.p - 1) * (self.q - 1):
            raise ParameterConflictError("phi != (p-1)(q-1)")

    @classmethod
    def from_fields(cls, fp: FieldParams, fq: FieldParams) -> RingParams:
        return cls(
            fp.p * fq.p, fp.p, fq.p, (fp.p - 1) * (fq.p - 1),
            fp.secret_pm1_factorization, fq.secret_pm1_factorization,
        )

    @property
    def modulus(self) -> int:
        return self.n

    @property
    def group_order_factorization(self) -> Factorization:
        return self.secret_pm1_factorization * self.secret_qm1_factorization


Platform = Union[FieldParams, RingParams]


@dataclass(frozen=True)
class MaskParams:
    """Mask subgroup ``H`` (exponent ``r``) and message subgroup ``U`` (exponent ``s``)."""

    platform: Platform
    H: SubgroupSpec
    U: SubgroupSpec
    r: int
    s: int
    t: int

    def __post_init__(self):
        m = self.platform.modulus
        if self.H.modulus != m or self.U.modulus != m:
            raise ParameterConflictError("subgroups live over a different modulus")
        if math.gcd(self.r, self.s) != 1:
            raise ParameterConflictError(f"gcd(r, s) = {math.gcd(self.r, self.s)} != 1")
        if (self.t * self.r - 1) % self.s:
            raise ParameterConflictError("t is not the inverse of r mod s")
        for spec, e in ((self.H, self.r), (self.U, self.s)):
            if spec.secret_exponent is not None and spec.secret_exponent != e:
                raise ParameterConflictError(f"subgroup exponent {spec.secret_exponent} != {e}")
            if any(not (g**e).is_one() for g in spec.generators):
                raise ParameterConflictError(f"generators are not annihilated by {e}")

    @property
    def modulus(self) -> int:
        return self.platform.modulus


def _inverse_or_one(r: int, s: int) -> int:
    # every t works modulo 1
    return 1 if s == 1 else mod_inv(r, s)


def assemble_mask_params(platform: Platform, H: SubgroupSpec, U: SubgroupSpec) -> MaskParams:
    """Bundle two subgroups carrying secret exponents into validated params."""
    if H.secret_exponent is None or U.secret_exponent is None:
        raise InvalidArgumentError("both subgroups need their secret exponents")
    r, s = H.secret_exponent, U.secret_exponent
    if math.gcd(r, s) != 1:
        raise ParameterConflictError(f"subgroup exponents {r} and {s} are not coprime")
    return MaskParams(platform, H, U, r, s, _inverse_or_one(r, s))


def _check_orders(orders: Sequence[int]) -> list[int]:
    orders = list(orders)
    if not orders or any(not isinstance(o, int) or o < 1 for o in orders):
        raise InvalidArgumentError(f"orders must be a nonempty list of positive ints, got {orders}")
    return orders


def product_factorization(orders: Sequence[int]) -> Factorization:
    out = Factorization(())
    for o in orders:
        out = out * factorize(o)
    return out


def lcm_factorization(orders: Sequence[int]) -> Factorization:
    out: Counter = Counter()
    for o in orders:
        out |= factorize(o).counter()
    return Factorization.of(out)


def prime_with_known_pm1(order_factorization: Factorization, bits: int, rng: Rng) -> FieldParams:
    """Prime ``p = 1 + 2*N*x`` of ``bits`` bits, ``N = order_factorization.value``, with ``p - 1`` fully factored.

    Small ``x`` is drawn uniformly and factored by trial division. Large
    ``x`` is built as ``m * P`` with ``P`` a random prime and ``m`` below
    2**21, so its factorization is known by construction.
    """
    known = Factorization.of([2]) * order_factorization
    order = order_factorization.value
    lo, hi = x_range(order, bits)
    if bits < 2 or lo > hi:
        raise SearchFailure(f"no {bits}-bit integers of the form 1 + 2*{order}*x")
    budget = 64 * bits
    if hi < SMOOTH_X_LIMIT:
        for _ in range(budget):
            x = rng.randint(lo, hi)
            p = 1 + 2 * order * x
            if is_prime_candidate(p, rng):
                return FieldParams(p, known * factorize(x))
        raise SearchFailure(f"no prime 1 + 2*{order}*x found in {budget} attempts")
    big_bits = hi.bit_length() - SMALL_COFACTOR_BITS
    attempts = 0
    while attempts < budget:
        big, _ = gen_prime_with_factor(1, big_bits, rng)
        m_lo, m_hi = -(-lo // big), hi // big
        for _ in range(bits):
            attempts += 1
            m = rng.randint(m_lo, m_hi)
            p = 1 + 2 * order * m * big
            if is_prime_candidate(p, rng):
                return FieldParams(p, known * factorize(m) * Factorization(((big, 1),)))
    raise SearchFailure(f"no prime 1 + 2*{order}*x found in {budget} attempts")


def build_field_with_orders(
    orders: Sequence[int], bits: int, rng: Rng
) -> tuple[FieldParams, list[GroupElement]]:
    """F_p with ``p = 1 + 2*prod(orders)*x`` and one element of each exact order."""
    orders = _check_orders(orders)
    field = prime_with_known_pm1(product_factorization(orders), bits, rng)
    elements = [find_element_of_order(o, field.p, factorize(o), rng) for o in orders]
    return field, elements


def build_subgroup_of_exponent(e: int, bits: int, rng: Rng) -> tuple[FieldParams, SubgroupSpec]:
    """F_p with a subgroup ``H`` of exponent ``e``, one generator per prime-power factor."""
    if e < 1:
        raise InvalidArgumentError(f"exponent must be >= 1, got {e}")
    orders = prime_power_split(e)
    field, elements = build_field_with_orders(orders, bits, rng)
    return field, SubgroupSpec(field.p, tuple(elements), tuple(orders), e)


def _coprime_sides(r_list: Sequence[int], s_list: Sequence[int]) -> tuple[list[int], list[int], int, int]:
    r_list, s_list = _check_orders(r_list), _check_orders(s_list)
    r, s = lcm_all(r_list), lcm_all(s_list)
    if math.gcd(r, s) != 1:
        raise ParameterConflictError(f"lcm(r) = {r} and lcm(s) = {s} share the factor {math.gcd(r, s)}")
    return r_list, s_list, r, s


def build_field_mask_params(
    r_list: Sequence[int], s_list: Sequence[int], bits: int, rng: Rng
) -> tuple[FieldParams, MaskParams]:
    """F_p with mask subgroup of exponent lcm(r_list) and message subgroup of exponent lcm(s_list)."""
    r_list, s_list, r, s = _coprime_sides(r_list, s_list)
    field = prime_with_known_pm1(lcm_factorization(r_list) * lcm_factorization(s_list), bits, rng)
    p = field.p
    H = SubgroupSpec(p, tuple(find_element_of_order(o, p, factorize(o), rng) for o in r_list), tuple(r_list))
    U = SubgroupSpec(p, tuple(find_element_of_order(o, p, factorize(o), rng) for o in s_list), tuple(s_list))
    return field, MaskParams(field, H, U, r, s, _inverse_or_one(r, s))


def build_ring_with_orders(
    r_list: Sequence[int], s_list: Sequence[int], bits: int, rng: Rng
) -> tuple[RingParams, MaskParams]:
    """Z_n, n = p*q, with the mask structure mod p and the message structure mod q.

    Mask generators are 1 mod q and message generators are 1 mod p, glued
    by CRT, so each generator's order mod n is exactly its prescribed order.
    ``bits`` is the target size of n; p gets ``bits // 2`` bits.
    """
    r_list, s_list, r, s = _coprime_sides(r_list, s_list)
    p_bits = bits // 2
    fp = prime_with_known_pm1(lcm_factorization(r_list), p_bits, rng)
    for _ in range(DISTINCT_PRIME_ATTEMPTS):
        fq = prime_with_known_pm1(lcm_factorization(s_list), bits - p_bits, rng)
        if fq.p != fp.p:
            break
    else:
        raise SearchFailure("could not find q distinct from p")
    ring = RingParams.from_fields(fp, fq)
    p, q, n = ring.p, ring.q, ring.n

    def lift(order: int, prime: int, mask_side: bool) -> GroupElement:
        g = find_element_of_order(order, prime, factorize(order), rng).residue
        return GroupElement(crt_pair(g, p, 1, q) if mask_side else crt_pair(1, p, g, q), n)

    H = SubgroupSpec(n, tuple(lift(o, p, True) for o in r_list), tuple(r_list))
    U = SubgroupSpec(n, tuple(lift(o, q, False) for o in s_list), tuple(s_list))
    return ring, MaskParams(ring, H, U, r, s, _inverse_or_one(r, s))
