"""Subgroup-masking cryptosystems.

* basic mask scheme over F_p or Z_n: ``c = h*u``, decrypt ``c**(r*t)``
* RSA-combined mask scheme: ``c = (h*u)**e``, decrypt ``c**d``
* header-free ElGamal variant with message space ``gp(g**b)``
* Diffie-Hellman variant where each side masks its message with a
  subgroup element the other side's exponent annihilates

Encryptors only see public halves. The ``mask=`` / ``nonce=`` keywords pin
the coins for reproducible vectors; normal callers leave them ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    BadPublicExponentError,
    InvalidArgumentError,
    InvalidElementError,
    ParameterConflictError,
)
from .groups import (
    GroupElement,
    SubgroupSpec,
    find_element_of_order,
    has_exact_order,
    prime_power_split,
    random_subgroup_element,
    smallest_generator,
)
from .numtheory import Rng, factorize, mod_inv, x_range
from .paramgen import FieldParams, MaskParams, RingParams, prime_with_known_pm1

FIELD_MASK = "field-mask"
RING_MASK = "ring-mask"
RSA_MASK = "rsa-mask"
ELGAMAL = "elgamal-subgroup"
DH = "dh-subgroup"
SCHEMES = (FIELD_MASK, RING_MASK, RSA_MASK, ELGAMAL, DH)


@dataclass(frozen=True)
class Ciphertext:
    value: GroupElement

    @property
    def modulus(self) -> int:
        return self.value.modulus


def _check_element(u, modulus: int) -> None:
    if not isinstance(u, GroupElement):
        raise InvalidElementError(f"expected a GroupElement, got {type(u).__name__}")
    if u.modulus != modulus:
        raise InvalidElementError(f"element lives mod {u.modulus}, key mod {modulus}")


def _mask_for(H: SubgroupSpec, rng: Rng | None, mask: GroupElement | None) -> GroupElement:
    if mask is None:
        if rng is None:
            raise InvalidArgumentError("an Rng is required unless the mask is given")
        return random_subgroup_element(H, rng)
    _check_element(mask, H.modulus)
    return mask


# basic mask scheme


@dataclass(frozen=True)
class MaskPublicKey:
    scheme: str
    modulus: int
    H: SubgroupSpec
    U: SubgroupSpec


@dataclass(frozen=True)
class MaskKeyPair:
    params: MaskParams

    @property
    def scheme(self) -> str:
        return FIELD_MASK if isinstance(self.params.platform, FieldParams) else RING_MASK

    @property
    def public(self) -> MaskPublicKey:
        p = self.params
        return MaskPublicKey(self.scheme, p.modulus, p.H.public(), p.U.public())

    @property
    def r(self) -> int:
        return self.params.r

    @property
    def s(self) -> int:
        return self.params.s

    @property
    def t(self) -> int:
        return self.params.t

    @property
    def d(self) -> int:
        return self.params.r * self.params.t


def mask_keygen(params: MaskParams) -> MaskKeyPair:
    return MaskKeyPair(params)


def mask_encrypt(
    pub: MaskPublicKey, u: GroupElement, rng: Rng | None = None, *, mask: GroupElement | None = None
) -> Ciphertext:
    _check_element(u, pub.modulus)
    return Ciphertext(_mask_for(pub.H, rng, mask) * u)


def mask_decrypt(keys: MaskKeyPair, c: Ciphertext) -> GroupElement:
    """``c**(r*t)``.

    Gives back ``u`` whenever ``c = h*u`` with ``h`` in H and ``u`` in U;
    any other input yields some unrelated element.
    """
    _check_element(c.value, keys.params.modulus)
    return c.value ** keys.d


# RSA-combined mask scheme


@dataclass(frozen=True)
class RsaMaskPublicKey:
    n: int
    H: SubgroupSpec
    U: SubgroupSpec
    e: int
    scheme: str = RSA_MASK

    @property
    def modulus(self) -> int:
        return self.n


@dataclass(frozen=True)
class RsaMaskKeyPair:
    """``t_H = |H|``-exponent, ``r_U = |U|``-exponent, ``d = t_H * d1``."""

    params: MaskParams
    e: int
    d1: int

    def __post_init__(self):
        if not isinstance(self.params.platform, RingParams):
            raise ParameterConflictError("the RSA-combined scheme runs over Z_n, n = p*q")
        if math.gcd(self.e, self.r_U) != 1:
            raise BadPublicExponentError(f"gcd(e, |U|) = {math.gcd(self.e, self.r_U)} != 1")
        if (self.t_H * self.e * self.d1 - 1) % self.r_U:
            raise ParameterConflictError("(t_H*e)*d1 != 1 mod r_U")

    @property
    def t_H(self) -> int:
        return self.params.r

    @property
    def r_U(self) -> int:
        return self.params.s

    @property
    def d(self) -> int:
        return self.t_H * self.d1

    @property
    def p(self) -> int:
        return self.params.platform.p

    @property
    def q(self) -> int:
        return self.params.platform.q

    @property
    def public(self) -> RsaMaskPublicKey:
        return RsaMaskPublicKey(self.params.modulus, self.params.H.public(), self.params.U.public(), self.e)


def rsa_mask_keygen(params: MaskParams, e: int) -> RsaMaskKeyPair:
    if e < 1:
        raise BadPublicExponentError(f"public exponent must be >= 1, got {e}")
    t_h, r_u = params.r, params.s
    if math.gcd(e, r_u) != 1:
        raise BadPublicExponentError(f"gcd(e, |U|) = {math.gcd(e, r_u)} != 1")
    d1 = 1 if r_u == 1 else mod_inv(t_h * e, r_u)
    return RsaMaskKeyPair(params, e, d1)


def rsa_mask_encrypt(
    pub: RsaMaskPublicKey, u: GroupElement, rng: Rng | None = None, *, mask: GroupElement | None = None
) -> Ciphertext:
    _check_element(u, pub.n)
    return Ciphertext((_mask_for(pub.H, rng, mask) * u) ** pub.e)


def rsa_mask_decrypt(keys: RsaMaskKeyPair, c: Ciphertext) -> GroupElement:
    _check_element(c.value, keys.params.modulus)
    return c.value ** keys.d


# ElGamal subgroup variant


@dataclass(frozen=True)
class ElGamalPublicKey:
    p: int
    g: GroupElement
    y: GroupElement
    gb: GroupElement
    scheme: str = ELGAMAL

    @property
    def modulus(self) -> int:
        return self.p

    @property
    def message_space(self) -> SubgroupSpec:
        return SubgroupSpec(self.p, (self.gb,))


@dataclass(frozen=True)
class ElGamalSubgroupKeyPair:
    """``p - 1 = r*s*k``, ``a = s*k``, ``b = r*k``, ``y = g**a``, ``gb = g**b``."""

    field: FieldParams
    g: GroupElement
    r: int
    s: int
    k: int

    def __post_init__(self):
        p = self.field.p
        if self.r < 2 or self.s < 2:
            raise ParameterConflictError("r and s must both be at least 2")
        if math.gcd(self.r, self.s) != 1:
            raise ParameterConflictError(f"gcd(r, s) = {math.gcd(self.r, self.s)} != 1")
        if self.r * self.s * self.k != p - 1:
            raise ParameterConflictError("p - 1 != r*s*k")
        _check_element(self.g, p)
        if not has_exact_order(self.g, p - 1, self.field.secret_pm1_factorization):
            raise ParameterConflictError(f"{self.g!r} does not generate F_p^*")

    @classmethod
    def derive(cls, field: FieldParams, g: GroupElement, r: int, s: int) -> ElGamalSubgroupKeyPair:
        if (field.p - 1) % (r * s):
            raise ParameterConflictError(f"r*s = {r * s} does not divide p - 1")
        return cls(field, g, r, s, (field.p - 1) // (r * s))

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def a(self) -> int:
        return self.s * self.k

    @property
    def b(self) -> int:
        return self.r * self.k

    @property
    def t(self) -> int:
        return mod_inv(self.r, self.s)

    @property
    def y(self) -> GroupElement:
        return self.g**self.a

    @property
    def gb(self) -> GroupElement:
        return self.g**self.b

    @property
    def public(self) -> ElGamalPublicKey:
        return ElGamalPublicKey(self.p, self.g, self.y, self.gb)


def elgamal_keygen(r: int, s: int, bits: int, rng: Rng) -> ElGamalSubgroupKeyPair:
    """Prime ``p = 1 + r*s*k`` with ``k`` even, generator ``g`` the least primitive root."""
    if r < 2 or s < 2:
        raise ParameterConflictError("r and s must both be at least 2")
    if math.gcd(r, s) != 1:
        raise ParameterConflictError(f"gcd(r, s) = {math.gcd(r, s)} != 1")
    field = prime_with_known_pm1(factorize(r) * factorize(s), bits, rng)
    g = smallest_generator(field.p, field.secret_pm1_factorization)
    return ElGamalSubgroupKeyPair.derive(field, g, r, s)


def elgamal_encrypt(
    pub: ElGamalPublicKey, u: GroupElement, rng: Rng | None = None, *, nonce: int | None = None
) -> Ciphertext:
    """``c = u * y**l`` with ``l`` uniform in ``[1, p - 2]``."""
    _check_element(u, pub.p)
    if nonce is None:
        if rng is None:
            raise InvalidArgumentError("an Rng is required unless the nonce is given")
        nonce = rng.randint(1, pub.p - 2)
    return Ciphertext(u * pub.y**nonce)


def elgamal_decrypt(keys: ElGamalSubgroupKeyPair, c: Ciphertext) -> GroupElement:
    """``(c**r)**t``: raising to ``r`` kills the mask, ``t`` undoes ``r`` on gp(gb)."""
    _check_element(c.value, keys.p)
    return (c.value**keys.r) ** keys.t


# Diffie-Hellman subgroup variant

DH_MAX_BLINDING = 2**16


@dataclass(frozen=True)
class DhPublic:
    p: int
    g: GroupElement
    r1: int
    s1: int
    H: SubgroupSpec
    U: SubgroupSpec
    scheme: str = DH

    @property
    def modulus(self) -> int:
        return self.p


@dataclass(frozen=True)
class DhSession:
    """Both parties' setup data, simulated in one process.

    Bob holds ``r`` (and ``x`` with ``r1 = r*x``) and builds ``H`` of
    exponent ``r``; Alice holds ``s`` (``s1 = s*y``) and builds ``U`` of
    exponent ``s``. ``p = 1 + 2*r1*s1*z``.
    """

    field: FieldParams
    g: GroupElement
    r: int
    s: int
    x: int
    y: int
    H: SubgroupSpec
    U: SubgroupSpec

    def __post_init__(self):
        if math.gcd(self.r, self.s) != 1:
            raise ParameterConflictError(f"gcd(r, s) = {math.gcd(self.r, self.s)} != 1")
        if (self.p - 1) % (2 * self.r1 * self.s1):
            raise ParameterConflictError("p - 1 is not a multiple of 2*r1*s1")
        if self.H.secret_exponent != self.r or self.U.secret_exponent != self.s:
            raise ParameterConflictError("subgroup exponents must be r and s")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def r1(self) -> int:
        return self.r * self.x

    @property
    def s1(self) -> int:
        return self.s * self.y

    @property
    def z(self) -> int:
        return (self.p - 1) // (2 * self.r1 * self.s1)

    @property
    def public(self) -> DhPublic:
        return DhPublic(self.p, self.g, self.r1, self.s1, self.H.public(), self.U.public())


def _subgroup_of_exponent(e: int, p: int, rng: Rng) -> SubgroupSpec:
    orders = prime_power_split(e)
    gens = tuple(find_element_of_order(o, p, factorize(o), rng) for o in orders)
    return SubgroupSpec(p, gens, tuple(orders), e)


def dh_setup(r: int, s: int, bits: int, rng: Rng) -> DhSession:
    """Pick blinding factors, the prime, a public generator and both subgroups.

    ``x`` and ``y`` are drawn from ``[1, B]`` with ``B`` small enough to
    leave room for ``z`` (and at most 2**16), so the factorization of
    ``p - 1`` stays known.
    """
    if r < 1 or s < 1:
        raise InvalidArgumentError("r and s must be positive")
    if math.gcd(r, s) != 1:
        raise ParameterConflictError(f"gcd(r, s) = {math.gcd(r, s)} != 1")
    _, hi = x_range(r * s, bits)
    bound = max(1, min(DH_MAX_BLINDING, math.isqrt(math.isqrt(max(hi, 0)))))
    x, y = rng.randint(1, bound), rng.randint(1, bound)
    order = factorize(r) * factorize(x) * factorize(s) * factorize(y)
    field = prime_with_known_pm1(order, bits, rng)
    g = smallest_generator(field.p, field.secret_pm1_factorization)
    H = _subgroup_of_exponent(r, field.p, rng)
    U = _subgroup_of_exponent(s, field.p, rng)
    return DhSession(field, g, r, s, x, y, H, U)


def dh_random_scalar(p: int, rng: Rng) -> int:
    """Uniform in ``[1, p - 2]`` and coprime to ``p - 1``."""
    while True:
        a = rng.randint(1, max(1, p - 2))
        if math.gcd(a, p - 1) == 1:
            return a


def dh_bob_message(session: DhSession, b: int, u: GroupElement) -> GroupElement:
    """``u * g**(b*r)``."""
    _check_element(u, session.p)
    return u * session.g ** (b * session.r)


def dh_alice_message(session: DhSession, a: int, h: GroupElement) -> GroupElement:
    """``h * g**(a*s)``."""
    _check_element(h, session.p)
    return h * session.g ** (a * session.s)


def dh_derive(received: GroupElement, own_secret_scalar: int, own_prescribed: int) -> GroupElement:
    """Raise the counterpart's message to ``own_prescribed * own_secret_scalar``.

    Bob's ``r`` kills Alice's mask from H, Alice's ``s`` kills Bob's from U,
    and both land on ``g**(a*b*r*s)``.
    """
    return received ** (own_prescribed * own_secret_scalar)
