"""Turning payloads into message-subgroup elements and back.

Two modes:

``exponent``
    integer ``m`` becomes ``u1**m`` for the first generator ``u1`` of U.
    Decoding is a discrete log inside ``gp(u1)`` (baby-step giant-step), so
    it is only practical for moderate orders.
``kem``
    a random element of U is transported as is; its byte encoding serves
    as a shared secret. Works at any size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidArgumentError, NotInSubgroupError, OutOfRangeError, TooLargeError
from .groups import GroupElement, SubgroupSpec, random_subgroup_element
from .numtheory import Rng

EXPONENT = "exponent"
KEM = "kem"
MODES = (EXPONENT, KEM)
BSGS_BOUND = 2**40


@dataclass(frozen=True)
class EncodedMessage:
    mode: str
    payload: int | None
    element: GroupElement


def _primary_order(U: SubgroupSpec, s: int | None) -> int | None:
    if s is not None:
        return s
    return U.secret_orders[0] if U.secret_orders else None


def encode_exponent(m: int, U: SubgroupSpec, s: int | None = None) -> EncodedMessage:
    """``u1**m``. ``s`` is the order of ``u1`` when the caller knows it.

    Senders holding only the public key do not know ``s``; then no range
    check happens and the receiver recovers ``m mod s``.
    """
    s = _primary_order(U, s)
    if m < 0 or (s is not None and m >= s):
        raise OutOfRangeError(f"message {m} outside [0, {s})")
    return EncodedMessage(EXPONENT, m, U.generators[0] ** m)


def decode_exponent(el: GroupElement, U: SubgroupSpec, s: int | None = None, bound: int = BSGS_BOUND) -> int:
    """Least ``m`` with ``u1**m == el``, by baby-step giant-step in O(sqrt(s))."""
    s = _primary_order(U, s)
    if s is None:
        raise InvalidArgumentError("decoding needs the order of the first generator")
    if s > bound:
        raise TooLargeError(f"order {s} above the discrete-log bound {bound}")
    if el.modulus != U.modulus:
        raise NotInSubgroupError(f"{el!r} is not in Z_{U.modulus}^*")
    u1 = U.generators[0]
    step = math.isqrt(s - 1) + 1 if s > 1 else 1
    table: dict[int, int] = {}
    acc = GroupElement.one(U.modulus)
    for j in range(step):
        table.setdefault(acc.residue, j)
        acc = acc * u1
    giant = u1 ** (-step)
    acc = el
    for i in range(step):
        if acc.residue in table:
            m = i * step + table[acc.residue]
            if m < s:
                return m
        acc = acc * giant
    raise NotInSubgroupError(f"{el!r} is not a power of {u1!r} below {s}")


def kem_sample(U: SubgroupSpec, rng: Rng) -> EncodedMessage:
    return EncodedMessage(KEM, None, random_subgroup_element(U, rng))
