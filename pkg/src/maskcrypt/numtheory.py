"""Integer number theory on Python's arbitrary-precision ints.

Everything random takes an explicit :class:`Rng`; nothing here touches
ambient randomness.
"""

from __future__ import annotations

import functools
import hashlib
import math
import random
import secrets
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import (
    CrtModuliError,
    InconsistentFactorizationError,
    InvalidArgumentError,
    InvalidModulusError,
    NotInvertibleError,
    SearchFailure,
    UndefinedGcdError,
)

DEFAULT_ROUNDS = 64
TRIAL_DIVISION_BOUND = 2**20

# First 12 primes as Miller-Rabin bases are exact below 3.18e23 > 2**64.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Rng(random.Random):
    """Seedable, splittable deterministic random stream.

    Output is SHA-256 in counter mode over the 64-bit seed, so a given seed
    produces the same stream on every platform and Python version. All the
    usual ``random.Random`` helpers (``randrange``, ``sample``, ...) are
    available on top of it.
    """

    def __init__(self, seed: int):
        super().__init__(seed)

    @classmethod
    def from_entropy(cls) -> Rng:
        return cls(secrets.randbits(64))

    def seed(self, a=None, version=2) -> None:
        if not isinstance(a, int) or not 0 <= a < 2**64:
            raise InvalidArgumentError(f"seed must be a 64-bit unsigned int, got {a!r}")
        self._seed = a
        self._key = a.to_bytes(8, "big")
        self._counter = 0

    @property
    def initial_seed(self) -> int:
        return self._seed

    def _block(self) -> bytes:
        out = hashlib.sha256(self._key + self._counter.to_bytes(8, "big")).digest()
        self._counter += 1
        return out

    def getrandbits(self, k: int) -> int:
        if k < 0:
            raise ValueError("number of bits must be non-negative")
        if k == 0:
            return 0
        nblocks = (k + 255) // 256
        raw = b"".join(self._block() for _ in range(nblocks))
        return int.from_bytes(raw, "big") >> (nblocks * 256 - k)

    def random(self) -> float:
        return self.getrandbits(53) / 2**53

    def getstate(self):
        return (self._seed, self._counter)

    def setstate(self, state) -> None:
        seed, counter = state
        self.seed(seed)
        self._counter = counter

    def split(self) -> Rng:
        """Child stream with its own state, drawn from this one."""
        return Rng(self.getrandbits(64))


def mod_pow(base: int, exp: int, m: int) -> int:
    if m < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {m}")
    if exp < 0:
        raise InvalidArgumentError("exponent must be non-negative")
    return pow(base, exp, m)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, u, v)`` with ``g = gcd(a, b) = u*a + v*b``."""
    if a == 0 and b == 0:
        raise UndefinedGcdError("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def mod_inv(a: int, m: int) -> int:
    if m < 2:
        raise InvalidModulusError(f"modulus must be >= 2, got {m}")
    g, u, _ = ext_gcd(a % m, m)
    if g != 1:
        raise NotInvertibleError(a, m, g)
    return u % m


def lcm(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise InvalidArgumentError(f"lcm needs positive arguments, got {a}, {b}")
    return a // math.gcd(a, b) * b


def lcm_all(values: Iterable[int]) -> int:
    return functools.reduce(lcm, values, 1)


def crt_pair(a1: int, m1: int, a2: int, m2: int) -> int:
    """Unique ``x`` in ``[0, m1*m2)`` with ``x = a1 (m1)`` and ``x = a2 (m2)``."""
    if m1 < 1 or m2 < 1 or math.gcd(m1, m2) != 1:
        raise CrtModuliError(f"moduli {m1} and {m2} are not coprime")
    if m1 == 1 or m2 == 1:
        return (a1 if m2 == 1 else a2) % (m1 * m2)
    a1 %= m1
    k = ((a2 - a1) * mod_inv(m1, m2)) % m2
    return a1 + m1 * k


@functools.lru_cache(maxsize=None)
def small_primes(bound: int) -> tuple[int, ...]:
    """All primes below ``bound`` (sieve of Eratosthenes)."""
    if bound < 3:
        return ()
    sieve = bytearray([1]) * bound
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(bound - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_PRIMES_1000 = small_primes(1000)
_PRIMORIAL_1000 = math.prod(_PRIMES_1000)


def _miller_rabin(m: int, bases: Iterable[int]) -> bool:
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def is_probable_prime(m: int, rounds: int = DEFAULT_ROUNDS, rng: Rng | None = None) -> bool:
    """Trial division by primes below 1000, then Miller-Rabin.

    Below 2**64 the base set is fixed and the answer is exact. Above it,
    ``rounds`` random bases are drawn from ``rng``; without one, a stream
    seeded from ``m`` is used so the call stays deterministic.
    """
    if rounds < 1:
        raise InvalidArgumentError("rounds must be >= 1")
    if m < 2:
        return False
    if m < 1000:
        return m in _PRIMES_1000
    if math.gcd(m, _PRIMORIAL_1000) != 1:
        return False
    if m < 1000 * 1000:
        return True
    if m < 2**64:
        return _miller_rabin(m, _DETERMINISTIC_BASES)
    if rng is None:
        return _self_seeded_test(m, rounds)
    return _miller_rabin(m, (rng.randint(2, m - 2) for _ in range(rounds)))


def is_prime_candidate(m: int, rng: Rng) -> bool:
    """Search-loop primality test: one random-base round to discard composites
    cheaply, then the full self-seeded test. Later validation of an accepted
    ``m`` hits the cache instead of repeating 64 rounds."""
    return is_probable_prime(m, 1, rng) and is_probable_prime(m)


# validation re-checks the same primes many times; the answer is a pure function of (m, rounds)
@functools.lru_cache(maxsize=4096)
def _self_seeded_test(m: int, rounds: int) -> bool:
    rng = Rng(m % 2**64)
    return _miller_rabin(m, (rng.randint(2, m - 2) for _ in range(rounds)))


def x_range(r: int, bits: int) -> tuple[int, int]:
    # 1 + 2rx has exactly `bits` bits iff x lies in this range
    lo = -(-(2 ** (bits - 1)) // (2 * r))
    hi = (2**bits - 2) // (2 * r)
    return lo, hi


def gen_prime_with_factor(r: int, bits: int, rng: Rng) -> tuple[int, int]:
    """Random prime ``p = 1 + 2*r*x`` of exactly ``bits`` bits; returns ``(p, x)``.

    ``x`` is uniform over the range that forces the bit length. The search
    gives up after ``64 * bits`` candidates.
    """
    if r < 1:
        raise InvalidArgumentError("r must be >= 1")
    if bits < 2:
        raise SearchFailure(f"no {bits}-bit primes of the form 1 + 2*{r}*x")
    lo, hi = x_range(r, bits)
    if lo > hi:
        raise SearchFailure(f"no {bits}-bit integers of the form 1 + 2*{r}*x")
    for _ in range(64 * bits):
        x = rng.randint(lo, hi)
        p = 1 + 2 * r * x
        if is_prime_candidate(p, rng):
            return p, x
    raise SearchFailure(f"no prime 1 + 2*{r}*x found in {64 * bits} attempts")


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as sorted ``(prime, multiplicity)`` pairs."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        last = 1
        for prime, mult in self.pairs:
            if prime <= last or mult < 1:
                raise InconsistentFactorizationError(f"malformed factorization {self.pairs}")
            if not is_probable_prime(prime):
                raise InconsistentFactorizationError(f"{prime} is not prime")
            last = prime

    @classmethod
    def of(cls, factors: Iterable[int] | Counter) -> Factorization:
        """Build from a multiset of primes (list with repeats, or a Counter)."""
        counts = factors if isinstance(factors, Counter) else Counter(factors)
        return cls(tuple(sorted((p, k) for p, k in counts.items() if k)))

    @classmethod
    def parse(cls, text: str) -> Factorization:
        """Inverse of ``str()``: ``"2^2*3*5"``; ``"1"`` is the empty product."""
        text = text.strip()
        if text == "1":
            return cls(())
        counts: Counter = Counter()
        try:
            for term in text.split("*"):
                prime, _, mult = term.strip().partition("^")
                counts[int(prime)] += int(mult) if mult else 1
        except ValueError as exc:
            raise InconsistentFactorizationError(f"cannot parse factorization {text!r}") from exc
        return cls.of(counts)

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return "*".join(str(p) if k == 1 else f"{p}^{k}" for p, k in self.pairs)

    def __mul__(self, other: Factorization) -> Factorization:
        return Factorization.of(self.counter() + other.counter())

    def counter(self) -> Counter:
        return Counter(dict(self.pairs))

    @property
    def value(self) -> int:
        return math.prod(p**k for p, k in self.pairs)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def prime_powers(self) -> list[int]:
        return [p**k for p, k in self.pairs]


def factorize(n: int, bound: int = TRIAL_DIVISION_BOUND) -> Factorization:
    """Factor ``n`` by trial division below ``bound``.

    Succeeds whenever what is left after removing the small primes is 1 or
    a probable prime; raises :class:`SearchFailure` otherwise.
    """
    if n < 1:
        raise InvalidArgumentError(f"cannot factor {n}")
    counts: Counter = Counter()
    if n > 1 and is_probable_prime(n):
        return Factorization(((n, 1),))
    for i, p in enumerate(small_primes(bound)):
        if p * p > n:
            break
        if n % p == 0:
            while n % p == 0:
                n //= p
                counts[p] += 1
            if n > 1 and is_probable_prime(n):
                break
        elif i % 1024 == 1023 and is_probable_prime(n):
            break
    if n > 1:
        if not is_probable_prime(n):
            raise SearchFailure(f"cofactor {n} has no prime factor below {bound} and is composite")
        counts[n] += 1
    return Factorization.of(counts)
