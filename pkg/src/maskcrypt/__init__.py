"""Probabilistic public-key encryption by subgroup masking.

A message lives in a subgroup U, is multiplied by a random element of a
mask subgroup H of coprime exponent, and the key holder strips the mask by
exponentiation. Includes parameter generation, the field, ring,
RSA-combined, ElGamal-style and Diffie-Hellman-style schemes, and
brute-force oracles for the underlying decision problems.
"""

from .errors import MaskCryptError
from .groups import GroupElement, SubgroupSpec
from .numtheory import Factorization, Rng

__version__ = "0.1.0"

__all__ = ["Factorization", "GroupElement", "MaskCryptError", "Rng", "SubgroupSpec", "__version__"]
