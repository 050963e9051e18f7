"""Text formats for keys and ciphertexts.

Key files are INI-style: a ``[public]`` section (always, including
``scheme`` and ``version``) and, for the key holder's copy, a ``[secret]``
section. Integers are decimal, generator lists comma-separated,
factorizations written like ``2^2*3*5``. Every field is mandatory and
unknown fields are rejected; loaded keys go through the same validation
as freshly generated ones.
"""

from __future__ import annotations

import configparser
import io

from .errors import KeyFileError, MaskCryptError
from .groups import GroupElement, SubgroupSpec
from .numtheory import Factorization
from .paramgen import FieldParams, MaskParams, RingParams
from .schemes import (
    DH,
    ELGAMAL,
    FIELD_MASK,
    RING_MASK,
    RSA_MASK,
    Ciphertext,
    DhPublic,
    DhSession,
    ElGamalPublicKey,
    ElGamalSubgroupKeyPair,
    MaskKeyPair,
    MaskPublicKey,
    RsaMaskKeyPair,
    RsaMaskPublicKey,
)

VERSION = 1

_PUBLIC_FIELDS = {
    FIELD_MASK: ("modulus", "h_gens", "u_gens"),
    RING_MASK: ("modulus", "h_gens", "u_gens"),
    RSA_MASK: ("modulus", "h_gens", "u_gens", "e"),
    ELGAMAL: ("modulus", "g", "y", "gb"),
    DH: ("modulus", "g", "r1", "s1", "h_gens", "u_gens"),
}
_RING_SECRET = ("p", "q", "phi", "r", "s", "t", "h_orders", "u_orders", "pm1_factors", "qm1_factors")
_SECRET_FIELDS = {
    FIELD_MASK: ("r", "s", "t", "h_orders", "u_orders", "pm1_factors"),
    RING_MASK: _RING_SECRET,
    RSA_MASK: _RING_SECRET + ("d1", "d"),
    ELGAMAL: ("r", "s", "a", "k", "t", "pm1_factors"),
    DH: ("r", "s", "x", "y", "h_orders", "u_orders", "pm1_factors"),
}


def _ints(values) -> str:
    return ",".join(str(int(v)) for v in values)


def _public_record(pub) -> dict[str, str]:
    rec = {"scheme": pub.scheme, "version": str(VERSION)}
    if isinstance(pub, (MaskPublicKey, RsaMaskPublicKey)):
        rec.update(modulus=str(pub.modulus), h_gens=_ints(pub.H.residues), u_gens=_ints(pub.U.residues))
        if isinstance(pub, RsaMaskPublicKey):
            rec["e"] = str(pub.e)
    elif isinstance(pub, ElGamalPublicKey):
        rec.update(modulus=str(pub.p), g=str(int(pub.g)), y=str(int(pub.y)), gb=str(int(pub.gb)))
    elif isinstance(pub, DhPublic):
        rec.update(
            modulus=str(pub.p), g=str(int(pub.g)), r1=str(pub.r1), s1=str(pub.s1),
            h_gens=_ints(pub.H.residues), u_gens=_ints(pub.U.residues),
        )
    else:
        raise TypeError(f"cannot serialize {type(pub).__name__}")
    return rec


def _mask_secret(params: MaskParams) -> dict[str, str]:
    plat = params.platform
    rec: dict[str, str] = {}
    if isinstance(plat, RingParams):
        rec.update(p=str(plat.p), q=str(plat.q), phi=str(plat.phi))
    rec.update(
        r=str(params.r), s=str(params.s), t=str(params.t),
        h_orders=_ints(params.H.secret_orders), u_orders=_ints(params.U.secret_orders),
        pm1_factors=str(plat.secret_pm1_factorization),
    )
    if isinstance(plat, RingParams):
        rec["qm1_factors"] = str(plat.secret_qm1_factorization)
    return rec


def _secret_record(keys) -> dict[str, str]:
    if isinstance(keys, MaskKeyPair):
        return _mask_secret(keys.params)
    if isinstance(keys, RsaMaskKeyPair):
        return {**_mask_secret(keys.params), "d1": str(keys.d1), "d": str(keys.d)}
    if isinstance(keys, ElGamalSubgroupKeyPair):
        return dict(
            r=str(keys.r), s=str(keys.s), a=str(keys.a), k=str(keys.k), t=str(keys.t),
            pm1_factors=str(keys.field.secret_pm1_factorization),
        )
    if isinstance(keys, DhSession):
        return dict(
            r=str(keys.r), s=str(keys.s), x=str(keys.x), y=str(keys.y),
            h_orders=_ints(keys.H.secret_orders), u_orders=_ints(keys.U.secret_orders),
            pm1_factors=str(keys.field.secret_pm1_factorization),
        )
    raise TypeError(f"cannot serialize {type(keys).__name__}")


def _render(sections: dict[str, dict[str, str]]) -> str:
    cp = configparser.ConfigParser(interpolation=None)
    for name, rec in sections.items():
        cp[name] = rec
    buf = io.StringIO()
    cp.write(buf)
    return buf.getvalue()


def dump_public(obj) -> str:
    """Public file text for a public key, or for the public half of a key pair."""
    pub = getattr(obj, "public", obj)
    return _render({"public": _public_record(pub)})


def dump_secret(keys) -> str:
    return _render({"public": _public_record(keys.public), "secret": _secret_record(keys)})


def _parse(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(interpolation=None)
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise KeyFileError(f"unparseable file: {exc}") from exc
    return cp


def _check_fields(section, expected) -> None:
    got = set(section.keys())
    missing, unknown = set(expected) - got, got - set(expected)
    if missing or unknown:
        raise KeyFileError(f"[{section.name}]: missing {sorted(missing)}, unknown {sorted(unknown)}")


def _int(section, key: str) -> int:
    try:
        return int(section[key])
    except ValueError as exc:
        raise KeyFileError(f"[{section.name}] {key} is not a decimal integer") from exc


def _int_list(section, key: str) -> list[int]:
    try:
        return [int(v) for v in section[key].split(",")]
    except ValueError as exc:
        raise KeyFileError(f"[{section.name}] {key} is not a list of decimal integers") from exc


def _expect(cond: bool, what: str) -> None:
    if not cond:
        raise KeyFileError(f"inconsistent key file: {what}")


def load_key(text: str):
    """Parse a key file.

    Returns the public key object for a public file, or the full key pair
    (or DH session) when a ``[secret]`` section is present.
    """
    cp = _parse(text)
    if set(cp.sections()) - {"public", "secret"} or "public" not in cp:
        raise KeyFileError(f"expected [public] and optional [secret], got {cp.sections()}")
    pub = cp["public"]
    scheme = pub.get("scheme")
    if scheme not in _PUBLIC_FIELDS:
        raise KeyFileError(f"unknown scheme {scheme!r}")
    _check_fields(pub, ("scheme", "version") + _PUBLIC_FIELDS[scheme])
    if _int(pub, "version") != VERSION:
        raise KeyFileError(f"unsupported version {pub['version']}")
    try:
        public = _build_public(scheme, pub)
        if "secret" not in cp:
            return public
        sec = cp["secret"]
        _check_fields(sec, _SECRET_FIELDS[scheme])
        keys = _build_secret(scheme, pub, sec)
    except KeyFileError:
        raise
    except MaskCryptError as exc:
        raise KeyFileError(f"invalid key material: {exc}") from exc
    _expect(keys.public == public, "public section does not match the secret key")
    return keys


def _build_public(scheme: str, pub):
    n = _int(pub, "modulus")
    if scheme in (FIELD_MASK, RING_MASK, RSA_MASK, DH):
        H = SubgroupSpec.of(n, _int_list(pub, "h_gens"))
        U = SubgroupSpec.of(n, _int_list(pub, "u_gens"))
    if scheme in (FIELD_MASK, RING_MASK):
        return MaskPublicKey(scheme, n, H, U)
    if scheme == RSA_MASK:
        return RsaMaskPublicKey(n, H, U, _int(pub, "e"))
    if scheme == ELGAMAL:
        return ElGamalPublicKey(n, *(GroupElement(_int(pub, f), n) for f in ("g", "y", "gb")))
    return DhPublic(n, GroupElement(_int(pub, "g"), n), _int(pub, "r1"), _int(pub, "s1"), H, U)


def _factorization(sec, key: str) -> Factorization:
    return Factorization.parse(sec[key])


def _build_secret(scheme: str, pub, sec):
    n = _int(pub, "modulus")
    if scheme in (FIELD_MASK, RING_MASK, RSA_MASK):
        if scheme == FIELD_MASK:
            platform = FieldParams(n, _factorization(sec, "pm1_factors"))
        else:
            platform = RingParams(
                n, _int(sec, "p"), _int(sec, "q"), _int(sec, "phi"),
                _factorization(sec, "pm1_factors"), _factorization(sec, "qm1_factors"),
            )
        H = SubgroupSpec.of(n, _int_list(pub, "h_gens"), _int_list(sec, "h_orders"))
        U = SubgroupSpec.of(n, _int_list(pub, "u_gens"), _int_list(sec, "u_orders"))
        params = MaskParams(platform, H, U, _int(sec, "r"), _int(sec, "s"), _int(sec, "t"))
        if scheme != RSA_MASK:
            return MaskKeyPair(params)
        keys = RsaMaskKeyPair(params, _int(pub, "e"), _int(sec, "d1"))
        _expect(keys.d == _int(sec, "d"), "d != t_H * d1")
        return keys
    field = FieldParams(n, _factorization(sec, "pm1_factors"))
    if scheme == ELGAMAL:
        keys = ElGamalSubgroupKeyPair(field, GroupElement(_int(pub, "g"), n), _int(sec, "r"), _int(sec, "s"), _int(sec, "k"))
        _expect(keys.a == _int(sec, "a") and keys.t == _int(sec, "t"), "a or t disagrees with r, s, k")
        return keys
    H = SubgroupSpec.of(n, _int_list(pub, "h_gens"), _int_list(sec, "h_orders"))
    U = SubgroupSpec.of(n, _int_list(pub, "u_gens"), _int_list(sec, "u_orders"))
    return DhSession(field, GroupElement(_int(pub, "g"), n), _int(sec, "r"), _int(sec, "s"), _int(sec, "x"), _int(sec, "y"), H, U)


_CIPHERTEXT_FIELDS = ("scheme", "modulus", "value", "mode")


def dump_ciphertext(scheme: str, c: Ciphertext, mode: str) -> str:
    return _render({"ciphertext": dict(scheme=scheme, modulus=str(c.modulus), value=str(int(c.value)), mode=mode)})


def load_ciphertext(text: str) -> tuple[str, Ciphertext, str]:
    """Returns ``(scheme, ciphertext, mode)``."""
    cp = _parse(text)
    if cp.sections() != ["ciphertext"]:
        raise KeyFileError(f"expected a single [ciphertext] section, got {cp.sections()}")
    sec = cp["ciphertext"]
    _check_fields(sec, _CIPHERTEXT_FIELDS)
    try:
        value = GroupElement(_int(sec, "value"), _int(sec, "modulus"))
    except MaskCryptError as exc:
        raise KeyFileError(f"invalid ciphertext value: {exc}") from exc
    return sec["scheme"], Ciphertext(value), sec["mode"]
