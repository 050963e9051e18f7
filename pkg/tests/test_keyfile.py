import configparser

import pytest

from maskcrypt.errors import KeyFileError
from maskcrypt.groups import GroupElement
from maskcrypt.keyfile import dump_ciphertext, dump_public, dump_secret, load_ciphertext, load_key
from maskcrypt.numtheory import Rng
from maskcrypt.paramgen import build_field_mask_params, build_ring_with_orders
from maskcrypt.schemes import (
    Ciphertext,
    dh_setup,
    elgamal_keygen,
    mask_keygen,
    rsa_mask_keygen,
)


def _all_keys():
    rng = Rng(12)
    yield mask_keygen(build_field_mask_params([3, 4], [5], 64, rng)[1])
    yield mask_keygen(build_ring_with_orders([3], [5, 7], 128, rng)[1])
    yield rsa_mask_keygen(build_ring_with_orders([3], [5, 7], 128, rng)[1], 65537)
    yield elgamal_keygen(3, 5, 64, rng)
    yield dh_setup(3, 5, 64, rng)


@pytest.mark.parametrize("keys", list(_all_keys()), ids=lambda k: k.public.scheme)
def test_roundtrip(keys):
    pub_text, sec_text = dump_public(keys), dump_secret(keys)
    assert load_key(sec_text) == keys
    assert load_key(pub_text) == keys.public
    cp = configparser.ConfigParser(interpolation=None)
    cp.read_string(pub_text)
    assert cp.sections() == ["public"]
    full = configparser.ConfigParser(interpolation=None)
    full.read_string(sec_text)
    assert dict(full["public"]) == dict(cp["public"]) and len(full["secret"]) > 0


def test_secret_section_must_match_public():
    field_keys, _, _, elgamal_keys, _ = _all_keys()
    secret_part = dump_secret(field_keys).split("[secret]")[1]
    with pytest.raises(KeyFileError):
        load_key(dump_public(elgamal_keys) + "[secret]" + secret_part)


def test_rejects_bad_input():
    with pytest.raises(KeyFileError):
        load_key("[public]\nscheme = field-mask\nversion = 2\nmodulus = 31\nh_gens = 5\nu_gens = 2\n")
    with pytest.raises(KeyFileError):
        load_key("[public]\nscheme = other\n")
    with pytest.raises(KeyFileError):
        load_key("[public]\nscheme = field-mask\nversion = 1\nmodulus = 31\nh_gens = 5\n")
    with pytest.raises(KeyFileError):
        load_key("[public]\nscheme = field-mask\nversion = 1\nmodulus = 31\nh_gens = 0\nu_gens = 2\n")
    with pytest.raises(KeyFileError):
        load_key("no sections")


def test_ciphertext_roundtrip():
    c = Ciphertext(GroupElement(10, 31))
    assert load_ciphertext(dump_ciphertext("field-mask", c, "kem")) == ("field-mask", c, "kem")
    with pytest.raises(KeyFileError):
        load_ciphertext("[ciphertext]\nscheme = field-mask\nmodulus = 31\nvalue = 31\nmode = kem\n")
    with pytest.raises(KeyFileError):
        load_ciphertext("[ciphertext]\nscheme = field-mask\nmodulus = 31\nvalue = 10\n")
