"""Command line interface.

    maskcrypt keygen  --scheme S --r 3 --s 5 [--bits B] [--e E] [--seed N] --out PREFIX
    maskcrypt encrypt --key PREFIX.pub [--mode kem|exponent] [--message M | --in FILE] --out CT
    maskcrypt decrypt --key PREFIX.key --in CT [--out FILE]
    maskcrypt dh      --r 3 --s 5 [--bits B] [--seed N]
    maskcrypt oracle  order|exponent|member|qr ...
    maskcrypt game    [--key FILE | --scheme S --r R --s S --bits B] --adversary random|brute|zero --trials N

Exit codes: 0 ok, 1 DH mismatch, 2 parameter conflict, 3 search failure,
4 oracle input too large, 64 usage, 65 bad data file.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import codec
from .errors import (
    InvalidArgumentError,
    KeyFileError,
    MaskCryptError,
    NotInSubgroupError,
    ParameterConflictError,
    SearchFailure,
    TooLargeError,
)
from .groups import GroupElement, SubgroupSpec
from .keyfile import dump_ciphertext, dump_public, dump_secret, load_ciphertext, load_key
from .numtheory import Rng, lcm_all
from .oracles import (
    brute_exponent,
    brute_membership,
    brute_membership_adversary,
    brute_order,
    constant_adversary,
    ind_game,
    qr_by_euler,
    qr_by_order,
    random_adversary,
)
from .paramgen import build_field_mask_params, build_ring_with_orders
from .schemes import (
    DH,
    ELGAMAL,
    FIELD_MASK,
    RING_MASK,
    RSA_MASK,
    SCHEMES,
    ElGamalPublicKey,
    ElGamalSubgroupKeyPair,
    MaskKeyPair,
    RsaMaskKeyPair,
    RsaMaskPublicKey,
    dh_alice_message,
    dh_bob_message,
    dh_derive,
    dh_random_scalar,
    dh_setup,
    elgamal_decrypt,
    elgamal_encrypt,
    elgamal_keygen,
    mask_decrypt,
    mask_encrypt,
    mask_keygen,
    rsa_mask_decrypt,
    rsa_mask_encrypt,
    rsa_mask_keygen,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFLICT = 2
EXIT_SEARCH = 3
EXIT_TOO_LARGE = 4
EXIT_USAGE = 64
EXIT_DATA = 65

# prime sizes per profile; ring moduli get twice this
PROFILE_BITS = {"demo": 32, "standard": 1024}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rng(args) -> Rng:
    if args.seed is not None:
        return Rng(args.seed)
    rng = Rng.from_entropy()
    print(f"seed = {rng.initial_seed}", file=sys.stderr)
    return rng


def _bits(args, ring: bool) -> int:
    if args.bits is not None:
        return args.bits
    return PROFILE_BITS[args.profile] * (2 if ring else 1)


def _generate(scheme: str, r_list, s_list, bits: int, e: int, rng: Rng):
    if scheme == FIELD_MASK:
        return mask_keygen(build_field_mask_params(r_list, s_list, bits, rng)[1])
    if scheme in (RING_MASK, RSA_MASK):
        params = build_ring_with_orders(r_list, s_list, bits, rng)[1]
        return mask_keygen(params) if scheme == RING_MASK else rsa_mask_keygen(params, e)
    if scheme == ELGAMAL:
        return elgamal_keygen(lcm_all(r_list), lcm_all(s_list), bits, rng)
    return dh_setup(lcm_all(r_list), lcm_all(s_list), bits, rng)


def cmd_keygen(args) -> int:
    keys = _generate(
        args.scheme, args.r, args.s, _bits(args, args.scheme in (RING_MASK, RSA_MASK)), args.e, _rng(args)
    )
    pub_path, key_path = Path(f"{args.out}.pub"), Path(f"{args.out}.key")
    pub_path.write_text(dump_public(keys))
    key_path.write_text(dump_secret(keys))
    print(f"scheme = {args.scheme}")
    print(f"modulus = {keys.public.modulus}")
    print(f"public = {pub_path}")
    print(f"secret = {key_path}")
    return EXIT_OK


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _message_space(pub) -> SubgroupSpec:
    return pub.message_space if isinstance(pub, ElGamalPublicKey) else pub.U


def cmd_encrypt(args) -> int:
    obj = load_key(_read(args.key))
    pub = getattr(obj, "public", obj)
    if pub.scheme == DH:
        raise ParameterConflictError("dh-subgroup keys are for the dh command, not encryption")
    U = _message_space(pub)
    rng = _rng(args)
    if args.mode == codec.EXPONENT:
        if args.message is None and args.infile is None:
            raise UsageError("exponent mode needs --message or --in")
        text = str(args.message) if args.message is not None else _read(args.infile)
        try:
            m = int(text.strip())
        except ValueError:
            raise KeyFileError(f"message is not a decimal integer: {text.strip()!r}")
        encoded = codec.encode_exponent(m, U)
    else:
        encoded = codec.kem_sample(U, rng)
    u, coins = encoded.element, args.force_coins
    if isinstance(pub, ElGamalPublicKey):
        c = elgamal_encrypt(pub, u, rng, nonce=coins)
    else:
        mask = GroupElement(coins, pub.modulus) if coins is not None else None
        enc = rsa_mask_encrypt if isinstance(pub, RsaMaskPublicKey) else mask_encrypt
        c = enc(pub, u, rng, mask=mask)
    Path(args.out).write_text(dump_ciphertext(pub.scheme, c, args.mode))
    print(f"ciphertext = {int(c.value)}")
    if args.mode == codec.KEM:
        print(f"element = {int(u)}")
        print(f"secret = {u.to_bytes().hex()}")
    return EXIT_OK


def cmd_decrypt(args) -> int:
    keys = load_key(_read(args.key))
    if not isinstance(keys, (MaskKeyPair, RsaMaskKeyPair, ElGamalSubgroupKeyPair)):
        raise ParameterConflictError("decryption needs a secret key file of an encryption scheme")
    scheme, c, mode = load_ciphertext(_read(args.infile))
    if scheme != keys.public.scheme:
        raise ParameterConflictError(f"ciphertext is {scheme}, key is {keys.public.scheme}")
    if c.modulus != (keys.p if isinstance(keys, ElGamalSubgroupKeyPair) else keys.params.modulus):
        raise ParameterConflictError("ciphertext modulus does not match the key")
    if isinstance(keys, ElGamalSubgroupKeyPair):
        u = elgamal_decrypt(keys, c)
        U, s = keys.public.message_space, keys.s
    else:
        u = (rsa_mask_decrypt if isinstance(keys, RsaMaskKeyPair) else mask_decrypt)(keys, c)
        U, s = keys.params.U, None
    if mode == codec.EXPONENT:
        try:
            m = codec.decode_exponent(u, U, s)
        except NotInSubgroupError as exc:
            raise KeyFileError(f"ciphertext does not decrypt into the message space: {exc}") from exc
        if args.out:
            Path(args.out).write_text(f"{m}\n")
        else:
            print(m)
    elif mode == codec.KEM:
        print(f"element = {int(u)}")
        print(f"secret = {u.to_bytes().hex()}")
    else:
        raise KeyFileError(f"unknown ciphertext mode {mode!r}")
    return EXIT_OK


def cmd_dh(args) -> int:
    rng = _rng(args)
    session = dh_setup(lcm_all(args.r), lcm_all(args.s), _bits(args, False), rng)
    pub, p = session.public, session.p
    # Bob: scalar b, mask u from Alice's U; Alice: scalar a, mask h from Bob's H
    b, a = dh_random_scalar(p, rng), dh_random_scalar(p, rng)
    u = codec.kem_sample(pub.U, rng).element
    h = codec.kem_sample(pub.H, rng).element
    to_alice = dh_bob_message(session, b, u)
    to_bob = dh_alice_message(session, a, h)
    if args.tamper:
        to_alice = to_alice * pub.g
    bob_key = dh_derive(to_bob, b, session.r)
    alice_key = dh_derive(to_alice, a, session.s)
    lines = [
        f"p = {p}", f"g = {int(pub.g)}", f"r1 = {pub.r1}", f"s1 = {pub.s1}",
        f"h_gens = {','.join(map(str, pub.H.residues))}",
        f"u_gens = {','.join(map(str, pub.U.residues))}",
        f"bob_to_alice = {int(to_alice)}", f"alice_to_bob = {int(to_bob)}",
        f"bob_key = {int(bob_key)}", f"alice_key = {int(alice_key)}",
        "MATCH" if bob_key == alice_key else "MISMATCH",
    ]
    print("\n".join(lines))
    return EXIT_OK if bob_key == alice_key else EXIT_MISMATCH


def _elem(args) -> GroupElement:
    return GroupElement(args.elem % args.mod, args.mod)


def cmd_oracle(args) -> int:
    if args.problem == "order":
        print(brute_order(_elem(args), args.cap))
    elif args.problem == "exponent":
        print(brute_exponent(SubgroupSpec.of(args.mod, args.gens), args.cap))
    elif args.problem == "member":
        H = SubgroupSpec.of(args.mod, args.gens)
        print("yes" if brute_membership(_elem(args), H, args.cap) else "no")
    else:
        if args.p is not None and args.q is not None:
            f = GroupElement(args.elem % (args.p * args.q), args.p * args.q)
            answer = qr_by_euler(f, args.p, args.q)
        elif args.mod is not None:
            answer = qr_by_order(_elem(args), lambda g: brute_order(g, args.cap))
        else:
            raise UsageError("qr needs --p and --q, or --mod")
        print("yes" if answer else "no")
    return EXIT_OK


def cmd_game(args) -> int:
    rng = _rng(args)
    if args.key:
        obj = load_key(_read(args.key))
        pub = getattr(obj, "public", obj)
        if pub.scheme == DH:
            raise ParameterConflictError("the game needs an encryption scheme")
    else:
        if args.r is None or args.s is None:
            raise UsageError("game needs --key, or --r and --s")
        ring = args.scheme in (RING_MASK, RSA_MASK)
        pub = _generate(args.scheme, args.r, args.s, _bits(args, ring), args.e, rng.split()).public
    if args.adversary == "brute":
        adversary = brute_membership_adversary()
    elif args.adversary == "random":
        adversary = random_adversary(rng.split())
    else:
        adversary = constant_adversary(0)
    print(ind_game(pub, adversary, args.trials, rng))
    return EXIT_OK


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="maskcrypt", description="Subgroup-masking public-key toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_orders=True, required=True):
        p.add_argument("--seed", type=_seed, help="64-bit seed; omitted means OS entropy (printed)")
        p.add_argument("--bits", type=_positive, help="prime size (modulus size for ring schemes)")
        p.add_argument("--profile", choices=sorted(PROFILE_BITS), default="demo")
        if with_orders:
            p.add_argument("--r", type=_int_list, required=required, help="mask-side orders, comma-separated")
            p.add_argument("--s", type=_int_list, required=required, help="message-side orders, comma-separated")

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    common(p)
    p.add_argument("--e", type=_positive, default=65537, help="public exponent (rsa-mask)")
    p.add_argument("--out", required=True, help="output prefix; writes PREFIX.pub and PREFIX.key")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt under a public key file")
    p.add_argument("--key", required=True)
    p.add_argument("--mode", choices=codec.MODES, default=codec.KEM)
    p.add_argument("--message", type=int)
    p.add_argument("--in", dest="infile")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--force-coins", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt with a secret key file")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("dh", help="simulate the masked Diffie-Hellman exchange")
    common(p)
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_dh)

    p = sub.add_parser("oracle", help="brute-force decision problems")
    p.add_argument("problem", choices=("order", "exponent", "member", "qr"))
    p.add_argument("--mod", type=_positive)
    p.add_argument("--elem", type=int)
    p.add_argument("--gens", type=_int_list)
    p.add_argument("--p", type=_positive)
    p.add_argument("--q", type=_positive)
    p.add_argument("--cap", type=_positive, default=2**20)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("game", help="run the two-message distinguishing game")
    p.add_argument("--key")
    p.add_argument("--scheme", choices=[s for s in SCHEMES if s != DH], default=ELGAMAL)
    common(p, required=False)
    p.add_argument("--e", type=_positive, default=65537)
    p.add_argument("--adversary", choices=("random", "brute", "zero"), default="random")
    p.add_argument("--trials", type=_positive, required=True)
    p.set_defaults(func=cmd_game)
    return parser


_REQUIRED = {
    "order": ("mod", "elem"),
    "exponent": ("mod", "gens"),
    "member": ("mod", "gens", "elem"),
    "qr": ("elem",),
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "oracle":
            missing = [f"--{k}" for k in _REQUIRED[args.problem] if getattr(args, k) is None]
            if missing:
                parser.error(f"oracle {args.problem} needs {', '.join(missing)}")
    except SystemExit as exc:
        # argparse exits on --help (0) and on usage errors (64)
        return exc.code
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"maskcrypt: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyFileError as exc:
        print(f"maskcrypt: bad data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ParameterConflictError as exc:
        print(f"maskcrypt: parameter conflict: {exc}", file=sys.stderr)
        return EXIT_CONFLICT
    except SearchFailure as exc:
        print(f"maskcrypt: search failed: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except TooLargeError as exc:
        print(f"maskcrypt: too large: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InvalidArgumentError, MaskCryptError) as exc:
        print(f"maskcrypt: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
