"""Command-line interface: key generation, file encryption/decryption,
attack demonstrations and oracle-verification suites.

Exit status is 0 exactly when the requested operation met its contract
(files written, attack demonstration succeeded, all verification cases
passed).  Diagnostics go to stderr; reports and key renderings go to
stdout; binary artifacts go to the declared paths.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Sequence

from .attacks import (
    format_ambiguity_report,
    format_cpa_report,
    identity_query_leak,
    run_ambiguity_demo,
    run_cpa_experiment,
    run_kpa_demo,
    format_kpa_report,
)
from .burnside import KeySet, key_element
from .cipher import (
    decrypt_message,
    encrypt_message,
    read_ciphertext_file,
    read_key_file,
    write_ciphertext_file,
    write_key_file,
)
from .verify import run_suite


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"indices must be comma-separated integers, got {text!r}") from None


def _cmd_keygen(args: argparse.Namespace) -> int:
    key_set = KeySet(_parse_indices(args.indices))
    if args.out:
        write_key_file(args.out, key_set)
        print(f"wrote key file {args.out}", file=sys.stderr)
    print(key_element(key_set).render())
    return 0


def _cmd_encrypt(args: argparse.Namespace) -> int:
    key_set = read_key_file(args.key)
    data = Path(args.in_path).read_bytes()
    ciphertext = encrypt_message(data, key_set)
    write_ciphertext_file(args.out_path, ciphertext)
    print(f"encrypted {len(data)} bytes -> {args.out_path}", file=sys.stderr)
    return 0


def _cmd_decrypt(args: argparse.Namespace) -> int:
    key_set = read_key_file(args.key)
    ciphertext = read_ciphertext_file(args.in_path)
    data = decrypt_message(ciphertext, key_set)
    Path(args.out_path).write_bytes(data)
    print(f"decrypted {len(data)} bytes -> {args.out_path}", file=sys.stderr)
    return 0


def _cmd_attack_cpa(args: argparse.Namespace) -> int:
    s0 = KeySet(_parse_indices(args.s0))
    s1 = KeySet(_parse_indices(args.s1))
    if args.seed is not None and not args.random:
        raise ValueError("--seed is only meaningful together with --random")
    seed: int | None = None
    if args.random:
        seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
        hidden_bit = random.Random(seed).randrange(2)
    else:
        hidden_bit = args.hidden_bit
    if args.identity_query:
        guess, response = identity_query_leak(s0, s1, hidden_bit)
        lines = [
            "CPA key-distinguishing attack (identity-class query)",
            f"candidates     : S0 = {s0}, S1 = {s1}",
            "oracle response:",
            *("    " + ln for ln in response.render().splitlines()),
            f"decision       : {guess}",
            "queries        : 1",
            f"hidden bit     : {hidden_bit}",
            f"outcome        : {'SUCCESS' if guess == hidden_bit else 'FAILURE'}",
        ]
        print("\n".join(lines))
        success = guess == hidden_bit
    else:
        result, experiment = run_cpa_experiment(s0, s1, hidden_bit)
        print(format_cpa_report(result, experiment))
        success = result.guess == hidden_bit
    if seed is not None:
        print(f"seed           : {seed}")
    return 0 if success else 1


def _cmd_attack_ambiguity(args: argparse.Namespace) -> int:
    result = run_ambiguity_demo(
        KeySet(_parse_indices(args.s)), args.window, args.count
    )
    print(format_ambiguity_report(result))
    return 0 if result.all_matrices_equal and result.all_elements_differ else 1


def _cmd_attack_kpa(args: argparse.Namespace) -> int:
    key_set = read_key_file(args.key)
    window = args.window if args.window else key_set.max_index
    result = run_kpa_demo(key_set, window, args.pairs, seed=args.seed)
    print(format_kpa_report(result))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_suite(
        args.suite,
        max_index=args.max_index,
        trials=args.trials,
        seed=args.seed,
        max_irrep=args.max_irrep,
    )
    for result in results:
        print(result.summary())
    return 0 if all(result.ok for result in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brc",
        description="Involutory-multiplier cipher over the O(2) Burnside ring.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    keygen = sub.add_parser("keygen", help="derive and store a key from its index set")
    keygen.add_argument("--indices", required=True, help="comma-separated distinct integers >= 1")
    keygen.add_argument("--out", help="key file to write (BRC-KEY v1)")
    keygen.set_defaults(func=_cmd_keygen)

    encrypt = sub.add_parser("encrypt", help="encrypt a 7-bit text file")
    encrypt.add_argument("--key", required=True, help="key file (BRC-KEY v1)")
    encrypt.add_argument("--in", dest="in_path", required=True, help="plaintext file")
    encrypt.add_argument("--out", dest="out_path", required=True, help="ciphertext file to write")
    encrypt.set_defaults(func=_cmd_encrypt)

    decrypt = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    decrypt.add_argument("--key", required=True, help="key file (BRC-KEY v1)")
    decrypt.add_argument("--in", dest="in_path", required=True, help="ciphertext file")
    decrypt.add_argument("--out", dest="out_path", required=True, help="plaintext file to write")
    decrypt.set_defaults(func=_cmd_decrypt)

    attack = sub.add_parser("attack", help="run an attack demonstration")
    attack_sub = attack.add_subparsers(dest="mode", required=True)

    cpa = attack_sub.add_parser("cpa", help="one-query key-distinguishing experiment")
    cpa.add_argument("--s0", required=True, help="first candidate key set, e.g. 2,3")
    cpa.add_argument("--s1", required=True, help="second candidate key set")
    pick = cpa.add_mutually_exclusive_group(required=True)
    pick.add_argument("--hidden-bit", type=int, choices=(0, 1), help="fixed hidden bit")
    pick.add_argument("--random", action="store_true", help="draw the hidden bit from a seeded RNG")
    cpa.add_argument("--seed", type=int, help="seed for --random (fresh one drawn and printed otherwise)")
    cpa.add_argument(
        "--identity-query",
        action="store_true",
        help="demonstrate the trivial identity-class query instead of the dihedral probe",
    )
    cpa.set_defaults(func=_cmd_attack_cpa)

    ambiguity = attack_sub.add_parser("ambiguity", help="prime-scaled keys identical on a window")
    ambiguity.add_argument("--s", required=True, help="base key set, e.g. 2,3")
    ambiguity.add_argument("--window", type=int, required=True, help="observation window size L")
    ambiguity.add_argument("--count", type=int, required=True, help="number of scaled twins")
    ambiguity.set_defaults(func=_cmd_attack_ambiguity)

    kpa = attack_sub.add_parser("kpa", help="known-plaintext operator recovery")
    kpa.add_argument("--key", required=True, help="key file for the hidden key")
    kpa.add_argument("--pairs", type=int, required=True, help="number of plaintext/ciphertext pairs")
    kpa.add_argument("--window", type=int, help="observation window (default: max key index)")
    kpa.add_argument("--seed", type=int, default=0, help="RNG seed for the sampled plaintexts")
    kpa.set_defaults(func=_cmd_attack_kpa)

    verify = sub.add_parser("verify", help="run an oracle-equivalence suite")
    verify.add_argument(
        "suite",
        choices=("table", "involution", "prop-coeff", "recurrence", "rf1", "all"),
    )
    verify.add_argument("--max-index", type=int, help="basis index bound for table/recurrence")
    verify.add_argument("--trials", type=int, help="random case count for involution/prop-coeff")
    verify.add_argument("--seed", type=int, default=0, help="RNG seed for randomized suites")
    verify.add_argument("--max-irrep", type=int, help="representation bound for rf1")
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
