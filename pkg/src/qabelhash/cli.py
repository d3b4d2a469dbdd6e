"""Command-line front end: generation, certification, hashing, comparison, reports.

Every command is a thin composition of library calls; outputs are JSON on
stdout and deterministic for fixed flags and seeds.  Exit codes: 0 success,
2 usage or parse error, 3 capacity error, 4 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from typing import Sequence

from . import biased_sets, hashing, protocols
from .biased_sets import BIAS_TOLERANCE, BiasedSet
from .errors import CertificationError, QabelhashError, UsageError
from .groups import AbelianGroup, Element

EXIT_CODES = {"usage": 2, "parse": 2, "capacity": 3, "certification": 4}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures through the JSON path
        raise UsageError(message)


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, separators=(",", ": ")))


def _parse_orders(args) -> AbelianGroup:
    if args.cyclic is not None:
        return AbelianGroup((args.cyclic,))
    try:
        orders = tuple(int(part) for part in args.group.split(","))
    except ValueError as exc:
        raise UsageError(f"cannot parse --group {args.group!r}: {exc}") from exc
    return AbelianGroup(orders)


def _parse_message(text: str, group: AbelianGroup) -> Element:
    if text.startswith("0b"):
        if not group.is_boolean:
            raise UsageError("0b... bitstring messages only apply to Z_2^n groups")
        bits = text[2:]
        if len(bits) != len(group.orders) or set(bits) - {"0", "1"}:
            raise UsageError(
                f"bitstring needs exactly {len(group.orders)} binary digits, got {text!r}"
            )
        return tuple(int(ch) for ch in bits)
    try:
        residues = [int(part) for part in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"cannot parse message {text!r}: {exc}") from exc
    return group.element(residues)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise UsageError(message)


def _load_set(path: str, verify: bool) -> BiasedSet:
    return biased_sets.load_set(path, verify=verify)


# -- commands ----------------------------------------------------------------


def _cmd_gen_set(args) -> int:
    group = _parse_orders(args)
    if args.method == "random":
        _require(args.epsilon is not None, "random method requires --epsilon")
        _require(args.size is None and args.m is None, "--size/--m do not apply to random")
        bset = biased_sets.random_biased_set(
            group,
            epsilon=args.epsilon,
            c=4.0 if args.c is None else args.c,
            seed=0 if args.seed is None else args.seed,
            max_attempts=16 if args.max_attempts is None else args.max_attempts,
        )
    elif args.method == "greedy":
        _require(args.size is not None, "greedy method requires --size")
        _require(
            all(flag is None for flag in (args.epsilon, args.c, args.m, args.seed, args.max_attempts)),
            "greedy takes only --size",
        )
        bset = biased_sets.greedy_biased_set(group, args.size)
    else:  # aghp
        _require(args.m is not None, "aghp method requires --m")
        _require(
            all(flag is None for flag in (args.epsilon, args.c, args.size, args.seed, args.max_attempts)),
            "aghp takes only --m",
        )
        _require(group.is_boolean, "aghp builds sets over Z_2^n; use --group 2,2,...")
        bset = biased_sets.aghp_set(len(group.orders), args.m)
    biased_sets.save_set(bset, args.out)
    _print_json(
        {
            "out": args.out,
            "size": bset.size,
            "certified_epsilon": bset.certified_epsilon,
            "certification": bset.certification,
            "set_id": bset.set_id,
        }
    )
    return 0


def _cmd_certify(args) -> int:
    bset = _load_set(args.file, args.verify)
    if args.sampled is not None:
        bias = biased_sets.bias_sampled(bset, args.sampled, 0 if args.seed is None else args.seed)
        mode = "sampled"
    else:
        _require(args.seed is None, "--seed only applies with --sampled")
        bias = biased_sets.bias_exact(bset)
        mode = "exact"
    _print_json({"bias": bias, "mode": mode, "stored_epsilon": bset.certified_epsilon})
    if bset.certified_epsilon is None:
        raise CertificationError("set carries no stored epsilon", best_bias=bias)
    if bias > bset.certified_epsilon + BIAS_TOLERANCE:
        raise CertificationError(
            f"recomputed bias {bias} exceeds stored epsilon {bset.certified_epsilon}",
            best_bias=bias,
        )
    return 0


def _cmd_hash(args) -> int:
    bset = _load_set(args.set, args.verify)
    message = _parse_message(args.message, bset.group)
    h = hashing.hash_state(bset, message)
    hashing.save_hash(h, args.out)
    _print_json({"out": args.out, "qubits": h.qubits, "set_id": h.set_id})
    return 0


def _cmd_compare(args) -> int:
    h1 = hashing.load_hash(args.hash1)
    h2 = hashing.load_hash(args.hash2)
    modulus = abs(hashing.inner_product(h1, h2))
    print(round(modulus, 12))
    return 0


def _cmd_spectrum(args) -> int:
    bset = _load_set(args.set, args.verify)
    spectrum = hashing.collision_spectrum(bset)
    _print_json(
        {
            "max_modulus": spectrum.max_modulus,
            "witness": [list(spectrum.witness[0]), list(spectrum.witness[1])],
            "num_pairs": spectrum.num_pairs,
            "histogram_counts": list(spectrum.histogram_counts),
            "histogram_edges": list(spectrum.histogram_edges),
        }
    )
    return 0


def _cmd_swap_test(args) -> int:
    bset = _load_set(args.set, args.verify)
    a = _parse_message(args.a, bset.group)
    b = _parse_message(args.b, bset.group)
    transcript = protocols.equality_protocol(bset, a, b, args.rounds, args.seed)
    payload = protocols.transcript_to_payload(transcript)
    if args.shots:
        sample = protocols.swap_test_sample(
            hashing.hash_state(bset, a), hashing.hash_state(bset, b), args.shots, args.seed
        )
        payload["sample"] = asdict(sample)
    _print_json(payload)
    return 0


def _cmd_report(args) -> int:
    bset = _load_set(args.set, args.verify)
    epsilon = args.epsilon if args.epsilon is not None else bset.certified_epsilon
    _require(
        epsilon is not None,
        "set carries no certified epsilon; pass --epsilon explicitly",
    )
    size = hashing.size_report(bset, epsilon)
    irrev = protocols.irreversibility_report(bset)
    _print_json({"size": asdict(size), "irreversibility": asdict(irrev)})
    return 0


def _cmd_code_matrix(args) -> int:
    bset = _load_set(args.set, args.verify)
    cm = hashing.code_matrix(bset)
    payload = {
        "version": 1,
        "set_id": bset.set_id,
        "n": len(bset.group.orders),
        "num_positions": bset.size,
        "rows": ["".join(str(b) for b in row) for row in cm.matrix],
        "balance": {
            "max_imbalance": cm.max_imbalance,
            "witness_message": list(cm.witness_message),
            "min_weight": int(cm.weights.min()),
            "max_weight": int(cm.weights.max()),
        },
    }
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    _print_json(
        {
            "out": args.out,
            "n": len(bset.group.orders),
            "max_imbalance": cm.max_imbalance,
            "witness_message": list(cm.witness_message),
        }
    )
    return 0


# -- wiring -------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="qabelhash", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-set", help="construct a biased set and save it")
    target = gen.add_mutually_exclusive_group(required=True)
    target.add_argument("--group", help="comma-separated cyclic factor orders, e.g. 2,2,2")
    target.add_argument("--cyclic", type=int, help="single cyclic group Z_q")
    gen.add_argument("--method", choices=("random", "greedy", "aghp"), required=True)
    gen.add_argument("--epsilon", type=float, default=None, help="target bias (random)")
    gen.add_argument("--c", type=float, default=None, help="sample-size constant (random, default 4)")
    gen.add_argument("--size", type=int, default=None, help="set size (greedy)")
    gen.add_argument("--m", type=int, default=None, help="field degree (aghp)")
    gen.add_argument("--seed", type=int, default=None, help="base seed (random, default 0)")
    gen.add_argument("--max-attempts", type=int, default=None, help="resampling cap (random, default 16)")
    gen.add_argument("--out", required=True)
    gen.set_defaults(handler=_cmd_gen_set)

    certify = sub.add_parser("certify", help="recompute a set's bias and check its claim")
    certify.add_argument("file")
    certify.add_argument("--sampled", type=int, default=None, help="sample this many characters instead of exact")
    certify.add_argument("--seed", type=int, default=None, help="sampling seed (with --sampled)")
    certify.add_argument("--verify", action="store_true", help="re-check the stored certification on load")
    certify.set_defaults(handler=_cmd_certify)

    hash_cmd = sub.add_parser("hash", help="hash a message against a saved set")
    hash_cmd.add_argument("--set", required=True)
    hash_cmd.add_argument("--message", required=True, help="comma-separated residues, or 0b... for Z_2^n")
    hash_cmd.add_argument("--out", required=True)
    hash_cmd.add_argument("--verify", action="store_true")
    hash_cmd.set_defaults(handler=_cmd_hash)

    compare = sub.add_parser("compare", help="print |<h1|h2>| for two saved hashes")
    compare.add_argument("hash1")
    compare.add_argument("hash2")
    compare.set_defaults(handler=_cmd_compare)

    spectrum = sub.add_parser("spectrum", help="exhaustive pairwise collision spectrum")
    spectrum.add_argument("--set", required=True)
    spectrum.add_argument("--verify", action="store_true")
    spectrum.set_defaults(handler=_cmd_spectrum)

    swap = sub.add_parser("swap-test", help="equality protocol via repeated SWAP tests")
    swap.add_argument("--set", required=True)
    swap.add_argument("--a", required=True)
    swap.add_argument("--b", required=True)
    swap.add_argument("--rounds", type=int, default=1)
    swap.add_argument("--shots", type=int, default=0, help="also sample this many one-shot outcomes")
    swap.add_argument("--seed", type=int, default=0)
    swap.add_argument("--verify", action="store_true")
    swap.set_defaults(handler=_cmd_swap_test)

    report = sub.add_parser("report", help="hash-size and irreversibility accounting")
    report.add_argument("--set", required=True)
    report.add_argument("--epsilon", type=float, default=None)
    report.add_argument("--verify", action="store_true")
    report.set_defaults(handler=_cmd_report)

    code = sub.add_parser("code-matrix", help="derive the balanced code of a Z_2^n set")
    code.add_argument("--set", required=True)
    code.add_argument("--out", required=True)
    code.add_argument("--verify", action="store_true")
    code.set_defaults(handler=_cmd_code_matrix)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except QabelhashError as exc:
        print(
            json.dumps({"error": exc.kind, "message": str(exc)}, sort_keys=True),
            file=sys.stderr,
        )
        return EXIT_CODES.get(exc.kind, 1)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
