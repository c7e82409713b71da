"""Command-line interface.

Exit codes: 0 success, 1 semantic mismatch, 2 input error, 3 internal error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .canonical import invariant_factors, same_decomposition, similar, strictly_equivalent
from .errors import InternalError, UsageError
from .field import Field
from .pencil import (
    BlockMultiset,
    Decomposition,
    block,
    decomposition_from_json,
    decomposition_to_json,
    direct_sum,
    dump_json,
    load_json,
    pencil_from_json,
    pencil_to_json,
    random_multiset,
    random_regular,
    regular_block,
    scramble,
)
from .regularize import decompose

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load_pencil(path):
    return pencil_from_json(load_json(path))


def cmd_decompose(args) -> int:
    p = _load_pencil(args.file)
    d = decompose(p)
    _write(dump_json(decomposition_to_json(d)), args.out)
    return EXIT_OK


def build_instance(blocks: BlockMultiset, D, seed: int):
    """Direct sum of ``(I_r, D)`` and ``blocks``, scrambled with ``seed``."""
    field = D.field
    parts = [regular_block(D)] + [block(kind, k, field) for kind, k in blocks]
    p, _, _ = scramble(direct_sum(parts, field), seed)
    return p


def cmd_generate(args) -> int:
    field = Field.from_name(args.field)
    rng = random.Random(args.seed)
    if args.blocks == "random":
        blocks = random_multiset(rng, args.max_size)
    else:
        blocks = BlockMultiset.parse_spec(args.blocks)
    r = args.regular if args.regular is not None else rng.randint(0, 4)
    if r < 0:
        raise UsageError("--regular must be nonnegative")
    D = random_regular(field, r, rng)
    p = build_instance(blocks, D, rng.getrandbits(64))
    truth = Decomposition(blocks, D)
    os.makedirs(args.out, exist_ok=True)
    pencil_path = os.path.join(args.out, "pencil.json")
    truth_path = os.path.join(args.out, "truth.json")
    _write(dump_json(pencil_to_json(p)), pencil_path)
    truth_doc = decomposition_to_json(truth, with_field=True, extra={"seed": args.seed})
    del truth_doc["dims"]
    _write(dump_json(truth_doc), truth_path)
    print(f"seed={args.seed} field={field!r} m={p.m} n={p.n} r={r} blocks={blocks!r} "
          f"-> {pencil_path}, {truth_path}", file=sys.stderr)
    return EXIT_OK


def _diff(expected: Decomposition, actual: Decomposition) -> dict:
    return {
        "match": False,
        "blocks": {"expected": expected.blocks.to_json(), "actual": actual.blocks.to_json()},
        "r": {"expected": expected.r, "actual": actual.r},
        "D_similar": expected.r == actual.r and similar(expected.D, actual.D),
        "invariant_factors": {"expected": str(invariant_factors(expected.D)),
                              "actual": str(invariant_factors(actual.D))},
    }


def cmd_verify(args) -> int:
    p = _load_pencil(args.pencil)
    truth = decomposition_from_json(load_json(args.truth))
    if truth.field != p.field:
        raise UsageError(f"truth is over {truth.field!r} but the pencil is over {p.field!r}")
    d = decompose(p)
    if same_decomposition(d, truth):
        print(dump_json({"match": True}), end="")
        return EXIT_OK
    print(dump_json(_diff(truth, d)), end="")
    return EXIT_MISMATCH


def cmd_equiv(args) -> int:
    p, q = _load_pencil(args.a), _load_pencil(args.b)
    eq = strictly_equivalent(p, q)
    doc = {"equivalent": eq,
           "a": decomposition_to_json(decompose(p)),
           "b": decomposition_to_json(decompose(q))}
    print(dump_json(doc), end="")
    return EXIT_OK if eq else EXIT_MISMATCH


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pencilreg",
        description="Regularizing decompositions of matrix pencils in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="decompose a pencil JSON file")
    p.add_argument("file")
    p.add_argument("--out", help="write the decomposition here instead of stdout")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("generate", help="write a scrambled pencil and its ground truth")
    p.add_argument("--blocks", default="random",
                   help='singular blocks as "I_J:3x1,L_R:2x2" (KIND:KxCOUNT) or "random"')
    p.add_argument("--regular", type=int, default=None, help="size of the regular part")
    p.add_argument("--field", default="rational", help='"rational" or "gf<p>", e.g. gf5')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=12,
                   help="bound on the summed block sizes when --blocks=random")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("verify", help="check a pencil against a ground-truth file")
    p.add_argument("pencil")
    p.add_argument("truth")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equiv", help="test two pencils for strict equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_equiv)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalError as e:
        print(f"internal error: {e}\nplease report this as a bug", file=sys.stderr)
        return EXIT_INTERNAL
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
