"""Command line interface.

Subcommands: dmat, blocks, invert, det, verify, gen.  Exit codes: 0 on
success, 1 when an exact identity fails (a closed form disagreeing with the
elimination oracle, or a certificate that theory guarantees failing to
verify), 2 on malformed input or violated preconditions.  Output bytes are
deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .linalg import (
    RMatrix,
    SingularMatrixError,
    cofactor_sum,
    det_bareiss,
    inverse_exact,
    matrix_from_csv,
    matrix_to_csv,
)
from .graphs import (
    Graph,
    GraphFormatError,
    LabelMismatchError,
    NotStronglyConnectedError,
    format_edge_list,
    graph_from_json,
    graph_to_json,
    parse_edge_list,
)
from .blocks import block_decompose, decomposition_to_json
from .bags import (
    FirstWeightZeroError,
    ZeroRowSumInverseError,
    bag_inverse,
    classify,
    generic_bag,
    verify_bag,
)
from .compose import (
    BlockNotExpressibleError,
    NotCactoidError,
    cactoid_det,
    composition_to_json,
    effective_distance_matrix,
    invert_distance_matrix,
)
from .generators import GenSpec, gen_cactoid, gen_tree

_INPUT_ERRORS = (
    GraphFormatError,
    NotStronglyConnectedError,
    LabelMismatchError,
    NotCactoidError,
    BlockNotExpressibleError,
    FirstWeightZeroError,
    ZeroRowSumInverseError,
    SingularMatrixError,
    OSError,
    ValueError,
)


def _load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_edge_list(text)


def _load_matrix(path: str) -> RMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return matrix_from_csv(fh.read())


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- subcommands -----------------------------------------------------------


def _cmd_dmat(args) -> int:
    g = _load_graph(args.graph)
    d = effective_distance_matrix(g)
    if args.format == "csv":
        _emit(matrix_to_csv(d), args.out)
    else:
        obj = {
            "labels": list(d.labels),
            "matrix": [[str(x) for x in row] for row in d.rows],
        }
        _emit(_json_dumps(obj), args.out)
    return 0


def _cmd_blocks(args) -> int:
    g = _load_graph(args.graph)
    dec = block_decompose(g)
    _emit(decomposition_to_json(dec), args.out)
    return 0


def _cmd_invert(args) -> int:
    if args.matrix:
        d = _load_matrix(args.matrix)
        bag = generic_bag(d)
        verdict = verify_bag(bag)
        inverse = bag_inverse(bag)
        obj = {
            "lambda": str(bag.lam),
            "left_ok": verdict.left_ok,
            "right_ok": verdict.right_ok,
            "inverse": [[str(x) for x in row] for row in inverse.rows],
        }
        _emit(_json_dumps(obj), args.out)
        if args.check and inverse != inverse_exact(d):
            print("check failed: certificate inverse != elimination inverse",
                  file=sys.stderr)
            return 1
        return 0
    g = _load_graph(args.graph)
    res = invert_distance_matrix(g)
    _emit(composition_to_json(res), args.out)
    if args.check:
        if res.inverse is not None:
            if res.inverse != inverse_exact(res.bag.dist):
                print("check failed: composed inverse != elimination inverse",
                      file=sys.stderr)
                return 1
        else:
            if det_bareiss(res.bag.dist) != 0:
                print("check failed: lambda is zero but the oracle determinant "
                      "is not", file=sys.stderr)
                return 1
    return 0


def _cmd_det(args) -> int:
    if args.matrix:
        if args.method != "oracle":
            print("--matrix supports --method oracle only", file=sys.stderr)
            return 2
        d = _load_matrix(args.matrix)
        obj = {"method": "oracle",
               "det": str(det_bareiss(d)), "cof": str(cofactor_sum(d))}
        _emit(_json_dumps(obj), args.out)
        return 0
    g = _load_graph(args.graph)
    obj: dict = {"method": args.method}
    formula = oracle = None
    if args.method in ("formula", "both"):
        det_f, cof_f = cactoid_det(g)
        formula = (det_f, cof_f)
        obj["formula"] = {"det": str(det_f), "cof": str(cof_f)}
    if args.method in ("oracle", "both"):
        d = effective_distance_matrix(g)
        det_o, cof_o = det_bareiss(d), cofactor_sum(d)
        oracle = (det_o, cof_o)
        obj["oracle"] = {"det": str(det_o), "cof": str(cof_o)}
    if args.method == "both":
        obj["agree"] = formula == oracle
    _emit(_json_dumps(obj), args.out)
    if args.method == "both" and formula != oracle:
        print("closed form and oracle disagree", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args) -> int:
    if args.matrix:
        d = _load_matrix(args.matrix)
        flags = classify(d)
        obj = {
            "classification": {
                "invertible": flags.invertible,
                "left_expressible": flags.left_expressible,
                "right_expressible": flags.right_expressible,
            }
        }
        _emit(_json_dumps(obj), args.out)
        return 0
    g = _load_graph(args.graph)
    res = invert_distance_matrix(g)
    verdict = verify_bag(res.bag)
    flags = classify(res.bag.dist)
    obj = {
        "per_block": [
            {
                "index": r.index,
                "lambda": str(r.lam),
                "left_ok": r.verdict.left_ok,
                "right_ok": r.verdict.right_ok,
            }
            for r in res.per_block
        ],
        "composed": {
            "lambda": str(res.lambda_total),
            "left_ok": verdict.left_ok,
            "right_ok": verdict.right_ok,
        },
        "classification": {
            "invertible": flags.invertible,
            "left_expressible": flags.left_expressible,
            "right_expressible": flags.right_expressible,
        },
    }
    _emit(_json_dumps(obj), args.out)
    guaranteed = all(r.verdict.left_ok and r.verdict.right_ok for r in res.per_block)
    if not guaranteed or not (verdict.left_ok and verdict.right_ok):
        print("a certificate that theory guarantees failed to verify",
              file=sys.stderr)
        return 1
    return 0


def _cmd_gen(args) -> int:
    seed = args.seed
    env_seed = os.environ.get("BLOCKINV_SEED")
    if env_seed is not None:
        seed = int(env_seed)
    if args.kind == "tree":
        g = gen_tree(args.n, seed)
    else:
        spec = GenSpec(
            seed=seed,
            block_count=args.blocks,
            cycle_length_range=(args.min_len, args.max_len),
            weight_kind=args.weights,
            bound=args.bound,
            allow_zero_lambda=args.zero_lambda_block,
        )
        g = gen_cactoid(spec)
    text = graph_to_json(g) if args.format == "json" else format_edge_list(g)
    _emit(text, args.out)
    return 0


# -- entry point -------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockinv",
        description="Exact distance-matrix inversion via block decomposition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dmat", help="distance matrix of a graph file")
    p.add_argument("graph")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_dmat)

    p = sub.add_parser("blocks", help="block decomposition as JSON")
    p.add_argument("graph")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_blocks)

    p = sub.add_parser("invert", help="compose block certificates and invert")
    p.add_argument("graph", nargs="?")
    p.add_argument("--matrix", help="raw CSV matrix instead of a graph")
    p.add_argument("--check", action="store_true",
                   help="compare against the elimination oracle; exit 1 on mismatch")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("det", help="determinant and cofactor sum")
    p.add_argument("graph", nargs="?")
    p.add_argument("--matrix", help="raw CSV matrix instead of a graph")
    p.add_argument("--method", choices=("formula", "oracle", "both"), default="both")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_det)

    p = sub.add_parser("verify", help="check certificates and classify")
    p.add_argument("graph", nargs="?")
    p.add_argument("--matrix", help="raw CSV matrix instead of a graph")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("kind", choices=("cactoid", "tree"))
    p.add_argument("--seed", type=int, default=0,
                   help="overridden by BLOCKINV_SEED when set")
    p.add_argument("--blocks", type=int, default=3)
    p.add_argument("--min-len", type=int, default=2)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--weights", choices=("unit", "positive", "signed"),
                   default="unit")
    p.add_argument("--bound", type=int, default=10)
    p.add_argument("--zero-lambda-block", action="store_true",
                   help="force one block's second weight to zero (signed only)")
    p.add_argument("--n", type=int, default=8, help="tree size")
    p.add_argument("--format", choices=("edges", "json"), default="edges")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command in ("invert", "det", "verify"):
        if bool(args.graph) == bool(args.matrix):
            print("exactly one of a graph file or --matrix is required",
                  file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
