"""Command-line front end: conversions, analysis, constructions, verification.

JSON goes to stdout, diagnostics to stderr.  Exit codes: 0 success/verified,
1 verified-false, 2 parse error, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .constructions import (
    ConstructionError,
    adual_line_family,
    ara_plus_one,
    bt_cone_elements,
    construct_h2cm,
)
from .monomials import (
    MonomialIdeal,
    ParseError,
    VarSet,
    alexander_dual_ideal,
    format_ideal,
    height,
    indeg,
    parse_ideal,
)
from .polyalg import Polynomial, parse_polynomial
from .simplicial import (
    alexander_dual,
    betti_table,
    complex_of_ideal,
    dual_complex_of_ideal,
    format_complex,
    has_linear_resolution,
    is_cohen_macaulay,
    parse_complex,
    pd,
    peel,
    reg,
    stanley_reisner_ideal,
)
from .verifier import fast_negative_check, verify_up_to_radical

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_face(text: str, ambient_n: int) -> VarSet:
    tokens = [t for chunk in text.split(",") for t in chunk.split()]
    indices = []
    for tok in tokens:
        tok = tok.strip()
        if tok.startswith("x"):
            tok = tok[1:]
        if not tok.isdigit():
            raise ParseError(f"bad face token {tok!r}", 1, 1)
        indices.append(int(tok))
    return VarSet.from_indices(indices, ambient_n)


def _parse_elements(text: str, ambient_n: int) -> list[Polynomial]:
    elements = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        elements.append(parse_polynomial(line, ambient_n))
    return elements


def _emit(payload: dict, as_json: bool, text: str | None = None) -> None:
    if as_json or text is None:
        print(json.dumps(payload, indent=2))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def cmd_ideal(args) -> int:
    complex_ = parse_complex(_read_text(args.input))
    ideal = stanley_reisner_ideal(complex_)
    _emit({"vars": ideal.ambient_n, "generators": ideal.generator_strings()},
          args.json, format_ideal(ideal))
    return EXIT_OK


def cmd_complex(args) -> int:
    ideal = parse_ideal(_read_text(args.input))
    complex_ = complex_of_ideal(ideal)
    payload = {"vars": complex_.ambient_n,
               "facets": [[f"x{i}" for i in f] for f in complex_.facets]}
    _emit(payload, args.json, format_complex(complex_))
    return EXIT_OK


def cmd_dual(args) -> int:
    text = _read_text(args.input)
    if args.kind == "ideal":
        dual = alexander_dual_ideal(parse_ideal(text))
        _emit({"vars": dual.ambient_n, "generators": dual.generator_strings()},
              args.json, format_ideal(dual))
    else:
        dual = alexander_dual(parse_complex(text))
        payload = {"vars": dual.ambient_n,
                   "facets": [[f"x{i}" for i in f] for f in dual.facets]}
        _emit(payload, args.json, format_complex(dual))
    return EXIT_OK


def cmd_analyze(args) -> int:
    ideal = parse_ideal(_read_text(args.input))
    if ideal.is_zero:
        raise ValueError("analysis needs a nonzero ideal")
    char = args.char
    table = betti_table(ideal, char)
    h = height(ideal)
    linear = has_linear_resolution(ideal, char)
    result = {
        "vars": ideal.ambient_n,
        "generators": ideal.generator_strings(),
        "height": h,
        "indeg": indeg(ideal),
        "pd": pd(ideal, char),
        "reg": reg(ideal, char),
        "linear": linear,
        "k": indeg(ideal) if linear else None,
        "cohen_macaulay": is_cohen_macaulay(ideal, char),
        "dual_generalized_tree": None,
        "char": char,
        "betti": table.to_json(),
    }
    if h >= 2:
        gamma = dual_complex_of_ideal(ideal)
        result["dual_generalized_tree"] = peel(gamma) is not None
    print(json.dumps(result, indent=2))
    return EXIT_OK


def cmd_construct(args) -> int:
    ideal = parse_ideal(_read_text(args.input))
    qs = None
    if args.elements:
        qs = _parse_elements(_read_text(args.elements), ideal.ambient_n)
    if args.method == "h2cm":
        witness = construct_h2cm(ideal, lmax=args.lmax)
    else:
        if qs is None:
            qs = [Polynomial.from_squarefree(g) for g in ideal.generators]
        face = _parse_face(args.face or "", ideal.ambient_n)
        if args.method == "prop31":
            witness = ara_plus_one(ideal, face, qs)
        else:
            witness = bt_cone_elements(complex_of_ideal(ideal), face, qs)
    print(json.dumps(witness.to_json(), indent=2))
    return EXIT_OK if witness.report.verdict else EXIT_UNVERIFIED


def cmd_family(args) -> int:
    ideal, q1, q2 = adual_line_family(args.n)
    payload = {
        "n": args.n,
        "ideal": ideal.generator_strings(),
        "elements": [str(q1), str(q2)],
    }
    text = format_ideal(ideal) + f"# elements\n{q1}\n{q2}\n"
    _emit(payload, args.json, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    ideal = parse_ideal(_read_text(args.input))
    elements = _parse_elements(_read_text(args.elements), ideal.ambient_n)
    report = verify_up_to_radical(elements, ideal, workers=args.workers)
    payload = report.to_json()
    if not report.verdict:
        witness = fast_negative_check(elements, ideal, seed=args.seed)
        payload["counterexample"] = witness.to_json() if witness else None
    print(json.dumps(payload, indent=2))
    return EXIT_OK if report.verdict else EXIT_UNVERIFIED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ararank",
        description="Witness pairs for squarefree monomial ideals, with exact certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex",
                       help="term order used for printing")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized filters")

    p = sub.add_parser("ideal", help="nonface ideal of a complex file")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("complex", help="complex of an ideal file")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("dual", help="dual ideal or dual complex")
    p.add_argument("input")
    p.add_argument("--kind", choices=("ideal", "complex"), default="ideal")
    common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("analyze", help="height, indeg, pd, reg, linearity, CM")
    p.add_argument("input")
    p.add_argument("--char", type=int, default=0, help="field characteristic (0 or prime)")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="emit a verified generator witness")
    p.add_argument("input")
    p.add_argument("--method", choices=("h2cm", "prop31", "bt-cone"), required=True)
    p.add_argument("--face", default=None, help="face like 'x3,x4' (default: empty face)")
    p.add_argument("--elements", default=None, help="file with known elements, one per line")
    p.add_argument("--lmax", type=int, default=None, help="power search bound")
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("family", help="family instance: ideal plus witness pair")
    p.add_argument("n", type=int)
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="verify elements against an ideal")
    p.add_argument("input")
    p.add_argument("elements")
    p.add_argument("--workers", type=int, default=1, help="parallel coverage queries")
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConstructionError as exc:
        print(f"construction failed verification: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED
    except ValueError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
