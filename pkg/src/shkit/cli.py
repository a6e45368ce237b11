"""Command-line front end.

Exit codes: 0 when the check holds (or the command succeeded), 1 when a
counterexample or failed claim was found, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .algebra import AlgebraError, FiniteAlgebra, load_algebra
from .catalog import CATALOG, check, get_identity
from .classify import DEFAULT_MAX_LEVEL, classify, level
from .enumerator import SearchSpaceExceeded, SearchSpec, search
from .paper import BUILTIN_NAMES, builtin, claims_table, verify_paper
from .terms import TermSyntaxError, UnboundVariable, evaluate, load_identities

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
BUILTIN_PREFIX = "builtin:"


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _load(ref: str) -> FiniteAlgebra:
    """Read an algebra file, or one of the worked examples as ``builtin:NAME``."""
    if ref.startswith(BUILTIN_PREFIX):
        try:
            return builtin(ref[len(BUILTIN_PREFIX):])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
    try:
        return load_algebra(ref)
    except OSError as exc:
        raise InputError(f"cannot read {ref}: {exc.strerror}") from None


def _identity(ref: str):
    try:
        return get_identity(ref)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None


def _default_threads() -> int:
    return os.cpu_count() or 1


# -- subcommands ----------------------------------------------------------------


def cmd_check(args: argparse.Namespace) -> int:
    alg = _load(args.algebra)
    idents = [_identity(ref) for ref in args.identity]
    for path in args.identities or []:
        try:
            idents.extend(load_identities(path))
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if not idents:
        raise InputError("no identity given")
    results = [check(alg, ident, threads=args.threads) for ident in idents]
    if args.json:
        payload: Any = results[0].to_dict() if len(results) == 1 else [r.to_dict() for r in results]
        print(_dumps(payload))
    else:
        for res in results:
            print(res)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_classify(args: argparse.Namespace) -> int:
    report = classify(_load(args.algebra), args.max)
    if args.json:
        print(_dumps(report.to_dict()))
        return EXIT_OK
    data = report.to_dict()
    width = max(map(len, data["memberships"]))
    for name, member in data["memberships"].items():
        print(f"{name.ljust(width)}  {'yes' if member else 'no'}")
    print(f"{'level'.ljust(width)}  {data['level']}")
    if data["level_alt"] is not None:
        print(f"{'level_alt'.ljust(width)}  {data['level_alt']}")
    return EXIT_OK


def cmd_level(args: argparse.Namespace) -> int:
    result = level(_load(args.algebra), args.max)
    print(_dumps({"level": result.to_json()}) if args.json else result)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    alg = _load(args.algebra)
    env: dict[str, str] = {}
    for item in args.assignment:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise InputError(f"assignment {item!r} is not of the form var=element")
        env[name.strip()] = value.strip()
    try:
        value = evaluate(args.term, alg, env)
    except UnboundVariable as exc:
        raise InputError(f"no value given for variable {exc.args[0]}") from None
    except KeyError as exc:
        raise InputError(f"unknown element {exc.args[0]!r}") from None
    label = alg.labels[value]
    print(_dumps({"term": args.term, "assignment": env, "value": label}) if args.json else label)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    try:
        spec = SearchSpec.build(
            [_identity(r) for r in args.satisfy],
            [_identity(r) for r in args.falsify],
            max_lattice_size=args.max_size,
            max_results=args.limit,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    algebras = search(spec, threads=args.threads)
    lines = [
        json.dumps({"algebra": alg.to_dict(), "classification": classify(alg, args.max).to_dict()}, ensure_ascii=False)
        for alg in algebras
    ]
    text = "".join(line + "\n" for line in lines)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        summary = {"count": len(lines), "out": args.out}
        print(_dumps(summary) if args.json else f"wrote {len(lines)} algebras to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify_paper(args: argparse.Namespace) -> int:
    claims = verify_paper(args.corpus_size)
    if args.json:
        failed = sum(c.status == "fail" for c in claims)
        print(_dumps({"claims": [c.to_dict() for c in claims], "failed": failed}))
    else:
        print(claims_table(claims))
    return EXIT_FAIL if any(c.status == "fail" for c in claims) else EXIT_OK


def cmd_builtin(args: argparse.Namespace) -> int:
    text = _dumps(builtin(args.name).to_dict()) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_catalog(args: argparse.Namespace) -> int:
    if args.json:
        print(_dumps({name: str(ident) for name, ident in CATALOG.items()}))
    else:
        width = max(map(len, CATALOG))
        for name, ident in CATALOG.items():
            print(f"{name.ljust(width)}  {ident}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=_default_threads(), help="worker count (results do not depend on it)")

    parser = argparse.ArgumentParser(
        prog="shkit",
        description="Check identities, levels and variety memberships of finite semi-Heyting algebras with a negation.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    algebra_help = f"algebra JSON file, or {BUILTIN_PREFIX}NAME for one of: {', '.join(BUILTIN_NAMES)}"

    p = sub.add_parser("check", parents=[common], help="test identities under every assignment")
    p.add_argument("algebra", help=algebra_help)
    p.add_argument("identity", nargs="*", help="catalog name (L<n>, Lalt<n> included) or 'lhs = rhs'")
    p.add_argument("--identities", action="append", metavar="FILE", help="file of 'name : lhs = rhs' lines")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="variety memberships and level")
    p.add_argument("algebra", help=algebra_help)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_LEVEL, help="largest level tried")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("level", parents=[common], help="smallest n with t_n = t_(n+1)")
    p.add_argument("algebra", help=algebra_help)
    p.add_argument("--max", type=int, default=DEFAULT_MAX_LEVEL, help="largest level tried")
    p.set_defaults(func=cmd_level)

    p = sub.add_parser("eval", parents=[common], help="evaluate a term")
    p.add_argument("algebra", help=algebra_help)
    p.add_argument("term")
    p.add_argument("assignment", nargs="*", help="var=element")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("enumerate", parents=[common], help="search algebras by identities, writing NDJSON")
    p.add_argument("--max-size", type=int, default=5, help="largest lattice size")
    p.add_argument("--satisfy", action="append", default=[], metavar="IDENTITY")
    p.add_argument("--falsify", action="append", default=[], metavar="IDENTITY")
    p.add_argument("--limit", type=int, default=None, help="stop after this many algebras")
    p.add_argument("--max", type=int, default=DEFAULT_MAX_LEVEL, help="largest level tried when classifying")
    p.add_argument("--out", help="NDJSON output file (default: stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-paper", parents=[common], help="re-check the worked examples and corpus claims")
    p.add_argument("--corpus-size", type=int, default=8, help="largest lattice size in the corpus")
    p.set_defaults(func=cmd_verify_paper)

    p = sub.add_parser("builtin", parents=[common], help="print a worked-example algebra as JSON")
    p.add_argument("name", choices=BUILTIN_NAMES)
    p.add_argument("--out", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("catalog", parents=[common], help="list the named identities")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("shkit: error: --threads must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, AlgebraError, TermSyntaxError, SearchSpaceExceeded) as exc:
        print(f"shkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
