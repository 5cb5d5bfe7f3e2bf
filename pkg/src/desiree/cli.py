"""Command-line front door: check, entail, query, stats, export, fmt.

Output is deterministic: identical inputs print identical bytes, so the
commands are safe to diff in CI. Diagnostics go to stderr, results to
stdout. Exit codes: 0 clean, 1 error-level diagnostics, 2 usage or IO
failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .diagnostics import (
    Diagnostic,
    E_CONS,
    E_IO,
    ERROR,
    WARNING,
    has_errors,
)
from .model import load_model
from .query import run_query
from .reasoner.entail import entails
from .reasoner.interp import witness_to_dict
from .reasoner.normal import DEFAULT_MAX_DNF
from .reasoner.verdict import Disproved, Proved, Unknown
from .syntax.lexer import LexError
from .syntax.parser import ELEMENT_KINDS, ParseError, parse_model_file
from .syntax.render import render_model_file

_RED = "\x1b[31m"
_YELLOW = "\x1b[33m"
_RESET = "\x1b[0m"


def _use_color() -> bool:
    return os.environ.get("DESIREE_COLOR") == "1"


def _print_diag(d: Diagnostic, file=None):
    line = d.format()
    if _use_color():
        tint = _RED if d.severity == ERROR else _YELLOW
        line = f"{tint}{line}{_RESET}"
    print(line, file=file if file is not None else sys.stderr)


def _diag_dict(d: Diagnostic) -> dict:
    return {
        "severity": d.severity,
        "code": d.code,
        "span": str(d.span) if d.span else None,
        "message": d.message,
    }


def _emit_json(doc):
    print(json.dumps(doc, indent=2))


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as err:
        raise UsageError(f"{E_IO} cannot read {path}: {err.strerror}")


class UsageError(Exception):
    pass


def _load(args):
    return load_model(_read(args.file), max_dnf=args.max_dnf)


# ---------------------------------------------------------------------------
# Commands.


def cmd_check(args) -> int:
    m = _load(args)
    clashes = m.clashes() if m.ok else []
    diags = list(m.diagnostics)
    for c in clashes:
        diags.append(Diagnostic(ERROR, E_CONS, None, c.render()))
    errors = sum(d.severity == ERROR for d in diags)
    warnings = sum(d.severity == WARNING for d in diags)
    if args.json:
        _emit_json({
            "ok": errors == 0,
            "diagnostics": [_diag_dict(d) for d in diags],
            "clashes": [{
                "anchor": c.anchor,
                "pair": list(c.pair),
                "chains": list(c.chains),
                "fact": c.fact,
            } for c in clashes],
        })
    else:
        for d in diags:
            _print_diag(d, file=sys.stdout)
        print(f"{errors} errors, {warnings} warnings, "
              f"{len(clashes)} inconsistencies")
    return 1 if errors else 0


def cmd_entail(args) -> int:
    m = _load(args)
    for ident in (args.id1, args.id2):
        if ident not in m.elements:
            raise UsageError(f"unknown element {ident!r}")
    v = entails(m.elements[args.id1], m.elements[args.id2], m.context())
    if args.json:
        doc = {"verdict": type(v).__name__.lower()}
        if isinstance(v, Disproved):
            doc["witness"] = witness_to_dict(v.witness)
        elif isinstance(v, Unknown):
            doc["reason"] = v.reason
        _emit_json(doc)
        return 0
    if isinstance(v, Proved):
        print("Proved")
    elif isinstance(v, Disproved):
        w = v.witness
        print("Disproved")
        print(f"  element {w.x} falls under: {w.d1_text}")
        print(f"  but not under: {w.d2_text}")
        print(f"  witness: {w.to_json()}")
    else:
        print(f"Unknown: {v.reason}")
    return 0


def cmd_query(args) -> int:
    m = _load(args)
    for d in m.diagnostics:
        _print_diag(d)
    try:
        result = run_query(m, args.query)
    except (LexError, ParseError) as err:
        raise UsageError(f"bad query: {err}")
    for d in result.diagnostics:
        _print_diag(d)
    if args.json:
        _emit_json({
            "sure": result.sure,
            "tentative": result.tentative,
            "diagnostics": [_diag_dict(d) for d in result.diagnostics],
        })
    else:
        for ident in result.sure:
            print(ident)
        if args.lenient:
            for ident in result.tentative:
                print(f"{ident} # tentative")
    bad = has_errors(m.diagnostics) or has_errors(result.diagnostics)
    return 1 if bad else 0


def cmd_stats(args) -> int:
    m = _load(args)
    for d in m.diagnostics:
        _print_diag(d)
    stats = m.stats()
    if args.json:
        _emit_json(stats)
        return 1 if not m.ok else 0
    active = {k: 0 for k in ELEMENT_KINDS}
    dropped = {k: 0 for k in ELEMENT_KINDS}
    for e in m.elements.values():
        (active if e.active else dropped)[e.kind] += 1
    print("kind     total  active  dropped")
    for kind in ELEMENT_KINDS:
        total = stats["elements"]["by_kind"][kind]
        print(f"{kind:<8} {total:>5} {active[kind]:>7} {dropped[kind]:>8}")
    el = stats["elements"]
    print(f"elements {el['total']} ({el['active']} active, "
          f"{el['dropped']} dropped, {el['constructed']} constructed)")
    by_v = stats["applications"]["by_verdict"]
    verdicts = ", ".join(f"{k} {v}" for k, v in by_v.items())
    print(f"applications {stats['applications']['total']} ({verdicts})")
    th = stats["theory"]
    print(f"theory: axioms {th['axioms']}, disjoint {th['disjoint_pairs']}, "
          f"hierarchy {th['hierarchy_edges']}, factors {th['factors']}")
    cf = stats["conflicts"]
    print(f"conflicts: declared {cf['declared']}, resolved {cf['resolved']}")
    return 1 if not m.ok else 0


def cmd_export(args) -> int:
    m = _load(args)
    for d in m.diagnostics:
        _print_diag(d)
    if args.format == "dot":
        sys.stdout.write(m.to_dot())
    else:
        _emit_json(m.to_json_dict())
    return 1 if not m.ok else 0


def cmd_fmt(args) -> int:
    text = _read(args.file)
    tree = parse_model_file(text)
    if has_errors(tree.diagnostics):
        for d in tree.diagnostics:
            _print_diag(d)
        return 1
    formatted = render_model_file(tree)
    if args.write:
        with open(args.file, "w", encoding="utf-8") as fh:
            fh.write(formatted)
    else:
        sys.stdout.write(formatted)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing.


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="machine-readable output")
    common.add_argument("--lenient", action="store_true",
                        help="also report tentative (unproved) matches")
    common.add_argument("--max-dnf", type=int, default=DEFAULT_MAX_DNF,
                        metavar="N",
                        help="normal form disjunct cap for the reasoner")

    top = argparse.ArgumentParser(
        prog="desiree",
        description="Check, reason about, query, and format "
                    "requirement models.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common],
                       help="validate a model and report inconsistencies")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("entail", parents=[common],
                       help="decide whether one element entails another")
    p.add_argument("file")
    p.add_argument("id1")
    p.add_argument("id2")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("query", parents=[common],
                       help="answer an interrelation query")
    p.add_argument("file")
    p.add_argument("query")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("stats", parents=[common],
                       help="print model statistics")
    p.add_argument("file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("export", parents=[common],
                       help="export the model as dot or json")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("fmt", parents=[common],
                       help="reprint a model file in canonical form")
    p.add_argument("file")
    p.add_argument("--write", action="store_true",
                   help="rewrite the file in place")
    p.set_defaults(func=cmd_fmt)
    return top


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
