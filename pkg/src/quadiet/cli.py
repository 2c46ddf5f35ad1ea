"""``quadiet`` command-line front end.

Exit codes: 0 success, 2 connection found where regularity is required,
3 budget exceeded, 4 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from .cfrac import cf_expand, iet_ratio
from .complexity import pi_survey, survey_tsv
from .equivalence import build_graph, export_dot, export_json
from .errors import (
    ClassBudgetExceeded,
    Connection,
    DiscriminantMismatch,
    NonBijectivePermutation,
    NonPositiveLength,
    NotTwoIntervals,
    SpecSyntaxError,
    StepCapExceeded,
)
from .iet import IET, STEP_CAP, iet_find_connection
from .ietspec import format_spec, parse_spec
from .induction import admissible_domains, apply_word, parse_word
from .intervalset import SemiInterval
from .quadfield import QuadNum

EXIT_OK = 0
EXIT_CONNECTION = 2
EXIT_BUDGET = 3
EXIT_PARSE = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _approx(x: QuadNum) -> str:
    return f"{float(x):.6f}"


def _hint(x: QuadNum) -> str:
    return f"{x.to_text()} ≈ {_approx(x)}"


def _triple(x: QuadNum) -> list[int]:
    return [x.m, x.n, x.r]


def _interval_text(J: SemiInterval) -> str:
    return f"[{J.lo.to_text()}, {J.hi.to_text()}[  ≈ [{_approx(J.lo)}, {_approx(J.hi)}["


def _iet_text(T: IET) -> list[str]:
    return [
        f"perm: {' '.join(str(p + 1) for p in T.perm)}",
        "lengths:",
        *(f"  {_hint(lam)}" for lam in T.lengths),
    ]


def _cmd_induce(T: IET, args, out: TextIO) -> int:
    res = apply_word(T, parse_word(args.word), args.step_cap)
    S = res.transform
    if args.format == "json":
        doc = {
            "d": T.d,
            "word": list(parse_word(args.word)),
            "domain": [_triple(res.domain.lo), _triple(res.domain.hi)],
            "perm": [p + 1 for p in S.perm],
            "lengths": [_triple(x) for x in S.lengths],
            "left": _triple(S.left),
            "exponents": list(res.exponents),
        }
        out.write(json.dumps(doc, indent=2) + "\n")
        return EXIT_OK
    out.write(f"domain: {_interval_text(res.domain)}\n")
    out.write("\n".join(_iet_text(S)) + "\n")
    out.write(f"return exponents: {' '.join(map(str, res.exponents))}\n")
    return EXIT_OK


def _cmd_graph(T: IET, args, out: TextIO) -> int:
    G = build_graph(T, args.max_classes, args.step_cap)
    out.write(export_dot(G) if args.format == "dot" else export_json(G))
    return EXIT_OK


def _cmd_admissible(T: IET, args, out: TextIO) -> int:
    found = admissible_domains(T, args.depth, args.step_cap)
    for J in sorted(found):
        word = ".".join(found[J][0]) or "ε"
        out.write(f"{_interval_text(J)}\t{word}\n")
    return EXIT_OK


def _cmd_check(T: IET, args, out: TextIO) -> int:
    w = iet_find_connection(T, args.depth)
    if w is None:
        out.write(f"no connection up to depth {args.depth}\n")
        return EXIT_OK
    out.write(f"connection: {w.describe()}\n")
    return EXIT_CONNECTION


def _cmd_cf(T: IET, args, out: TextIO) -> int:
    out.write(f"{cf_expand(iet_ratio(T))}\n")
    return EXIT_OK


def _cmd_survey(T: IET, args, out: TextIO) -> int:
    out.write(survey_tsv(pi_survey(T, args.depth, args.step_cap)))
    return EXIT_OK


def _cmd_show(T: IET, args, out: TextIO) -> int:
    out.write(format_spec(T))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadiet", description="Exact IETs over real quadratic fields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("spec", help="spec file (text or JSON), '-' for stdin")
        sp.add_argument("--max-classes", type=int, default=10**4, help="equivalence-graph vertex budget")
        sp.add_argument("--step-cap", type=int, default=STEP_CAP, help="iteration budget for first returns")
        sp.set_defaults(func=func)
        return sp

    sp = command("induce", _cmd_induce, "apply a word over {psi, phi}")
    sp.add_argument("--word", default="", help='e.g. "psi phi psi"')
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp = command("graph", _cmd_graph, "equivalence graph")
    sp.add_argument("--format", choices=("dot", "json"), default="dot")
    sp = command("admissible", _cmd_admissible, "domains reachable by words up to a length")
    sp.add_argument("--depth", type=int, default=6)
    sp = command("check", _cmd_check, "search for a connection")
    sp.add_argument("--depth", type=int, default=1000)
    command("cf", _cmd_cf, "continued fraction of the length ratio of a 2-IET")
    sp = command("survey", _cmd_survey, "complexity and return-time table (TSV)")
    sp.add_argument("--depth", type=int, default=10)
    command("show", _cmd_show, "print the normalized spec")
    return p


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(argv: Sequence[str], out: TextIO = sys.stdout, err: TextIO = sys.stderr, stdin: TextIO = sys.stdin) -> int:
    try:
        args = build_parser().parse_args(list(argv))
    except _UsageError as exc:
        err.write(f"quadiet: {exc}\n")
        return EXIT_PARSE
    try:
        T = parse_spec(_read(args.spec, stdin)).to_iet()
    except OSError as exc:
        err.write(f"quadiet: {exc}\n")
        return EXIT_PARSE
    except (SpecSyntaxError, DiscriminantMismatch, NonPositiveLength, NonBijectivePermutation) as exc:
        err.write(f"quadiet: parse error: {exc}\n")
        return EXIT_PARSE
    try:
        if args.command == "induce":
            parse_word(args.word)
    except ValueError as exc:
        err.write(f"quadiet: {exc}\n")
        return EXIT_PARSE
    try:
        return args.func(T, args, out)
    except NotTwoIntervals as exc:
        err.write(f"quadiet: {exc}\n")
        return EXIT_PARSE
    except Connection as exc:
        err.write(f"quadiet: connection: {exc}\n")
        return EXIT_CONNECTION
    except (ClassBudgetExceeded, StepCapExceeded) as exc:
        err.write(f"quadiet: budget exceeded: {exc}\n")
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
