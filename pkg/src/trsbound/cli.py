"""Command-line interface: ``trsbound analyze | cps | snf | equiv | tietze``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from . import report
from .critical_pairs import cp_filter_prime, critical_pairs
from .equivalence import (
    DEFAULT_SEARCH_DEPTH,
    AddRule,
    AddSymbol,
    RemoveRule,
    RemoveSymbol,
    TietzeStep,
    Verdict,
    equiv_check,
    tietze_apply,
)
from .errors import (
    CompositeDegree,
    NonJoinableCP,
    NotComplete,
    ParseError,
    SearchBudgetExceeded,
    SideConditionViolated,
    SignatureMismatch,
    StepBudgetExceeded,
    TrsError,
)
from .homology import analyze
from .linalg import IntMatrix, snf, verify_snf
from .rewriting import DEFAULT_MAX_STEPS, Strategy, Trs, local_confluence_check
from .syntax import parse_matrix, parse_rule, parse_term, parse_trs_file, render_trs
from .terms import Signature, Symbol, max_var

EXIT_OK = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NOT_COMPLETE = 4
EXIT_COMPOSITE_DEGREE = 5
EXIT_STEP_BUDGET = 6
EXIT_SIDE_CONDITION = 7
EXIT_SEARCH_BUDGET = 8
EXIT_SIGNATURE = 9
EXIT_UNKNOWN = 10
EXIT_INTERNAL = 11

# most specific class first; TrsError is the catch-all
ERROR_CODES = (
    (ParseError, EXIT_PARSE),
    (NotComplete, EXIT_NOT_COMPLETE),
    (NonJoinableCP, EXIT_NOT_COMPLETE),
    (CompositeDegree, EXIT_COMPOSITE_DEGREE),
    (StepBudgetExceeded, EXIT_STEP_BUDGET),
    (SideConditionViolated, EXIT_SIDE_CONDITION),
    (SearchBudgetExceeded, EXIT_SEARCH_BUDGET),
    (SignatureMismatch, EXIT_SIGNATURE),
    (TrsError, EXIT_INTERNAL),
)

VERDICT_CODES = {
    Verdict.YES: EXIT_OK,
    Verdict.NO: EXIT_NOT_EQUIVALENT,
    Verdict.UNKNOWN: EXIT_UNKNOWN,
}


def exit_code_for(exc: BaseException) -> int:
    for cls, code in ERROR_CODES:
        if isinstance(exc, cls):
            return code
    return EXIT_INTERNAL


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--strategy", choices=["li", "lo"], default="li",
                        help="normalization strategy: leftmost-innermost or leftmost-outermost")
    common.add_argument("--prime", action="store_true",
                        help="use prime critical pairs only")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS,
                        help="rewrite steps allowed per normalization")
    common.add_argument("--search-depth", type=_positive, default=DEFAULT_SEARCH_DEPTH,
                        help="node expansions allowed per conversion search")
    common.add_argument("--verify-snf", action="store_true",
                        help="recompute the Smith form with transforms and check them")

    parser = argparse.ArgumentParser(
        prog="trsbound",
        description="Lower bounds on the number of rules of complete rewriting systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="compute #R - e(R) and s(H2)")
    p.add_argument("path")
    p = sub.add_parser("cps", parents=[common], help="list critical pairs")
    p.add_argument("path")
    p = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    p.add_argument("matrix", help="matrix file, or inline rows such as '1 2 / 3 4'")
    p = sub.add_parser("equiv", parents=[common], help="compare the conversion of two systems")
    p.add_argument("base")
    p.add_argument("candidate")
    p = sub.add_parser("tietze", parents=[common], help="run a script of Tietze steps")
    p.add_argument("script")
    p.add_argument("--system", help="initial system (overrides any load line)")
    return parser


# -- analyze / cps / snf ------------------------------------------------------


def cmd_analyze(args: argparse.Namespace, out: TextIO) -> int:
    trs = parse_trs_file(args.path)
    rep = analyze(trs, Strategy.parse(args.strategy), args.prime, args.max_steps)
    verified = None
    if args.verify_snf:
        verified = verify_snf(rep.D, snf(rep.D, transforms=True))
    if args.format == "json":
        out.write(report.dumps(report.bound_json(rep, verified)))
    else:
        out.write(report.bound_text(rep, snf_verified=verified))
    if verified is False:
        raise TrsError("Smith normal form verification failed")
    return EXIT_OK


def cmd_cps(args: argparse.Namespace, out: TextIO) -> int:
    trs = parse_trs_file(args.path)
    cps = critical_pairs(trs)
    if args.prime:
        cps = cp_filter_prime(cps)
    if args.format == "json":
        out.write(report.dumps(report.cps_json(trs, cps)))
    else:
        out.write(report.cps_text(trs, cps))
    return EXIT_OK


def read_matrix(arg: str) -> IntMatrix:
    path = Path(arg)
    if path.is_file():
        text = path.read_text(encoding="utf-8")
    elif any(c.isdigit() for c in arg) and not arg.endswith((".txt", ".mat")):
        text = arg
    else:
        raise ParseError(f"no such matrix file: {arg}")
    return IntMatrix.from_rows(parse_matrix(text))


def cmd_snf(args: argparse.Namespace, out: TextIO) -> int:
    M = read_matrix(args.matrix)
    res = snf(M, transforms=args.verify_snf)
    verified = verify_snf(M, res) if args.verify_snf else None
    if args.format == "json":
        out.write(report.dumps(report.snf_json(res, verified)))
    else:
        out.write(report.snf_text(res, verified))
    if verified is False:
        raise TrsError("Smith normal form verification failed")
    return EXIT_OK


# -- equiv ----------------------------------------------------------------------


def cmd_equiv(args: argparse.Namespace, out: TextIO) -> int:
    base = parse_trs_file(args.base)
    candidate = parse_trs_file(args.candidate)
    strat = Strategy.parse(args.strategy)
    check = local_confluence_check(base, args.max_steps, strat)
    if not check.joinable:
        raise NotComplete(check.failures)
    result = equiv_check(base, candidate.rules, args.search_depth, strat, args.max_steps)
    if args.format == "json":
        out.write(report.dumps(report.equiv_json(base, result)))
    else:
        out.write(report.equiv_text(base, result))
    return VERDICT_CODES[result.verdict]


# -- tietze ---------------------------------------------------------------------


@dataclass
class ScriptLine:
    lineno: int
    command: str
    operand: str


def read_script(text: str) -> List[ScriptLine]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        command, _, operand = line.partition(" ")
        lines.append(ScriptLine(lineno, command, operand.strip()))
    return lines


def parse_step(line: ScriptLine, trs: Trs, var_names: Sequence[str]) -> TietzeStep:
    src = f"line {line.lineno}"
    if line.command == "add-symbol":
        name, _, rest = line.operand.partition(" ")
        if not name or not rest.strip():
            raise ParseError("add-symbol needs a name and a term", line.lineno, 1, src)
        t = parse_term(rest, trs.sig, var_names)
        return AddSymbol(Symbol(name, max_var(t)), t)
    if line.command == "remove-symbol":
        if not line.operand or " " in line.operand:
            raise ParseError("remove-symbol needs exactly one name", line.lineno, 1, src)
        return RemoveSymbol(line.operand)
    if line.command in ("add-rule", "remove-rule"):
        rule = parse_rule(line.operand, trs.sig, var_names)
        return AddRule(rule) if line.command == "add-rule" else RemoveRule(rule)
    raise ParseError(f"unknown command {line.command!r}", line.lineno, 1, src)


def run_script(
    lines: Sequence[ScriptLine],
    base_dir: Path,
    trs: Optional[Trs] = None,
    search_depth: int = DEFAULT_SEARCH_DEPTH,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Trs:
    """Apply the script's steps in order; errors name the step and line."""
    var_names: Sequence[str] = trs.var_names if trs is not None else ()
    step_no = 0
    for line in lines:
        if line.command == "load":
            if trs is None:
                trs = parse_trs_file(base_dir / line.operand)
                var_names = trs.var_names
            continue
        if line.command == "var":
            var_names = tuple(line.operand.split())
            if trs is not None:
                trs = Trs(trs.sig, trs.rules, var_names)
            continue
        if trs is None:
            raise ParseError("no system loaded before the first step", line.lineno, 1)
        step_no += 1
        step = parse_step(line, trs, var_names)
        try:
            trs = tietze_apply(trs, step, search_depth, max_steps)
        except SideConditionViolated as exc:
            raise SideConditionViolated(
                exc.clause, f"step {step_no} (line {line.lineno}): {exc}"
            ) from None
        except SearchBudgetExceeded as exc:
            raise SearchBudgetExceeded(f"step {step_no} (line {line.lineno}): {exc}") from None
    return trs if trs is not None else Trs(Signature(), [])


def cmd_tietze(args: argparse.Namespace, out: TextIO) -> int:
    script = Path(args.script)
    try:
        text = script.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read script: {exc.strerror}", source=str(script)) from None
    start = parse_trs_file(args.system) if args.system else None
    final = run_script(read_script(text), script.parent, start, args.search_depth, args.max_steps)
    rendered = render_trs(final)
    if args.format == "json":
        out.write(report.dumps({
            "signature": [[s.name, s.arity] for s in final.sig],
            "n_rules": len(final.rules),
            "system": rendered,
        }))
    else:
        out.write(rendered)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "cps": cmd_cps,
    "snf": cmd_snf,
    "equiv": cmd_equiv,
    "tietze": cmd_tietze,
}


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except TrsError as exc:
        err.write(f"error: {exc}\n")
        return exit_code_for(exc)
    except RecursionError:
        err.write("error: term too deep to process\n")
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())
