"""Command-line interface: ``bdabduce <command> ...``.

Exit status is 0 when an answer was computed (``no`` included), 1 for
bad input and 2 when a resource bound was hit.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from . import abduction as ab
from .classical import (bd_entails_sat, classical_sat, classical_to_valuation,
                        cto_str, embed_circ, embed_triangle, to_classical)
from .errors import BDError, ResourceLimitError
from .formula import Fragment, expand_circ, fragment, nnf, parse, props, to_str
from .literals import Literal
from .problem_io import load_problem, load_theory, format_problem
from .reduction import ClassicalProblem, reduce_problem, solve_via_classical
from .semantics import (bd_entails_oracle, bd_sat, evaluate, format_valuation,
                        parse_valuation, strong_equiv)

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2
CLASSES = [c.value for c in ab.SolutionClass]


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bdabduce",
                     description="Four-valued evaluation, entailment and abduction.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="value of a formula under a valuation")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-v", "--valuation", default="", help='e.g. "p=B,q=T"; others are N')

    p = sub.add_parser("sat", help="four-valued satisfiability")
    p.add_argument("-f", "--formula", required=True, action="append")
    p.add_argument("--engine", choices=["oracle", "sat"], default="sat")

    p = sub.add_parser("entail", help="four-valued entailment with a countermodel")
    p.add_argument("-t", "--theory", default="",
                   help="theory file (one formula per line) or formulas separated by ';'")
    p.add_argument("-c", "--conclusion", required=True)
    p.add_argument("--engine", choices=["oracle", "sat"], default="sat")

    p = sub.add_parser("equiv", help="weak (default) or strong equivalence")
    p.add_argument("-a", required=True)
    p.add_argument("-b", required=True)
    p.add_argument("--strong", action="store_true")

    p = sub.add_parser("translate", help="classical translation or embeddings")
    p.add_argument("--to", required=True, choices=["cl", "triangle-embed", "circ-embed"])
    p.add_argument("-f", "--formula", required=True)

    def problem_cmd(name, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("problem", help="problem file")
        return q

    p = problem_cmd("solve", "list solutions, one per line")
    p.add_argument("--class", dest="cls", choices=CLASSES, default="proper")
    p.add_argument("--max-size", type=int)
    p.add_argument("--via", choices=["native", "classical"], default="native")

    p = problem_cmd("check", "is a candidate term in a solution class?")
    p.add_argument("--candidate", required=True)
    p.add_argument("--class", dest="cls", choices=CLASSES, default="proper")
    p.add_argument("--max-size", type=int)

    p = problem_cmd("relevance", "does a hypothesis occur in some (every) solution?")
    p.add_argument("--hyp", required=True)
    p.add_argument("--necessary", action="store_true")
    p.add_argument("--class", dest="cls", choices=CLASSES, default="proper")
    p.add_argument("--max-size", type=int)

    problem_cmd("reduce", "print the classical counterpart problem")
    return parser


def _theory(arg: str) -> list:
    if arg and Path(arg).is_file():
        return load_theory(arg)
    return [parse(part) for part in arg.split(";") if part.strip()]


def _bd_problem(path):
    problem = load_problem(path)
    if isinstance(problem, ClassicalProblem):
        raise _InputError("expected a four-valued problem file")
    return problem


def _cmd_eval(args, out):
    v = parse_valuation(args.valuation)
    print(evaluate(v, parse(args.formula)).value, file=out)


def _cmd_sat(args, out):
    fs = [parse(f) for f in args.formula]
    if args.engine == "oracle":
        v = bd_sat(fs)
    else:
        names = set().union(*[props(f) for f in fs])
        model = classical_sat([to_classical(nnf(expand_circ(f))) for f in fs])
        v = None if model is None else classical_to_valuation(model, names)
    if v is None:
        print("no", file=out)
    else:
        print("yes", file=out)
        print(format_valuation(v), file=out)


def _cmd_entail(args, out):
    theory = _theory(args.theory)
    chi = parse(args.conclusion)
    if args.engine == "oracle":
        ok, witness = bd_entails_oracle(theory, chi, witness=True)
    else:
        ok, witness = bd_entails_sat(theory, chi, witness=True)
    print("yes" if ok else "no", file=out)
    if not ok:
        print(format_valuation(witness), file=out)


def _cmd_equiv(args, out):
    a, b = parse(args.a), parse(args.b)
    if args.strong:
        ok = strong_equiv(a, b)
    else:
        ok = bd_entails_sat([a], b) and bd_entails_sat([b], a)
    print("yes" if ok else "no", file=out)


def _cmd_translate(args, out):
    f = parse(args.formula)
    if args.to == "cl":
        if fragment(f) & Fragment.CIRC:
            f = expand_circ(f)
        print(cto_str(to_classical(nnf(f))), file=out)
    elif args.to == "triangle-embed":
        print(to_str(embed_triangle(f)), file=out)
    else:
        print(to_str(embed_circ(f)), file=out)


def _cmd_solve(args, out):
    problem = _bd_problem(args.problem)
    solve = ab.enumerate_solutions if args.via == "native" else solve_via_classical
    for term in solve(problem, args.cls, args.max_size):
        print(term, file=out)


def _cmd_check(args, out):
    problem = _bd_problem(args.problem)
    result = ab.check_candidate(problem, problem.term(args.candidate), args.cls,
                                args.max_size)
    print("yes" if result.ok else f"no: {result.reason}", file=out)


def _cmd_relevance(args, out):
    problem = _bd_problem(args.problem)
    fn = ab.is_necessary if args.necessary else ab.is_relevant
    result = fn(problem, Literal.parse(args.hyp), args.cls, args.max_size)
    line = "yes" if result.answer else "no"
    if result.vacuous:
        line += " (vacuous: no solutions in this class)"
    print(line, file=out)


def _cmd_reduce(args, out):
    problem = _bd_problem(args.problem)
    out.write(format_problem(reduce_problem(problem)))


_COMMANDS = {
    "eval": _cmd_eval, "sat": _cmd_sat, "entail": _cmd_entail, "equiv": _cmd_equiv,
    "translate": _cmd_translate, "solve": _cmd_solve, "check": _cmd_check,
    "relevance": _cmd_relevance, "reduce": _cmd_reduce,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ab.TruncationWarning)
            _COMMANDS[args.command](args, out)
        for w in caught:
            print(f"warning: {w.message}", file=err)
        return EXIT_OK
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_LIMIT
    except (_InputError, BDError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
