"""Command-line entry point: ``funl learn | minimize | equiv``.

Exit codes: 0 success, 1 automata not equivalent, 2 bad input.
Automata go to stdout; warnings, ``--stats`` and ``--trace`` go to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .dfa import Dfa, dfa_equiv, minimize_dfa
from .errors import AlphabetMismatch, AutomatonFormatError, CapExceeded, DomainMismatch, FunlError
from .io import dot_export, parse_automaton, serialize_automaton, to_document
from .learner import DEFAULT_CAP, ObservationIndex, TraceEvent, funl
from .sst import Sst, minimize_sst, sst_equiv
from .teachers import Teacher
from .wfa import Wfa, minimize_wfa, wfa_equiv
from .words import fmt

log = logging.getLogger("funl")


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise AutomatonFormatError(e.strerror or str(e), path) from None
    try:
        return parse_automaton(text)
    except AutomatonFormatError as e:
        raise AutomatonFormatError(str(e), path) from None


def _emit(x, how: str) -> str:
    return dot_export(x) if how == "dot" else serialize_automaton(x)


def _trace_line(ev: TraceEvent) -> str:
    if ev.kind == "epi":
        head = f"closedness failure, witness {fmt(ev.word)}"
    elif ev.kind == "mono":
        head = f"consistency failure, witness {fmt(ev.word)}"
    else:
        hyp = json.dumps(to_document(ev.hypothesis), sort_keys=True, ensure_ascii=False)
        verdict = "yes" if ev.word is None else f"counterexample {fmt(ev.word)}"
        return f"hypothesis {hyp}\n  equivalence: {verdict}\n  at {ev.index}"
    return f"{head}\n  now {ev.index}"


def cmd_learn(args) -> int:
    target = _load(args.target)
    teacher = Teacher(target, max_queries=args.max_queries)
    on_event = None
    if args.trace:
        print(f"start\n  {ObservationIndex(teacher.alphabet)}", file=sys.stderr)
        on_event = lambda ev: print(_trace_line(ev), file=sys.stderr)
    h, stats = funl(teacher, mode=args.mode, max_iterations=args.max_iterations, on_event=on_event)
    sys.stdout.write(_emit(h, args.emit))
    if args.stats:
        print(json.dumps({
            "eval_queries": stats.eval_queries,
            "equiv_queries": stats.equiv_queries,
            "while_iterations": stats.while_iterations,
            "counterexamples": stats.counterexamples,
        }, ensure_ascii=False), file=sys.stderr)
    return 0


def cmd_minimize(args) -> int:
    x = _load(args.input)
    m = {Dfa: minimize_dfa, Wfa: minimize_wfa, Sst: minimize_sst}[type(x)](x)
    sys.stdout.write(_emit(m, args.emit))
    return 0


def cmd_equiv(args) -> int:
    left, right = _load(args.left), _load(args.right)
    if type(left) is not type(right):
        raise DomainMismatch(f"cannot compare {type(left).__name__} with {type(right).__name__}")
    check = {Dfa: dfa_equiv, Wfa: wfa_equiv, Sst: sst_equiv}[type(left)]
    cex = check(left, right)
    if cex is None:
        print("equivalent")
        return 0
    print("not equivalent")
    print(f"counterexample: {json.dumps(cex, ensure_ascii=False)}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="funl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    learn = sub.add_parser("learn", help="learn a target automaton through queries")
    learn.add_argument("--target", required=True, metavar="FILE")
    learn.add_argument("--mode", choices=["basic", "optimized"], default="basic")
    learn.add_argument("--emit", choices=["json", "dot"], default="json")
    learn.add_argument("--stats", action="store_true", help="print query counts to stderr")
    learn.add_argument("--trace", action="store_true", help="print every table repair and hypothesis to stderr")
    learn.add_argument("--max-iterations", type=int, default=DEFAULT_CAP)
    learn.add_argument("--max-queries", type=int, default=DEFAULT_CAP)
    learn.set_defaults(func=cmd_learn)

    mini = sub.add_parser("minimize", help="minimize an automaton")
    mini.add_argument("--input", required=True, metavar="FILE")
    mini.add_argument("--emit", choices=["json", "dot"], default="json")
    mini.set_defaults(func=cmd_minimize)

    eq = sub.add_parser("equiv", help="check two automata for equivalence")
    eq.add_argument("--left", required=True, metavar="FILE")
    eq.add_argument("--right", required=True, metavar="FILE")
    eq.set_defaults(func=cmd_equiv)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (AutomatonFormatError, AlphabetMismatch, DomainMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FunlError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
