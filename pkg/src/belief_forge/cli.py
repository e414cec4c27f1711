"""Command-line interface: complete, check, info, elicit, serve.

Exit codes: 0 on success, 2 when no compatible belief exists (or the chosen
route is inapplicable), 1 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from .belief import (
    MonotonicityViolation,
    belief_from_mass,
    plausibility,
    specificity,
)
from .completion import (
    CompletionResult,
    ExistenceReport,
    FamilyNotClosed,
    FocusingInapplicable,
    Infeasible,
    check_closed,
    check_focusing,
    complete_closed,
    complete_focusing,
    complete_min_specificity,
    complete_stepwise,
)
from .documents import (
    ParseError,
    SpecDocument,
    build_result_document,
    parse_spec,
    serialize_result,
)
from .elicitation import ElicitationSession
from .journal import JournalRecorder, replay_journal
from .lp import DEFAULT_FACE_CAP
from .server import serve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_BELIEF = 2

CAP_ENV = "BELIEF_FORGE_CAP"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors must exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="belief-forge",
                     description="Complete partially specified belief functions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p: _Parser, with_method: bool = True) -> None:
        if with_method:
            p.add_argument("--method", choices=["min-spec", "focusing", "closed", "stepwise"],
                           help="completion method (default: spec file or min-spec)")
        p.add_argument("--cap", type=int, help="optimal-face vertex enumeration cap")
        p.add_argument("spec", help="path to a spec document, or - for stdin")

    p_complete = sub.add_parser("complete", help="complete the belief function")
    add_common(p_complete)
    p_complete.add_argument("--output", "-o", help="write the result document here instead of stdout")

    p_check = sub.add_parser("check", help="report the existence conditions")
    add_common(p_check)

    p_info = sub.add_parser("info", help="specificity, focal elements, and a belief table")
    add_common(p_info)
    p_info.add_argument("--set", action="append", default=[], metavar="LABELS",
                        help="comma-separated labels of a set to tabulate (repeatable)")

    p_elicit = sub.add_parser("elicit", help="interactively ask for missing beliefs")
    add_common(p_elicit)
    p_elicit.add_argument("--journal", help="append-only journal file; replayed first if it exists")

    p_serve = sub.add_parser("serve", help="run the HTTP session API")
    p_serve.add_argument("--port", type=int, default=8631)
    p_serve.add_argument("--bind", default="127.0.0.1")
    p_serve.add_argument("--cap", type=int)
    p_serve.add_argument("--journal", help="append-only journal file for all sessions")
    return parser


def _resolve_cap(args_cap: int | None, doc_cap: int | None) -> int:
    if args_cap is not None:
        return args_cap
    env = os.environ.get(CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"error: {CAP_ENV} must be an integer, got {env!r}", file=sys.stderr)
            raise SystemExit(EXIT_USAGE) from None
    if doc_cap is not None:
        return doc_cap
    return DEFAULT_FACE_CAP


def _load_spec(path: str) -> SpecDocument:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_spec(text)


def _print_report(report: ExistenceReport, file=sys.stdout) -> None:
    print(f"verdict: {report.verdict.value}", file=file)
    for r in report.records:
        status = "PASS" if r.passed else "FAIL"
        lower = ", ".join(repr(s) for s in r.lower_family) or "-"
        print(f"  [{status}] {r.subject!r}: required >= {r.rhs}  residual {r.residual}  (below: {lower})",
              file=file)


def _complete(doc: SpecDocument, method: str, cap: int) -> CompletionResult:
    known = doc.known_beliefs()
    if method == "min-spec":
        return complete_min_specificity(known, cap=cap)
    if method == "focusing":
        return complete_focusing(known)
    if method == "closed":
        return complete_closed(known)
    if method == "stepwise":
        return complete_stepwise(known, cap=cap)
    raise ValueError(f"unknown method {method!r}")


def _cmd_complete(args) -> int:
    doc = _load_spec(args.spec)
    method = args.method or doc.method or "min-spec"
    result = _complete(doc, method, _resolve_cap(args.cap, doc.cap))
    text = serialize_result(build_result_document(result, doc.known_beliefs()))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_check(args) -> int:
    doc = _load_spec(args.spec)
    known = doc.known_beliefs()
    method = args.method or doc.method
    report = check_closed(known) if method == "closed" else check_focusing(known)
    _print_report(report)
    return EXIT_OK if report.consistent else EXIT_NO_BELIEF


def _cmd_info(args) -> int:
    doc = _load_spec(args.spec)
    known = doc.known_beliefs()
    method = args.method or doc.method or "min-spec"
    result = _complete(doc, method, _resolve_cap(args.cap, doc.cap))
    mass = result.mass
    print(f"method: {result.method}" + (f" (stage {result.stage})" if result.stage else ""))
    print(f"specificity: {specificity(mass)} ({float(specificity(mass)):.6g})")
    print("focal elements:")
    for s, v in mass.entries:
        print(f"  {s!r}: {v} ({float(v):.6g})")
    requested = [known.frame.subset(spec.split(",")) if spec else known.frame.empty
                 for spec in args.set]
    if not requested:
        requested = [s for s in known.family if not s.is_empty]
    print("belief / plausibility:")
    for s in requested:
        b, p = belief_from_mass(mass, s), plausibility(mass, s)
        print(f"  {s!r}: Bel={b} ({float(b):.6g})  Pl={p} ({float(p):.6g})")
    return EXIT_OK


def _prompt_value(question) -> "Fraction | None":
    while True:
        raw = input(f"Bel({question!r}) = ").strip()
        if raw.lower() in ("u", "unavailable"):
            return None
        try:
            value = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            print("  enter a decimal, a fraction like 1/5, or 'unavailable'")
            continue
        if not 0 <= value <= 1:
            print("  the value must lie in [0,1]")
            continue
        return value


def _cmd_elicit(args) -> int:
    doc = _load_spec(args.spec)
    cap = _resolve_cap(args.cap, doc.cap)
    recorder = None
    session = None
    if args.journal:
        journal_path = Path(args.journal)
        if journal_path.exists() and journal_path.stat().st_size > 0:
            print(f"replaying journal {journal_path}")
            session = replay_journal(journal_path, cap=cap)
            recorder = JournalRecorder(journal_path)  # keep appending if it continues
        else:
            recorder = JournalRecorder(journal_path)
            recorder.record_spec(doc)
    if session is None:
        session = ElicitationSession(doc.known_beliefs(), cap=cap, stepwise_fallback=doc.stepwise)
    cursor = len(session.history)

    def flush() -> None:
        nonlocal cursor
        if recorder is not None:
            for event in session.history[cursor:]:
                recorder.record_event(event)
        cursor = len(session.history)

    flush()
    while session.state == "awaiting-answer":
        assert session.pending is not None
        print("conditions currently failing:")
        for r in session.report.failing():
            print(f"  {r.subject!r}: required >= {r.rhs}, residual {r.residual}")
        q = session.pending
        lo, hi = q.admissible
        print(f"question (from failing set {q.failing_set!r}, below it: "
              f"{', '.join(repr(s) for s in q.lower_family)}), admissible [{lo}, {hi}]:")
        try:
            value = _prompt_value(q.subset)
        except EOFError:
            print("input closed before the session finished", file=sys.stderr)
            return EXIT_USAGE
        if value is None:
            session.mark_unavailable()
        else:
            try:
                session.answer(value)
            except MonotonicityViolation as exc:
                print(f"  rejected: {exc}")
        flush()
    if session.state == "completed" and session.result is not None:
        sys.stdout.write(serialize_result(build_result_document(session.result, session.known)))
        return EXIT_OK
    print(f"terminal state: {session.state}", file=sys.stderr)
    _print_report(session.report, file=sys.stderr)
    return EXIT_NO_BELIEF


def _cmd_serve(args) -> int:
    cap = _resolve_cap(args.cap, None)
    serve(args.port, args.bind, cap, Path(args.journal) if args.journal else None)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "complete": _cmd_complete,
        "check": _cmd_check,
        "info": _cmd_info,
        "elicit": _cmd_elicit,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Infeasible, FocusingInapplicable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = getattr(exc, "report", None)
        if report is not None:
            _print_report(report, file=sys.stderr)
        return EXIT_NO_BELIEF
    except (FamilyNotClosed, MonotonicityViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_BELIEF
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
