"""Interactive elicitation: ask an expert for missing beliefs until a
completion exists or impossibility is proven.

The session is a replayable state machine.  While the focusing conditions
fail, it offers one question at a time, always a not-yet-known intersection
of the sets below a failing condition.  Answers that would break
monotonicity are rejected and the question re-issued.  An expert who cannot
answer hands the session over to the stepwise engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .belief import KnownBeliefs, MonotonicityViolation, as_fraction
from .completion import (
    CompletionResult,
    ExistenceReport,
    Infeasible,
    Verdict,
    _select_question,
    check_focusing,
    complete_focusing,
    complete_stepwise,
)
from .frames import Subset
from .lp import DEFAULT_FACE_CAP

# An oracle answers a belief value for the asked set, or None when the
# expert cannot say.
ElicitationOracle = Callable[[Subset], "Fraction | None"]

MAX_REJECTIONS_PER_QUESTION = 3


@dataclass(frozen=True)
class PendingQuestion:
    """The set to ask about, plus the failing condition that motivated it."""

    subset: Subset
    failing_set: Subset
    lower_family: tuple[Subset, ...]
    rhs: Fraction
    residual: Fraction
    admissible: tuple[Fraction, Fraction]


@dataclass(frozen=True)
class HistoryEvent:
    kind: str  # asked | answered | rejected | unavailable
    subset: Subset | None = None
    value: Fraction | None = None


class ElicitationSession:
    """Single-writer elicitation state machine.

    ``state`` is one of ``awaiting-answer``, ``completed``, ``impossible``,
    or ``exhausted``; while awaiting, ``pending`` describes the question.
    Transitions are append-only and the history suffices to replay them.
    """

    def __init__(self, known: KnownBeliefs, *, cap: int = DEFAULT_FACE_CAP,
                 stepwise_fallback: bool = True):
        self.cap = cap
        self.stepwise_fallback = stepwise_fallback
        self.known = known
        self.history: list[HistoryEvent] = []
        self.pending: PendingQuestion | None = None
        self.result: CompletionResult | None = None
        self.state = "awaiting-answer"
        self.report: ExistenceReport
        self._advance()

    def _advance(self) -> None:
        self.report = check_focusing(self.known)
        if self.report.verdict is Verdict.CONSISTENT:
            self.result = complete_focusing(self.known)
            self.state = "completed"
            self.pending = None
            return
        if self.report.verdict is Verdict.PROVABLY_IMPOSSIBLE:
            self.state = "impossible"
            self.pending = None
            return
        found = _select_question(self.known, self.report)
        if found is None:
            # nothing left to ask and no proof either way: the closure is
            # exhausted without a compatible belief
            self.state = "exhausted"
            self.pending = None
            return
        question, record = found
        self.pending = PendingQuestion(
            subset=question,
            failing_set=record.subject,
            lower_family=record.lower_family.members,
            rhs=record.rhs,
            residual=record.residual,
            admissible=self.known.admissible_interval(question),
        )
        self.state = "awaiting-answer"
        self.history.append(HistoryEvent("asked", question))

    def answer(self, raw) -> None:
        """Record the expert's belief for the pending question and advance."""
        if self.pending is None:
            raise RuntimeError("no question is pending")
        value = as_fraction(raw)
        subset = self.pending.subset
        try:
            self.known = self.known.with_value(subset, value)
        except MonotonicityViolation as exc:
            self.history.append(HistoryEvent("rejected", subset, value))
            raise exc
        self.history.append(HistoryEvent("answered", subset, value))
        self._advance()

    def mark_unavailable(self) -> None:
        """The expert cannot answer: fall back to the stepwise engine."""
        if self.pending is None:
            raise RuntimeError("no question is pending")
        self.history.append(HistoryEvent("unavailable", self.pending.subset))
        self.pending = None
        if not self.stepwise_fallback:
            self.state = "exhausted"
            return
        try:
            self.result = complete_stepwise(self.known, cap=self.cap)
            self.state = "completed"
        except Infeasible:
            self.state = "impossible"

    @property
    def questions_asked(self) -> int:
        return sum(1 for e in self.history if e.kind == "asked")


def elicit(known: KnownBeliefs, oracle: ElicitationOracle, *,
           cap: int = DEFAULT_FACE_CAP, stepwise_fallback: bool = True,
           on_event: Callable[[HistoryEvent], None] | None = None) -> ElicitationSession:
    """Drive a session with a callback oracle until it reaches a terminal state.

    Monotonicity-violating answers are recorded and the oracle is re-asked;
    after ``MAX_REJECTIONS_PER_QUESTION`` consecutive rejections of the same
    question the violation is raised to the caller.
    """
    session = ElicitationSession(known, cap=cap, stepwise_fallback=stepwise_fallback)
    emitted = 0

    def flush() -> None:
        nonlocal emitted
        if on_event is not None:
            for event in session.history[emitted:]:
                on_event(event)
        emitted = len(session.history)

    flush()
    while session.state == "awaiting-answer":
        assert session.pending is not None
        subset = session.pending.subset
        rejections = 0
        while True:
            value = oracle(subset)
            if value is None:
                session.mark_unavailable()
                break
            try:
                session.answer(value)
                break
            except MonotonicityViolation:
                rejections += 1
                flush()
                if rejections >= MAX_REJECTIONS_PER_QUESTION:
                    raise
        flush()
    return session
