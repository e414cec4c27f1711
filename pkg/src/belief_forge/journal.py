"""Append-only session journals and their replay.

A journal is a JSON-lines file: the first line records the specification
document, each later line one elicitation event.  Replaying a journal
rebuilds the identical session, so the completed result serializes to the
same bytes that the original run produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator

from .documents import ParseError, SpecDocument, parse_spec, spec_payload
from .elicitation import ElicitationSession, HistoryEvent
from .lp import DEFAULT_FACE_CAP


@dataclass
class JournalRecorder:
    """Writes session events to a journal file as they happen."""

    path: Path

    def record_spec(self, doc: SpecDocument) -> None:
        self._append({"event": "spec", "document": spec_payload(doc)})

    def record_event(self, event: HistoryEvent) -> None:
        entry: dict = {"event": event.kind}
        if event.subset is not None:
            entry["set"] = list(event.subset.labels)
        if event.value is not None:
            entry["belief"] = str(event.value)
        self._append(entry)

    def _append(self, entry: dict) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")


def read_journal(path: Path) -> tuple[SpecDocument, list[dict]]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ParseError("journal is empty")
    head = json.loads(lines[0])
    if head.get("event") != "spec":
        raise ParseError("journal must start with a spec event")
    doc = parse_spec(json.dumps(head["document"]))
    events = [json.loads(line) for line in lines[1:] if line.strip()]
    return doc, events


def replay_journal(path: Path, *, cap: int | None = None) -> ElicitationSession:
    """Re-run a recorded session from its journal.

    Only state-changing events are re-applied; rejected answers and the
    questions themselves are re-derived by the session machine, which is
    what makes replay a genuine consistency check.
    """
    doc, events = read_journal(path)
    session = ElicitationSession(doc.known_beliefs(),
                                 cap=cap if cap is not None else (doc.cap or DEFAULT_FACE_CAP),
                                 stepwise_fallback=doc.stepwise)
    for entry in events:
        kind = entry.get("event")
        if kind in ("answered", "unavailable"):
            if session.pending is None:
                raise ParseError("journal continues past the session's terminal state")
            if "set" in entry and tuple(entry["set"]) != session.pending.subset.labels:
                raise ParseError(f"journal answers {entry['set']} but the pending question is "
                                 f"{list(session.pending.subset.labels)}")
        if kind == "answered":
            session.answer(entry["belief"])
        elif kind == "unavailable":
            session.mark_unavailable()
        elif kind in ("asked", "rejected"):
            continue
        else:
            raise ParseError(f"unknown journal event {kind!r}")
    return session


def iter_events(session: ElicitationSession, start: int = 0) -> Iterator[HistoryEvent]:
    yield from session.history[start:]
