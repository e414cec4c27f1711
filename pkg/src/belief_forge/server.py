"""HTTP session API exposing the elicitation protocol.

Single-tenant, in-memory, loopback by default.  Requests may arrive
concurrently; each session applies one transition at a time under its own
lock.  Every numeric field is carried as an exact ``"p/q"`` string with a
float rendering alongside.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any

from .belief import MonotonicityViolation, as_fraction
from .documents import (
    ParseError,
    SpecDocument,
    build_result_document,
    parse_labels,
    parse_spec,
    result_payload,
)
from .elicitation import ElicitationSession
from .journal import JournalRecorder
from .lp import DEFAULT_FACE_CAP

_SESSION_ROUTE = re.compile(r"^/sessions/([0-9a-f]{32})(/answer|/result)?$")


class ServerSession:
    def __init__(self, doc: SpecDocument, cap: int):
        self.doc = doc
        self.session = ElicitationSession(doc.known_beliefs(),
                                          cap=doc.cap or cap,
                                          stepwise_fallback=doc.stepwise)
        self.lock = threading.Lock()
        self.journal_cursor = 0


class SessionStore:
    def __init__(self, cap: int = DEFAULT_FACE_CAP, journal: JournalRecorder | None = None):
        self.cap = cap
        self.journal = journal
        self.sessions: dict[str, ServerSession] = {}
        self.lock = threading.Lock()

    def create(self, doc: SpecDocument) -> tuple[str, ServerSession]:
        held = ServerSession(doc, self.cap)
        session_id = uuid.uuid4().hex
        with self.lock:
            self.sessions[session_id] = held
        if self.journal is not None:
            self.journal.record_spec(doc)
            self.flush_journal(held)
        return session_id, held

    def get(self, session_id: str) -> ServerSession | None:
        with self.lock:
            return self.sessions.get(session_id)

    def discard(self, session_id: str) -> bool:
        with self.lock:
            return self.sessions.pop(session_id, None) is not None

    def flush_journal(self, held: ServerSession) -> None:
        if self.journal is None:
            return
        for event in held.session.history[held.journal_cursor:]:
            self.journal.record_event(event)
        held.journal_cursor = len(held.session.history)


def _fraction_fields(value) -> dict[str, Any]:
    return {"value": str(value), "decimal": float(value)}


def session_view(session_id: str, held: ServerSession) -> dict[str, Any]:
    s = held.session
    view: dict[str, Any] = {
        "id": session_id,
        "state": s.state,
        "frame": list(s.known.frame.labels),
        "known": [
            {"set": list(subset.labels), "belief": str(value), "decimal": float(value)}
            for subset, value in s.known.entries
        ],
        "failed_conditions": [
            {
                "set": list(r.subject.labels),
                "lower_family": [list(b.labels) for b in r.lower_family],
                "rhs": _fraction_fields(r.rhs),
                "residual": _fraction_fields(r.residual),
            }
            for r in s.report.failing()
        ],
        "verdict": s.report.verdict.value,
        "pending_question": None,
        "history": [
            {"kind": e.kind,
             "set": None if e.subset is None else list(e.subset.labels),
             "belief": None if e.value is None else str(e.value)}
            for e in s.history
        ],
        "result_available": s.state == "completed",
    }
    if s.pending is not None:
        lo, hi = s.pending.admissible
        view["pending_question"] = {
            "set": list(s.pending.subset.labels),
            "failing_set": list(s.pending.failing_set.labels),
            "lower_family": [list(b.labels) for b in s.pending.lower_family],
            "rhs": _fraction_fields(s.pending.rhs),
            "residual": _fraction_fields(s.pending.residual),
            "admissible": {"min": str(lo), "max": str(hi)},
        }
    return view


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore  # injected by make_server

    # --- plumbing -------------------------------------------------------
    def log_message(self, fmt: str, *args) -> None:  # quiet by default
        pass

    def _send(self, status: int, payload: Any) -> None:
        body = json.dumps(payload, indent=2, sort_keys=True).encode("utf-8") + b"\n"
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_error(self, status: int, message: str, **extra) -> None:
        self._send(status, {"error": message, **extra})

    def _read_body(self) -> str:
        length = int(self.headers.get("Content-Length", "0"))
        return self.rfile.read(length).decode("utf-8")

    # --- routes ---------------------------------------------------------
    def do_OPTIONS(self) -> None:  # CORS preflight for the browser client
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_POST(self) -> None:
        if self.path == "/sessions":
            self._create_session()
            return
        match = _SESSION_ROUTE.match(self.path)
        if match and match.group(2) == "/answer":
            self._answer(match.group(1))
            return
        self._send_error(404, "no such route")

    def do_GET(self) -> None:
        match = _SESSION_ROUTE.match(self.path)
        if not match:
            self._send_error(404, "no such route")
            return
        held = self.store.get(match.group(1))
        if held is None:
            self._send_error(404, "unknown session")
            return
        if match.group(2) == "/result":
            self._result(match.group(1), held)
        elif match.group(2) is None:
            with held.lock:
                self._send(200, session_view(match.group(1), held))
        else:
            self._send_error(404, "no such route")

    def do_DELETE(self) -> None:
        match = _SESSION_ROUTE.match(self.path)
        if not match or match.group(2) is not None:
            self._send_error(404, "no such route")
            return
        if self.store.discard(match.group(1)):
            self.send_response(204)
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
        else:
            self._send_error(404, "unknown session")

    # --- handlers -------------------------------------------------------
    def _create_session(self) -> None:
        try:
            doc = parse_spec(self._read_body())
            session_id, held = self.store.create(doc)
        except (ParseError, ValueError, MonotonicityViolation) as exc:
            self._send_error(400, str(exc))
            return
        with held.lock:
            self._send(201, session_view(session_id, held))

    def _answer(self, session_id: str) -> None:
        held = self.store.get(session_id)
        if held is None:
            self._send_error(404, "unknown session")
            return
        try:
            body = json.loads(self._read_body())
        except json.JSONDecodeError as exc:
            self._send_error(400, f"malformed body: {exc.msg}")
            return
        with held.lock:
            session = held.session
            if session.pending is None:
                self._send_error(409, "no question is pending")
                return
            if not isinstance(body, dict):
                self._send_error(400, "body must be an object")
                return
            if "set" in body:
                try:
                    posted = parse_labels(session.known.frame, body["set"], "set")
                except ParseError as exc:
                    self._send_error(400, str(exc))
                    return
                if posted.bits != session.pending.subset.bits:
                    self._send_error(409, "answer does not match the pending question",
                                     pending=list(session.pending.subset.labels))
                    return
            if body.get("unavailable"):
                session.mark_unavailable()
                self.store.flush_journal(held)
                self._send(200, session_view(session_id, held))
                return
            if "belief" not in body:
                self._send_error(400, "body needs 'belief' or 'unavailable'")
                return
            try:
                value = as_fraction(body["belief"])
            except (ValueError, ZeroDivisionError, TypeError):
                self._send_error(400, f"cannot read {body['belief']!r} as a rational")
                return
            try:
                session.answer(value)
            except MonotonicityViolation as exc:
                self.store.flush_journal(held)
                lo, hi = exc.admissible if exc.admissible else (None, None)
                self._send(422, {
                    "error": str(exc),
                    "admissible": None if lo is None else {"min": str(lo), "max": str(hi)},
                    "session": session_view(session_id, held),
                })
                return
            self.store.flush_journal(held)
            self._send(200, session_view(session_id, held))

    def _result(self, session_id: str, held: ServerSession) -> None:
        with held.lock:
            session = held.session
            if session.state != "completed" or session.result is None:
                self._send_error(409, f"session is {session.state}, no result to fetch")
                return
            doc = build_result_document(session.result, session.known,
                                        [s for s in session.known.family if not s.is_empty])
            self._send(200, result_payload(doc))


def make_server(port: int, bind: str = "127.0.0.1", cap: int = DEFAULT_FACE_CAP,
                journal: Path | None = None) -> ThreadingHTTPServer:
    store = SessionStore(cap, JournalRecorder(journal) if journal else None)
    handler = type("BoundHandler", (_Handler,), {"store": store})
    return ThreadingHTTPServer((bind, port), handler)


def serve(port: int, bind: str = "127.0.0.1", cap: int = DEFAULT_FACE_CAP,
          journal: Path | None = None) -> None:
    server = make_server(port, bind, cap, journal)
    host, actual_port = server.server_address[:2]
    print(f"belief-forge API listening on http://{host}:{actual_port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
