"""Specification and result documents: the JSON wire and file format.

Rational values survive the wire exactly: they are written as ``"p/q"``
strings with a float rendering alongside for human readers, and decimal
literals in input are parsed digit-exactly (``0.3`` becomes 3/10, never the
nearest double).  Serialization is canonical, with sorted keys, so equal
documents are byte-equal.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .belief import KnownBeliefs, belief_from_mass, plausibility, specificity
from .completion import (
    CompletionResult,
    ConditionRecord,
    ExistenceReport,
    SymmetryInfo,
    Verdict,
)
from .frames import Frame, SetFamily, Subset

METHODS = ("min-spec", "focusing", "closed", "stepwise")


class ParseError(ValueError):
    """Malformed document; carries the best-known position."""

    def __init__(self, reason: str, *, line: int | None = None, path: str | None = None):
        self.line = line
        self.path = path
        where = f" at line {line}" if line is not None else (f" at {path}" if path else "")
        super().__init__(f"parse error{where}: {reason}")


class UnknownLabel(ParseError):
    pass


class ValueOutOfRange(ParseError):
    pass


@dataclass(frozen=True)
class SpecDocument:
    """Frame plus the belief constraints to complete, with optional options."""

    frame: Frame
    constraints: tuple[tuple[Subset, Fraction], ...]
    method: str | None = None
    cap: int | None = None
    stepwise: bool = True

    def known_beliefs(self) -> KnownBeliefs:
        return KnownBeliefs.of(self.frame, self.constraints)


@dataclass(frozen=True)
class ResultDocument:
    """A completed belief function with its diagnostics, ready to serialize."""

    method: str
    stage: int | None
    frame: Frame
    mass: tuple[tuple[Subset, Fraction], ...]
    beliefs: tuple[tuple[Subset, Fraction, Fraction], ...]
    specificity: Fraction
    existence: ExistenceReport
    symmetry: SymmetryInfo | None


def _rational(value: Any, path: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("belief must be a number or a rational string", path=path)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"cannot read {value!r} as a rational", path=path) from None
    raise ParseError(f"cannot read {type(value).__name__} as a rational", path=path)


def _unit_interval(value: Any, path: str) -> Fraction:
    v = _rational(value, path)
    if not 0 <= v <= 1:
        raise ValueOutOfRange(f"belief {v} outside [0,1]", path=path)
    return v


def parse_labels(frame: Frame, labels: Any, path: str) -> Subset:
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError("a set must be an array of label strings", path=path)
    bits = 0
    for label in labels:
        try:
            bits |= 1 << frame.index(label)
        except KeyError:
            raise UnknownLabel(f"unknown label {label!r}", path=path) from None
    return Subset(frame, bits)


def parse_spec(text: str) -> SpecDocument:
    """Strict parse of a specification document."""
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    allowed = {"frame", "constraints", "method", "options"}
    unknown = set(raw) - allowed
    if unknown:
        raise ParseError(f"unknown keys: {sorted(unknown)}")
    labels = raw.get("frame")
    if not isinstance(labels, list) or not labels or not all(isinstance(x, str) for x in labels):
        raise ParseError("'frame' must be a non-empty array of label strings", path="frame")
    try:
        frame = Frame(tuple(labels))
    except ValueError as exc:
        raise ParseError(str(exc), path="frame") from None
    constraints: list[tuple[Subset, Fraction]] = []
    seen: set[int] = set()
    raw_constraints = raw.get("constraints", [])
    if not isinstance(raw_constraints, list):
        raise ParseError("'constraints' must be an array", path="constraints")
    for i, entry in enumerate(raw_constraints):
        path = f"constraints[{i}]"
        if not isinstance(entry, dict) or set(entry) != {"set", "belief"}:
            raise ParseError("each constraint needs exactly the keys 'set' and 'belief'", path=path)
        subset = parse_labels(frame, entry["set"], f"{path}.set")
        if subset.bits in seen:
            raise ParseError(f"duplicate constraint set {subset!r}", path=f"{path}.set")
        seen.add(subset.bits)
        value = _unit_interval(entry["belief"], f"{path}.belief")
        constraints.append((subset, value))
    method = raw.get("method")
    if method is not None and method not in METHODS:
        raise ParseError(f"method must be one of {METHODS}", path="method")
    cap: int | None = None
    stepwise = True
    options = raw.get("options", {})
    if options:
        if not isinstance(options, dict) or set(options) - {"cap", "stepwise"}:
            raise ParseError("options may only contain 'cap' and 'stepwise'", path="options")
        if "cap" in options:
            if not isinstance(options["cap"], int) or isinstance(options["cap"], bool) or options["cap"] < 1:
                raise ParseError("'cap' must be a positive integer", path="options.cap")
            cap = options["cap"]
        if "stepwise" in options:
            if not isinstance(options["stepwise"], bool):
                raise ParseError("'stepwise' must be a boolean", path="options.stepwise")
            stepwise = options["stepwise"]
    return SpecDocument(frame, tuple(constraints), method, cap, stepwise)


def _canonical(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _set_json(subset: Subset) -> list[str]:
    return list(subset.labels)


def _rational_json(value: Fraction) -> str:
    return str(value)


def spec_payload(doc: SpecDocument) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "frame": list(doc.frame.labels),
        "constraints": [{"set": _set_json(s), "belief": _rational_json(v)}
                        for s, v in doc.constraints],
    }
    if doc.method is not None:
        payload["method"] = doc.method
    options: dict[str, Any] = {}
    if doc.cap is not None:
        options["cap"] = doc.cap
    if not doc.stepwise:
        options["stepwise"] = False
    if options:
        payload["options"] = options
    return payload


def serialize_spec(doc: SpecDocument) -> str:
    return _canonical(spec_payload(doc))


def existence_payload(report: ExistenceReport) -> dict[str, Any]:
    return {
        "verdict": report.verdict.value,
        "conditions": [
            {
                "set": _set_json(r.subject),
                "lower_family": [_set_json(s) for s in r.lower_family],
                "rhs": _rational_json(r.rhs),
                "rhs_decimal": float(r.rhs),
                "residual": _rational_json(r.residual),
                "residual_decimal": float(r.residual),
                "passed": r.passed,
            }
            for r in report.records
        ],
    }


def build_result_document(result: CompletionResult, known: KnownBeliefs,
                          requested: Sequence[Subset] | None = None) -> ResultDocument:
    """Assemble the result document, deriving beliefs for the requested sets."""
    if requested is None:
        requested = [s for s in known.family if not s.is_empty]
    beliefs = tuple((s, belief_from_mass(result.mass, s), plausibility(result.mass, s))
                    for s in requested)
    return ResultDocument(
        method=result.method,
        stage=result.stage,
        frame=known.frame,
        mass=result.mass.entries,
        beliefs=beliefs,
        specificity=specificity(result.mass),
        existence=result.report,
        symmetry=result.symmetry,
    )


def result_payload(doc: ResultDocument) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "method": doc.method,
        "stage": doc.stage,
        "frame": list(doc.frame.labels),
        "mass": [{"set": _set_json(s), "value": _rational_json(v), "decimal": float(v)}
                 for s, v in doc.mass],
        "beliefs": [{"set": _set_json(s),
                     "belief": _rational_json(b), "belief_decimal": float(b),
                     "plausibility": _rational_json(p), "plausibility_decimal": float(p)}
                    for s, b, p in doc.beliefs],
        "specificity": {"value": _rational_json(doc.specificity), "decimal": float(doc.specificity)},
        "existence": existence_payload(doc.existence),
        "symmetry": None if doc.symmetry is None else {
            "vertex_count": doc.symmetry.vertex_count,
            "averaged": doc.symmetry.averaged,
            "capped": doc.symmetry.capped,
        },
    }
    return payload


def serialize_result(doc: ResultDocument) -> str:
    """Canonical text form; equal documents serialize to identical bytes."""
    return _canonical(result_payload(doc))


def parse_result(text: str) -> ResultDocument:
    """Inverse of :func:`serialize_result`."""
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("top level must be an object")
    try:
        frame = Frame(tuple(raw["frame"]))
        mass = tuple((parse_labels(frame, e["set"], "mass.set"), _rational(e["value"], "mass.value"))
                     for e in raw["mass"])
        beliefs = tuple((parse_labels(frame, e["set"], "beliefs.set"),
                         _rational(e["belief"], "beliefs.belief"),
                         _rational(e["plausibility"], "beliefs.plausibility"))
                        for e in raw["beliefs"])
        records = tuple(
            ConditionRecord(
                subject=parse_labels(frame, c["set"], "existence.set"),
                lower_family=SetFamily(frame, tuple(parse_labels(frame, s, "existence.lower_family")
                                                    for s in c["lower_family"])),
                rhs=_rational(c["rhs"], "existence.rhs"),
                residual=_rational(c["residual"], "existence.residual"),
                passed=bool(c["passed"]),
            )
            for c in raw["existence"]["conditions"]
        )
        report = ExistenceReport(records, Verdict(raw["existence"]["verdict"]))
        symmetry = None
        if raw.get("symmetry") is not None:
            s = raw["symmetry"]
            symmetry = SymmetryInfo(s["vertex_count"], s["averaged"], s["capped"])
        return ResultDocument(
            method=raw["method"],
            stage=raw["stage"],
            frame=frame,
            mass=mass,
            beliefs=beliefs,
            specificity=_rational(raw["specificity"]["value"], "specificity"),
            existence=report,
            symmetry=symmetry,
        )
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed result document: {exc}") from None
