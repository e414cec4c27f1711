"""Completion engines: turn partially known beliefs into a full belief function.

Four routes are provided.  ``complete_closed`` handles families closed under
intersection with a direct formula; ``complete_focusing`` builds the least
committed belief whose focal elements stay among the sets the expert actually
named; ``complete_min_specificity`` minimizes specificity by linear
programming over the intersection closure, averaging the optimal face when
the optimum is not unique; ``complete_stepwise`` relaxes the focusing idea
stage by stage, admitting deeper intersections only as needed.  Existence
checks report, per known set, the condition it must satisfy and the residual
by which it passes or fails.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .belief import KnownBeliefs, MassAssignment, mass_on_family
from .frames import SetFamily, Subset, intersection_closure, strict_lower_family, stratum
from .lp import (
    DEFAULT_FACE_CAP,
    CapExceeded,
    LinearProgram,
    LpOutcome,
    LpStatus,
    SimplexSolver,
    optimal_face_vertices,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class FamilyNotClosed(ValueError):
    """The known family is not closed under intersection."""

    def __init__(self, first: Subset, second: Subset):
        self.witness = (first, second)
        super().__init__(f"family is not closed under intersection: {first!r} and {second!r}")


class Infeasible(Exception):
    """No complete belief function matches the known values."""

    def __init__(self, message: str, report: "ExistenceReport | None" = None):
        self.report = report
        super().__init__(message)


class FocusingInapplicable(Exception):
    """No belief with focal elements inside the known family matches the values."""

    def __init__(self, report: "ExistenceReport"):
        self.report = report
        super().__init__("focusing conditions fail; see the existence report")


class Verdict(enum.Enum):
    CONSISTENT = "consistent"
    FOCUSING_INAPPLICABLE = "focusing-inapplicable"
    PROVABLY_IMPOSSIBLE = "provably-impossible"


@dataclass(frozen=True)
class ConditionRecord:
    """One existence condition: the set, its lower cover, and the residual."""

    subject: Subset
    lower_family: SetFamily
    rhs: Fraction
    residual: Fraction
    passed: bool


@dataclass(frozen=True)
class ExistenceReport:
    records: tuple[ConditionRecord, ...]
    verdict: Verdict

    @property
    def consistent(self) -> bool:
        return self.verdict is Verdict.CONSISTENT

    def failing(self) -> tuple[ConditionRecord, ...]:
        return tuple(r for r in self.records if not r.passed)


@dataclass(frozen=True)
class SymmetryInfo:
    """How a non-unique optimum was resolved."""

    vertex_count: int | None
    averaged: bool
    capped: bool


@dataclass(frozen=True)
class CompletionResult:
    mass: MassAssignment
    method: str
    stage: int | None
    symmetry: SymmetryInfo | None
    report: ExistenceReport


def _condition_records(known: KnownBeliefs) -> tuple[ConditionRecord, ...]:
    masses = mass_on_family(known)
    records = []
    for subset in known.family:
        lower = strict_lower_family(known.family, subset)
        residual = masses[subset]
        rhs = known.value(subset) - residual
        records.append(ConditionRecord(subset, lower, rhs, residual, residual >= 0))
    return tuple(records)


def detect_impossible(known: KnownBeliefs, failing: Subset) -> bool:
    """Whether a failing condition already rules out every completion.

    True only when every intersection of the failing set's lower cover is
    itself a known set and the known values still under-shoot the
    inclusion-exclusion bound; in that case no compatible belief function
    exists at all, not merely none with focal elements in the family.
    """
    family = known.family
    lower = strict_lower_family(family, failing).members
    k = len(lower)
    if k == 0:
        return False
    rhs = ZERO
    for choice in range(1, 1 << k):
        inter = None
        for i in range(k):
            if choice >> i & 1:
                inter = lower[i] if inter is None else inter & lower[i]
        assert inter is not None
        if inter not in family:
            return False
        term = known.value(inter)
        rhs += term if choice.bit_count() % 2 else -term
    return known.value(failing) < rhs


def check_focusing(known: KnownBeliefs) -> ExistenceReport:
    """Existence conditions for a belief with focal elements inside the family."""
    records = _condition_records(known)
    failing = [r.subject for r in records if not r.passed]
    if not failing:
        verdict = Verdict.CONSISTENT
    elif any(detect_impossible(known, f) for f in failing):
        verdict = Verdict.PROVABLY_IMPOSSIBLE
    else:
        verdict = Verdict.FOCUSING_INAPPLICABLE
    return ExistenceReport(records, verdict)


def _verify_closed(family: SetFamily) -> None:
    for i, a in enumerate(family.members):
        for b in family.members[i + 1:]:
            if (a & b) not in family:
                raise FamilyNotClosed(a, b)


def check_closed(known: KnownBeliefs) -> ExistenceReport:
    """Existence conditions for an intersection-closed family.

    For closed families the conditions are necessary and sufficient, so a
    failure is a proof that no compatible belief function exists.
    """
    _verify_closed(known.family)
    records = _condition_records(known)
    verdict = Verdict.CONSISTENT if all(r.passed for r in records) else Verdict.PROVABLY_IMPOSSIBLE
    return ExistenceReport(records, verdict)


def _family_mass(known: KnownBeliefs) -> MassAssignment:
    masses = mass_on_family(known)
    return MassAssignment.of(known.frame, {s: m for s, m in masses.items() if not s.is_empty and m != 0})


def complete_closed(known: KnownBeliefs) -> CompletionResult:
    """Direct completion for an intersection-closed family."""
    report = check_closed(known)
    if not report.consistent:
        raise Infeasible("no belief function matches the known values", report)
    return CompletionResult(_family_mass(known), "closed-direct", None, None, report)


def complete_focusing(known: KnownBeliefs) -> CompletionResult:
    """Least committed belief whose focal elements all lie in the known family."""
    report = check_focusing(known)
    if not report.consistent:
        raise FocusingInapplicable(report)
    return CompletionResult(_family_mass(known), "focusing", None, None, report)


def build_lp(known: KnownBeliefs, variables: Sequence[Subset]) -> LinearProgram:
    """Specificity-minimization program over the given candidate focal sets."""
    objective = tuple(Fraction(1, s.cardinality) for s in variables)
    rows = []
    rhs = []
    for subset in known.family:
        if subset.is_empty:
            continue
        rows.append(tuple(ONE if v.issubset(subset) else ZERO for v in variables))
        rhs.append(known.value(subset))
    return LinearProgram(objective, tuple(rows), tuple(rhs))


def _mass_from_vector(known: KnownBeliefs, variables: Sequence[Subset],
                      vector: Sequence[Fraction]) -> MassAssignment:
    return MassAssignment.of(known.frame, {s: v for s, v in zip(variables, vector) if v != 0})


def _symmetrize(lp: LinearProgram, outcome: LpOutcome, cap: int) -> tuple[tuple[Fraction, ...], SymmetryInfo]:
    """Average the optimal face, or fall back to the found vertex when capped."""
    try:
        vertices = optimal_face_vertices(lp, outcome, cap=cap)
    except CapExceeded:
        assert outcome.vertex is not None
        return outcome.vertex, SymmetryInfo(None, False, True)
    count = len(vertices)
    mean = tuple(sum((v[j] for v in vertices), start=ZERO) / count for j in range(lp.num_variables))
    return mean, SymmetryInfo(count, True, False)


def complete_min_specificity(known: KnownBeliefs, cap: int = DEFAULT_FACE_CAP) -> CompletionResult:
    """Least specific belief compatible with the known values.

    Candidate focal sets are restricted to the intersection closure of the
    family, which loses no optimum.  When the optimum is not unique the
    result is the arithmetic mean of the optimal face's vertices; above the
    enumeration cap a single vertex is returned and flagged.
    """
    variables = [s for s in intersection_closure(known.family) if not s.is_empty]
    lp = build_lp(known, variables)
    outcome = SimplexSolver(lp).solve()
    report = check_focusing(known)
    if outcome.status is LpStatus.INFEASIBLE:
        raise Infeasible("no belief function matches the known values", report)
    vector, symmetry = _symmetrize(lp, outcome, cap)
    return CompletionResult(_mass_from_vector(known, variables, vector),
                            "min-specificity", None, symmetry, report)


def complete_stepwise(known: KnownBeliefs, cap: int = DEFAULT_FACE_CAP) -> CompletionResult:
    """Weak focusing: admit intersections stage by stage until feasible.

    Stage j allows as focal candidates every intersection of at most j known
    sets.  The first feasible stage is solved for minimum specificity and
    symmetry-averaged; each stage's program extends the previous one, so the
    solver resumes rather than restarts.
    """
    family = known.family
    report = check_focusing(known)
    variables: list[Subset] = []
    known_bits: set[int] = set()
    solver: SimplexSolver | None = None
    for j in range(1, len(family) + 1):
        fresh = [s for s in stratum(family, j)
                 if not s.is_empty and s.bits not in known_bits]
        known_bits.update(s.bits for s in fresh)
        variables.extend(fresh)
        if solver is None:
            lp = build_lp(known, variables)
            solver = SimplexSolver(lp)
        elif fresh:
            lp = build_lp(known, variables)
            columns = [[ONE if s.issubset(a) else ZERO
                        for a in family if not a.is_empty]
                       for s in fresh]
            solver.add_variables([Fraction(1, s.cardinality) for s in fresh], columns)
        else:
            continue
        outcome = solver.solve()
        if outcome.status is LpStatus.OPTIMAL:
            vector, symmetry = _symmetrize(lp, outcome, cap)
            return CompletionResult(_mass_from_vector(known, variables, vector),
                                    "stepwise", j, symmetry, report)
    raise Infeasible("no belief function matches the known values", report)


def _select_question(known: KnownBeliefs, report: ExistenceReport) -> tuple[Subset, ConditionRecord] | None:
    family = known.family
    for record in report.failing():
        lower = record.lower_family.members
        k = len(lower)
        best: tuple[int, tuple[int, int], Subset] | None = None
        for choice in range(1, 1 << k):
            inter = None
            for i in range(k):
                if choice >> i & 1:
                    inter = lower[i] if inter is None else inter & lower[i]
            assert inter is not None
            if inter in family:
                continue
            candidate = (choice.bit_count(), inter.key, inter)
            if best is None or candidate[:2] < best[:2]:
                best = candidate
        if best is not None:
            return best[2], record
    return None


def next_question(known: KnownBeliefs) -> Subset | None:
    """Which missing intersection to ask the expert about next.

    Scans failing conditions in canonical order; for the first one offering
    intersections of its lower cover that are not yet known, returns the one
    built from the fewest sets, ties broken canonically.  Returns None when
    every failing condition already has all its intersections known, which
    by then proves impossibility.
    """
    found = _select_question(known, check_focusing(known))
    return None if found is None else found[0]
