"""Belief-function representations, transforms, and family-relative machinery.

All belief and mass values are exact rationals (``fractions.Fraction``), so
the identities that relate masses, beliefs, and plausibilities hold exactly,
with no tolerances anywhere.  Floats are rejected on input: parse decimal
strings instead (``Fraction("0.3")`` is exactly 3/10).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .frames import (
    Frame,
    SetFamily,
    Subset,
    _require_same_frame,
    maximal_elements,
    meet,
    strict_lower_family,
)

MAX_MATERIALIZED_FRAME = 20

ZERO = Fraction(0)
ONE = Fraction(1)


class NotABeliefFunction(ValueError):
    """A set of belief values admits no nonnegative mass assignment."""

    def __init__(self, witness: Subset, mass: Fraction):
        self.witness = witness
        self.mass = mass
        super().__init__(f"not a belief function: inverse transform gives mass {mass} on {witness!r}")


class MonotonicityViolation(ValueError):
    """Belief values that decrease along set inclusion."""

    def __init__(self, message: str, *, subset: Subset | None = None,
                 value: Fraction | None = None,
                 admissible: tuple[Fraction, Fraction] | None = None):
        self.subset = subset
        self.value = value
        self.admissible = admissible
        super().__init__(message)


def as_fraction(value) -> Fraction:
    """Coerce an exact input (int, Fraction, decimal or p/q string) to Fraction."""
    if isinstance(value, float):
        raise ValueError("floats are inexact; pass a Fraction or a decimal string such as '0.3'")
    return Fraction(value)


@dataclass(frozen=True)
class MassAssignment:
    """Nonnegative weights on subsets summing to one, zero on the empty set.

    Only strictly positive entries are stored.
    """

    frame: Frame
    entries: tuple[tuple[Subset, Fraction], ...]

    def __post_init__(self) -> None:
        total = ZERO
        seen: dict[int, Subset] = {}
        for subset, value in self.entries:
            if subset.frame != self.frame:
                raise ValueError("mass entry belongs to a different frame")
            if subset.bits in seen:
                raise ValueError(f"duplicate mass entry for {subset!r}")
            seen[subset.bits] = subset
            if subset.is_empty:
                raise ValueError("the empty set cannot carry mass")
            if value <= 0:
                raise ValueError(f"stored masses must be positive, got {value} on {subset!r}")
            total += value
        if total != 1:
            raise ValueError(f"masses must sum to exactly 1, got {total}")
        ordered = tuple(sorted(self.entries, key=lambda e: e[0].key))
        object.__setattr__(self, "entries", ordered)

    @classmethod
    def of(cls, frame: Frame, values: Mapping[Subset, Fraction] | Iterable[tuple[Subset, Fraction]]) -> MassAssignment:
        """Build from subset/value pairs, dropping zero entries."""
        items = values.items() if isinstance(values, Mapping) else values
        kept = []
        for subset, raw in items:
            value = as_fraction(raw)
            if value == 0:
                continue
            kept.append((subset, value))
        return cls(frame, tuple(kept))

    @classmethod
    def vacuous(cls, frame: Frame) -> MassAssignment:
        return cls(frame, ((frame.full, ONE),))

    @cached_property
    def _lookup(self) -> dict[int, Fraction]:
        return {s.bits: v for s, v in self.entries}

    def value(self, subset: Subset) -> Fraction:
        _require_same_frame(subset, self.frame.full)
        return self._lookup.get(subset.bits, ZERO)

    def items(self) -> tuple[tuple[Subset, Fraction], ...]:
        return self.entries


class BeliefTable:
    """Belief values for every subset, materialized or backed by a mass.

    Materialized tables are limited to frames of at most
    ``MAX_MATERIALIZED_FRAME`` elements.
    """

    def __init__(self, frame: Frame, *, mass: MassAssignment | None = None,
                 values: Mapping[Subset, Fraction] | None = None):
        if (mass is None) == (values is None):
            raise ValueError("provide exactly one of mass= or values=")
        self.frame = frame
        self._mass = mass
        self._values: list[Fraction] | None = None
        if values is not None:
            if frame.n > MAX_MATERIALIZED_FRAME:
                raise ValueError(f"materialized tables are limited to {MAX_MATERIALIZED_FRAME}-element frames")
            table: list[Fraction | None] = [None] * (1 << frame.n)
            for subset, raw in values.items():
                _require_same_frame(subset, frame.full)
                v = as_fraction(raw)
                if not 0 <= v <= 1:
                    raise ValueError(f"belief {v} on {subset!r} outside [0,1]")
                table[subset.bits] = v
            if any(v is None for v in table):
                raise ValueError("materialized table must cover every subset of the frame")
            if table[0] != 0:
                raise ValueError("the empty set must have belief 0")
            if table[-1] != 1:
                raise ValueError("the full frame must have belief 1")
            self._values = table  # type: ignore[assignment]

    @classmethod
    def from_mass(cls, mass: MassAssignment) -> BeliefTable:
        return cls(mass.frame, mass=mass)

    @classmethod
    def from_values(cls, frame: Frame, values: Mapping[Subset, Fraction]) -> BeliefTable:
        return cls(frame, values=values)

    def value(self, subset: Subset) -> Fraction:
        if self._values is not None:
            return self._values[subset.bits]
        assert self._mass is not None
        return belief_from_mass(self._mass, subset)

    def materialized_values(self) -> list[Fraction]:
        """Belief for every subset, indexed by bitmask."""
        if self._values is not None:
            return list(self._values)
        if self.frame.n > MAX_MATERIALIZED_FRAME:
            raise ValueError(f"cannot materialize a table over a {self.frame.n}-element frame")
        return [self.value(s) for s in self.frame.iter_subsets()]


@dataclass(frozen=True)
class KnownBeliefs:
    """Belief values known on a family of subsets.

    The empty set and the full frame are always part of the family, with
    beliefs 0 and 1.  Values must be weakly monotone along set inclusion;
    anything else is rejected at construction since no belief function
    could extend it.
    """

    frame: Frame
    family: SetFamily
    entries: tuple[tuple[Subset, Fraction], ...]

    @classmethod
    def of(cls, frame: Frame, values: Mapping[Subset, Fraction] | Iterable[tuple[Subset, Fraction]]) -> KnownBeliefs:
        items = list(values.items() if isinstance(values, Mapping) else values)
        by_bits: dict[int, tuple[Subset, Fraction]] = {}
        for subset, raw in items:
            _require_same_frame(subset, frame.full)
            value = as_fraction(raw)
            if not 0 <= value <= 1:
                raise ValueError(f"belief {value} on {subset!r} outside [0,1]")
            if subset.bits in by_bits and by_bits[subset.bits][1] != value:
                raise ValueError(f"conflicting beliefs for {subset!r}")
            by_bits[subset.bits] = (subset, value)
        empty, full = frame.empty, frame.full
        for pinned, pv in ((empty, ZERO), (full, ONE)):
            if pinned.bits in by_bits and by_bits[pinned.bits][1] != pv:
                raise ValueError(f"belief of {pinned!r} must be {pv}")
            by_bits[pinned.bits] = (pinned, pv)
        entries = tuple(sorted(by_bits.values(), key=lambda e: e[0].key))
        for i, (a, va) in enumerate(entries):
            for b, vb in entries[i + 1:]:
                if a.proper_subset_of(b) and va > vb:
                    raise MonotonicityViolation(
                        f"belief {va} on {a!r} exceeds belief {vb} on its superset {b!r}",
                        subset=a, value=va)
        family = SetFamily(frame, tuple(s for s, _ in entries))
        return cls(frame, family, entries)

    @cached_property
    def _lookup(self) -> dict[int, Fraction]:
        return {s.bits: v for s, v in self.entries}

    def value(self, subset: Subset) -> Fraction:
        try:
            return self._lookup[subset.bits]
        except KeyError:
            raise KeyError(f"no known belief for {subset!r}") from None

    def admissible_interval(self, subset: Subset) -> tuple[Fraction, Fraction]:
        """Bounds a new belief for ``subset`` must respect to stay monotone."""
        _require_same_frame(subset, self.frame.full)
        lo = max((v for s, v in self.entries if s.issubset(subset)), default=ZERO)
        hi = min((v for s, v in self.entries if subset.issubset(s)), default=ONE)
        return lo, hi

    def with_value(self, subset: Subset, raw) -> KnownBeliefs:
        """Extended copy with one more known belief; monotonicity enforced."""
        value = as_fraction(raw)
        if subset in self.family and self.value(subset) != value:
            raise ValueError(f"conflicting beliefs for {subset!r}")
        lo, hi = self.admissible_interval(subset)
        if not lo <= value <= hi:
            raise MonotonicityViolation(
                f"belief {value} on {subset!r} breaks monotonicity; admissible range is [{lo}, {hi}]",
                subset=subset, value=value, admissible=(lo, hi))
        return KnownBeliefs.of(self.frame, dict(self.entries) | {subset: value})


def belief_from_mass(mass: MassAssignment, subset: Subset) -> Fraction:
    """Total mass carried by subsets of ``subset``."""
    _require_same_frame(subset, mass.frame.full)
    return sum((v for s, v in mass.entries if s.issubset(subset)), start=ZERO)


def plausibility(mass: MassAssignment, subset: Subset) -> Fraction:
    """One minus the belief of the complement: mass touching ``subset``."""
    return ONE - belief_from_mass(mass, subset.complement())


def mass_from_belief(table: BeliefTable) -> MassAssignment:
    """Invert a full belief table into its mass assignment.

    Raises :class:`NotABeliefFunction` (with the offending subset) when some
    inverse-transform coefficient is negative, i.e. the table is not
    infinitely monotone.
    """
    frame = table.frame
    if frame.n > MAX_MATERIALIZED_FRAME:
        raise ValueError(f"inversion needs a materialized table; frames are limited to {MAX_MATERIALIZED_FRAME} elements")
    values = table.materialized_values()
    for i in range(frame.n):
        bit = 1 << i
        for s in range(1 << frame.n):
            if s & bit:
                values[s] -= values[s ^ bit]
    negatives = [bits for bits, v in enumerate(values) if v < 0]
    if negatives:
        witness = min((Subset(frame, bits) for bits in negatives), key=lambda s: s.key)
        raise NotABeliefFunction(witness, values[witness.bits])
    return MassAssignment.of(frame, {Subset(frame, bits): v for bits, v in enumerate(values) if bits and v > 0})


def focal_elements(mass: MassAssignment) -> SetFamily:
    """The sets carrying strictly positive mass, canonically ordered."""
    return SetFamily(mass.frame, tuple(s for s, _ in mass.entries))


def specificity(mass: MassAssignment) -> Fraction:
    """Sum of mass divided by cardinality; higher means more informative."""
    return sum((v / s.cardinality for s, v in mass.entries), start=ZERO)


class CommitmentOrder(enum.Enum):
    """Pointwise comparison of two belief functions."""

    LESS_COMMITTED = "less-committed"
    MORE_COMMITTED = "more-committed"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def less_committed(first: BeliefTable, second: BeliefTable) -> CommitmentOrder:
    """Compare two belief tables pointwise over every subset of the frame."""
    if first.frame != second.frame:
        raise ValueError("belief tables live on different frames")
    if first.frame.n > MAX_MATERIALIZED_FRAME:
        raise ValueError("pointwise comparison requires a materializable frame")
    le = ge = True
    for subset in first.frame.iter_subsets():
        a, b = first.value(subset), second.value(subset)
        if a > b:
            le = False
        if a < b:
            ge = False
        if not le and not ge:
            return CommitmentOrder.INCOMPARABLE
    if le and ge:
        return CommitmentOrder.EQUAL
    return CommitmentOrder.LESS_COMMITTED if le else CommitmentOrder.MORE_COMMITTED


def covered_belief(known: KnownBeliefs, query: SetFamily | Sequence[Subset]) -> Fraction:
    """Belief that must fall inside the union of the queried known sets.

    Defined recursively by inclusion-exclusion over meets taken within the
    known family, with single sets bottoming out at their known belief.  The
    query is normalized to its maximal antichain first, and an empty meet
    (possible only when the empty set is missing from the family) counts
    as zero.
    """
    family = known.family
    members = tuple(query) if not isinstance(query, SetFamily) else query.members
    for s in members:
        if s not in family:
            raise ValueError(f"query member {s!r} is not in the known family")
    normalized = maximal_elements(SetFamily(known.frame, members)).members
    memo: dict[tuple[int, ...], Fraction] = {}

    def evaluate(antichain: tuple[Subset, ...]) -> Fraction:
        if not antichain:
            return ZERO
        if len(antichain) == 1:
            return known.value(antichain[0])
        key = tuple(s.bits for s in antichain)
        if key in memo:
            return memo[key]
        k = len(antichain)
        total = ZERO
        for choice in range(1, 1 << k):
            chosen = [antichain[i] for i in range(k) if choice >> i & 1]
            term = evaluate(meet(family, chosen).members)
            total += term if choice.bit_count() % 2 else -term
        memo[key] = total
        return total

    return evaluate(normalized)


def mass_on_family(known: KnownBeliefs) -> dict[Subset, Fraction]:
    """Mass each family member must carry if all focal elements lie in the family.

    Processes the family in ascending inclusion order; the mass of a set is
    its known belief minus the mass already covered by the family members
    strictly below it.  Values may come out negative; their signs are the
    existence test the completion engines inspect.
    """
    masses: dict[Subset, Fraction] = {}
    for subset in known.family:
        covered = sum((m for s, m in masses.items() if s.proper_subset_of(subset)), start=ZERO)
        masses[subset] = known.value(subset) - covered
    return masses


def belief_from_focal_values(known: KnownBeliefs, subset: Subset) -> Fraction:
    """Belief of any subset given beliefs on the focal family.

    For members of the family this is the stored value; otherwise it is the
    covered belief of the maximal family members strictly below the subset.
    The formula applies whatever the size of that lower cover: a single
    member passes its belief through, and an empty cover gives zero.
    """
    if subset in known.family:
        return known.value(subset)
    lower = strict_lower_family(known.family, subset)
    return covered_belief(known, lower)


def superadditivity_defect(mass: MassAssignment, sets: Sequence[Subset]) -> Fraction:
    """Gap between the belief of a union and its inclusion-exclusion bound.

    Equals the total mass of subsets of the union not contained in any
    single one of the given sets.
    """
    if not sets:
        raise ValueError("at least one set is required")
    union = sets[0]
    for s in sets[1:]:
        union = union | s
    total = belief_from_mass(mass, union)
    k = len(sets)
    for choice in range(1, 1 << k):
        inter = None
        for i in range(k):
            if choice >> i & 1:
                inter = sets[i] if inter is None else inter & sets[i]
        assert inter is not None
        term = belief_from_mass(mass, inter)
        total -= term if choice.bit_count() % 2 else -term
    return total
