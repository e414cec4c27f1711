"""Finite frames, bitmask subsets, and set-family operations.

A frame is an ordered universe of up to 64 labelled elements; subsets are
single-word bitmasks over it.  Set families are deduplicated collections of
subsets kept in a canonical order (ascending cardinality, ties by ascending
bitmask value) so that every family-valued result is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_FRAME_SIZE = 64


@dataclass(frozen=True)
class Frame:
    """Ordered universe of distinct element labels."""

    labels: tuple[str, ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not 1 <= len(labels) <= MAX_FRAME_SIZE:
            raise ValueError(f"frame must have between 1 and {MAX_FRAME_SIZE} elements, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise ValueError("frame labels must be distinct")

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"label {label!r} is not in the frame") from None

    def subset(self, labels: Iterable[str]) -> Subset:
        bits = 0
        for label in labels:
            bits |= 1 << self.index(label)
        return Subset(self, bits)

    def subset_bits(self, bits: int) -> Subset:
        return Subset(self, bits)

    def singleton(self, label: str) -> Subset:
        return Subset(self, 1 << self.index(label))

    @property
    def empty(self) -> Subset:
        return Subset(self, 0)

    @property
    def full(self) -> Subset:
        return Subset(self, (1 << self.n) - 1)

    def iter_subsets(self) -> Iterator[Subset]:
        """All 2^n subsets in ascending bitmask order.  Caller bounds n."""
        for bits in range(1 << self.n):
            yield Subset(self, bits)

    def __repr__(self) -> str:
        return f"Frame({','.join(self.labels)})"


@dataclass(frozen=True)
class Subset:
    """Subset of a frame, stored as an n-bit mask."""

    frame: Frame
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < (1 << self.frame.n):
            raise ValueError(f"bitmask {self.bits:#x} out of range for a {self.frame.n}-element frame")

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for i, label in enumerate(self.frame.labels) if self.bits >> i & 1)

    @property
    def key(self) -> tuple[int, int]:
        """Canonical sort key: cardinality first, then bitmask value."""
        return (self.cardinality, self.bits)

    def issubset(self, other: Subset) -> bool:
        _require_same_frame(self, other)
        return self.bits & ~other.bits == 0

    def proper_subset_of(self, other: Subset) -> bool:
        return self.bits != other.bits and self.issubset(other)

    def isdisjoint(self, other: Subset) -> bool:
        _require_same_frame(self, other)
        return self.bits & other.bits == 0

    def __and__(self, other: Subset) -> Subset:
        _require_same_frame(self, other)
        return Subset(self.frame, self.bits & other.bits)

    def __or__(self, other: Subset) -> Subset:
        _require_same_frame(self, other)
        return Subset(self.frame, self.bits | other.bits)

    def complement(self) -> Subset:
        return Subset(self.frame, self.frame.full.bits & ~self.bits)

    def __repr__(self) -> str:
        return "{" + ",".join(self.labels) + "}"


def _require_same_frame(a, b) -> None:
    if a.frame != b.frame:
        raise ValueError("operands belong to different frames")


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of subsets in canonical order."""

    frame: Frame
    members: tuple[Subset, ...]

    def __post_init__(self) -> None:
        for s in self.members:
            if s.frame != self.frame:
                raise ValueError("family member belongs to a different frame")
        unique = {s.bits: s for s in self.members}
        ordered = tuple(sorted(unique.values(), key=lambda s: s.key))
        object.__setattr__(self, "members", ordered)

    @cached_property
    def _bits(self) -> frozenset[int]:
        return frozenset(s.bits for s in self.members)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, subset: Subset) -> bool:
        return subset.frame == self.frame and subset.bits in self._bits

    def with_members(self, extra: Iterable[Subset]) -> SetFamily:
        return SetFamily(self.frame, self.members + tuple(extra))

    def __repr__(self) -> str:
        return "SetFamily(" + ", ".join(repr(s) for s in self.members) + ")"


def maximal_elements(family: SetFamily) -> SetFamily:
    """Members of the family not strictly contained in another member."""
    keep = []
    for s in family.members:
        if not any(s.proper_subset_of(t) for t in family.members):
            keep.append(s)
    return SetFamily(family.frame, tuple(keep))


def strict_lower_family(family: SetFamily, a: Subset) -> SetFamily:
    """Maximal members of the family strictly contained in ``a``.

    ``a`` itself need not belong to the family.
    """
    below = [s for s in family.members if s.proper_subset_of(a)]
    return maximal_elements(SetFamily(family.frame, tuple(below)))


def meet(family: SetFamily, sets: Sequence[Subset]) -> SetFamily:
    """Maximal common lower bounds of ``sets`` within the family.

    Every element of ``sets`` must itself be a member of the family; the
    result is an antichain and may be empty only when the family lacks
    the empty set.
    """
    if not sets:
        raise ValueError("meet requires at least one set")
    for s in sets:
        if s not in family:
            raise ValueError(f"{s!r} is not a member of the family")
    lower = [c for c in family.members if all(c.issubset(s) for s in sets)]
    return maximal_elements(SetFamily(family.frame, tuple(lower)))


def intersection_closure(family: SetFamily) -> SetFamily:
    """Closure of the family under pairwise intersection (fixpoint)."""
    masks = {s.bits for s in family.members}
    frontier = set(masks)
    while frontier:
        new = set()
        for a in frontier:
            for b in masks:
                c = a & b
                if c not in masks and c not in new:
                    new.add(c)
        masks |= new
        frontier = new
    return SetFamily(family.frame, tuple(Subset(family.frame, m) for m in masks))


def stratum(family: SetFamily, j: int) -> SetFamily:
    """All intersections of exactly ``j`` distinct members of the family."""
    if not 1 <= j <= len(family):
        raise ValueError(f"stratum index must be between 1 and {len(family)}, got {j}")
    masks = set()
    for combo in combinations(family.members, j):
        bits = combo[0].bits
        for s in combo[1:]:
            bits &= s.bits
        masks.add(bits)
    return SetFamily(family.frame, tuple(Subset(family.frame, m) for m in masks))
