"""Independent oracles and random-instance generators for the test suite.

Everything here recomputes results by brute force (powerset enumeration,
basis enumeration, signed subset sums) so that the production code paths are
checked against genuinely different computations.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from belief_forge import Frame, KnownBeliefs, MassAssignment, SetFamily, Subset

ZERO = Fraction(0)


def iter_submasks(bits: int) -> Iterator[int]:
    """All submasks of ``bits``, including 0 and ``bits`` itself."""
    sub = bits
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & bits


def brute_belief(mass: MassAssignment, subset: Subset) -> Fraction:
    """Belief by enumerating every submask of the queried set."""
    lookup = {s.bits: v for s, v in mass.entries}
    return sum((lookup.get(sub, ZERO) for sub in iter_submasks(subset.bits)), start=ZERO)


def brute_mobius(values_by_bits: Sequence[Fraction], n: int) -> list[Fraction]:
    """Signed subset sums, one coefficient per mask, by double enumeration."""
    out = []
    for a in range(1 << n):
        acc = ZERO
        for b in iter_submasks(a):
            term = values_by_bits[b]
            acc += term if (a ^ b).bit_count() % 2 == 0 else -term
        out.append(acc)
    return out


def brute_defect(mass: MassAssignment, sets: Sequence[Subset]) -> Fraction:
    """Mass of sets inside the union but inside no single block."""
    union = 0
    for s in sets:
        union |= s.bits
    total = ZERO
    for s, v in mass.entries:
        if s.bits & ~union:
            continue
        if any(s.bits & ~b.bits == 0 for b in sets):
            continue
        total += v
    return total


def brute_covered(mass: MassAssignment, blocks: Sequence[Subset]) -> Fraction:
    """Mass covered by a family: total mass of sets inside some block."""
    return sum((v for s, v in mass.entries
                if any(s.bits & ~b.bits == 0 for b in blocks)), start=ZERO)


def brute_closure(family: SetFamily) -> SetFamily:
    """Closure under intersection by enumerating every nonempty subfamily."""
    members = family.members
    masks = set()
    for r in range(1, len(members) + 1):
        for combo in combinations(members, r):
            bits = combo[0].bits
            for s in combo[1:]:
                bits &= s.bits
            masks.add(bits)
    return SetFamily(family.frame, tuple(Subset(family.frame, m) for m in masks))


# --- exact brute-force linear programming --------------------------------

def _solve_columns(rows: Sequence[Sequence[Fraction]], cols: Sequence[int],
                   rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve the subsystem on the chosen columns; None unless it has a
    unique solution (i.e. the columns are independent and consistent)."""
    m, k = len(rows), len(cols)
    mat = [[Fraction(rows[i][c]) for c in cols] + [Fraction(rhs[i])] for i in range(m)]
    pivots: list[int] = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, m) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pv = mat[r][c]
        mat[r] = [v / pv for v in mat[r]]
        for i in range(m):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if len(pivots) < k:
        return None
    for i in range(m):
        if all(mat[i][j] == 0 for j in range(k)) and mat[i][k] != 0:
            return None
    x = [ZERO] * k
    for idx, c in enumerate(pivots):
        x[c] = mat[idx][k]
    return x


def _matrix_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    mat = [list(map(Fraction, row)) for row in rows]
    if not mat:
        return 0
    m, n = len(mat), len(mat[0])
    rank = 0
    for c in range(n):
        piv = next((i for i in range(rank, m) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pv = mat[rank][c]
        mat[rank] = [v / pv for v in mat[rank]]
        for i in range(m):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def brute_lp(objective: Sequence[Fraction], rows: Sequence[Sequence[Fraction]],
             rhs: Sequence[Fraction]) -> tuple[str, Fraction | None, list[tuple[Fraction, ...]]]:
    """Enumerate every basic solution; return (status, value, optimal vertices)."""
    n = len(objective)
    rank = _matrix_rank(rows)
    solutions: set[tuple[Fraction, ...]] = set()
    for cols in combinations(range(n), rank):
        x_b = _solve_columns(rows, cols, rhs)
        if x_b is None or any(v < 0 for v in x_b):
            continue
        full = [ZERO] * n
        for c, v in zip(cols, x_b):
            full[c] = v
        solutions.add(tuple(full))
    if not solutions:
        return "infeasible", None, []
    values = {sol: sum((c * x for c, x in zip(objective, sol)), start=ZERO) for sol in solutions}
    best = min(values.values())
    return "optimal", best, sorted(s for s, v in values.items() if v == best)


# --- random instances -----------------------------------------------------

def small_frame(n: int) -> Frame:
    return Frame(tuple(f"u{i + 1}" for i in range(n)))


def random_mass(rng: random.Random, frame: Frame, max_focal: int = 5,
                weight_cap: int = 12) -> MassAssignment:
    full = (1 << frame.n) - 1
    count = min(rng.randint(1, max_focal), full)
    masks = rng.sample(range(1, full + 1), count)
    weights = [rng.randint(1, weight_cap) for _ in masks]
    total = sum(weights)
    return MassAssignment.of(frame, {Subset(frame, m): Fraction(w, total)
                                     for m, w in zip(masks, weights)})


def random_subset(rng: random.Random, frame: Frame, nonempty: bool = False) -> Subset:
    lo = 1 if nonempty else 0
    return Subset(frame, rng.randint(lo, (1 << frame.n) - 1))


def random_family(rng: random.Random, frame: Frame, extra: int = 3,
                  with_bounds: bool = True) -> SetFamily:
    masks = {rng.randint(0, (1 << frame.n) - 1) for _ in range(extra)}
    if with_bounds:
        masks |= {0, (1 << frame.n) - 1}
    return SetFamily(frame, tuple(Subset(frame, m) for m in masks))


def known_from_mass(rng: random.Random, mass: MassAssignment, extra: int = 2,
                    include_focal: bool = True) -> KnownBeliefs:
    """Known beliefs read off an actual mass (hence always satisfiable)."""
    frame = mass.frame
    masks = {s.bits for s, _ in mass.entries} if include_focal else set()
    for _ in range(extra):
        masks.add(rng.randint(0, (1 << frame.n) - 1))
    lookup = {s.bits: v for s, v in mass.entries}
    values = {}
    for m in masks | {0, (1 << frame.n) - 1}:
        subset = Subset(frame, m)
        values[subset] = sum((v for b, v in lookup.items() if b & ~m == 0), start=ZERO)
    return KnownBeliefs.of(frame, values)


def lowered_failing_known(rng: random.Random, frame: Frame) -> KnownBeliefs | None:
    """Closed family whose values provably admit no belief function.

    Starts from the beliefs of an actual mass on a closed family and lowers
    one value strictly below the mass already covered beneath it, staying
    monotone; the lowered condition then fails with every intersection
    already in the family.  Returns None when the drawn instance leaves no
    room for such a perturbation.
    """
    from belief_forge import belief_from_mass, intersection_closure, mass_on_family

    mass = random_mass(rng, frame)
    family = intersection_closure(known_from_mass(rng, mass, extra=2).family)
    values = {s: belief_from_mass(mass, s) for s in family}
    known = KnownBeliefs.of(frame, values)
    masses = mass_on_family(known)
    candidates = []
    for subset in family:
        if subset.is_empty or subset == frame.full:
            continue
        covered = values[subset] - masses[subset]
        max_child = max((values[s] for s in family
                         if s.proper_subset_of(subset)), default=ZERO)
        if max_child < covered:
            candidates.append((subset, max_child, covered))
    if not candidates:
        return None
    subset, max_child, covered = candidates[rng.randrange(len(candidates))]
    values[subset] = (max_child + covered) / 2
    return KnownBeliefs.of(frame, values)


def random_monotone_known(rng: random.Random, frame: Frame, extra: int = 3,
                          closed: bool = False, denominator: int = 8) -> KnownBeliefs:
    """Monotone but otherwise arbitrary values on a random family."""
    family = random_family(rng, frame, extra)
    if closed:
        from belief_forge import intersection_closure
        family = intersection_closure(family)
    values: dict[Subset, Fraction] = {}
    for subset in family:  # canonical order is ascending, so children come first
        if subset.is_empty:
            values[subset] = ZERO
        elif subset.bits == (1 << frame.n) - 1:
            values[subset] = Fraction(1)
        else:
            floor = max((v for s, v in values.items() if s.proper_subset_of(subset)), default=ZERO)
            r = Fraction(rng.randint(0, denominator), denominator)
            values[subset] = floor + r * (1 - floor)
    return KnownBeliefs.of(frame, values)
