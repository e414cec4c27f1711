"""Exact rational linear programming for small equality-constrained problems.

Two-phase simplex with Bland's rule over ``fractions.Fraction`` arithmetic:
optimality, infeasibility, and degeneracy are all decided exactly.  Solvers
can be extended with new columns and resumed from the basis they stopped at,
which is what the staged completion engine relies on.  The optimal face of a
solved program can be enumerated vertex by vertex for center-of-gravity
averaging.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Sequence

DEFAULT_FACE_CAP = 24
_BASIS_SEARCH_LIMIT = 100_000

ZERO = Fraction(0)
ONE = Fraction(1)


class CapExceeded(RuntimeError):
    """Vertex enumeration refused: problem larger than the configured cap."""


class UnboundedObjective(RuntimeError):
    """The objective decreases without bound over the feasible region."""


class UnboundedFace(RuntimeError):
    """The optimal face contains a ray, so its extreme points do not describe it."""


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LinearProgram:
    """Minimize c.x subject to Ax = b and x >= 0, all data rational."""

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        objective = tuple(Fraction(v) for v in self.objective)
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        rhs = tuple(Fraction(v) for v in self.rhs)
        object.__setattr__(self, "objective", objective)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "rhs", rhs)
        if len(rows) != len(rhs):
            raise ValueError("constraint matrix and right-hand side disagree on row count")
        for row in rows:
            if len(row) != len(objective):
                raise ValueError("constraint row length does not match the variable count")

    @property
    def num_variables(self) -> int:
        return len(self.objective)


@dataclass(frozen=True, eq=False)
class LpOutcome:
    status: LpStatus
    vertex: tuple[Fraction, ...] | None
    objective_value: Fraction | None
    phase_one_gap: Fraction | None = None
    solver: "SimplexSolver | None" = field(default=None, repr=False)


class SimplexSolver:
    """Mutable exact tableau; single-use per problem, resumable across stages.

    The artificial block of the tableau doubles as the current basis inverse,
    which is what makes appending columns to an already-pivoted tableau cheap.
    """

    def __init__(self, lp: LinearProgram):
        self.n = lp.num_variables
        self.m = len(lp.rows)
        self.costs = list(lp.objective)
        self.signs = [1 if b >= 0 else -1 for b in lp.rhs]
        self.rows: list[list[Fraction]] = []
        for i, (row, b) in enumerate(zip(lp.rows, lp.rhs)):
            sign = self.signs[i]
            art = [ONE if j == i else ZERO for j in range(self.m)]
            self.rows.append([sign * v for v in row] + art + [sign * b])
        self.basis = list(range(self.n, self.n + self.m))
        self.cost_row: list[Fraction] = []
        self.feasible: bool | None = None
        self.phase_one_gap: Fraction | None = None

    @property
    def width(self) -> int:
        return self.n + self.m + 1

    def _rebuild_cost_row(self, costs: Sequence[Fraction]) -> None:
        cost_row = list(costs) + [ZERO] * (self.m + 1)
        for r, b in enumerate(self.basis):
            coeff = cost_row[b]
            if coeff:
                row = self.rows[r]
                for j in range(self.width):
                    cost_row[j] -= coeff * row[j]
        self.cost_row = cost_row

    def _pivot(self, r: int, j: int) -> None:
        row = self.rows[r]
        piv = row[j]
        if piv != 1:
            self.rows[r] = row = [v / piv for v in row]
        for i, other in enumerate(self.rows):
            if i != r and other[j]:
                factor = other[j]
                self.rows[i] = [a - factor * b for a, b in zip(other, row)]
        if self.cost_row and self.cost_row[j]:
            factor = self.cost_row[j]
            self.cost_row = [a - factor * b for a, b in zip(self.cost_row, row)]
        self.basis[r] = j

    def _entering(self, structural_only: bool) -> int | None:
        limit = self.n if structural_only else self.n + self.m
        for j in range(limit):
            if self.cost_row[j] < 0:
                return j
        return None

    def _leaving(self, j: int) -> int | None:
        rhs = self.width - 1
        best_ratio: Fraction | None = None
        best_row = -1
        best_var = -1
        for r, row in enumerate(self.rows):
            coeff = row[j]
            if coeff > 0:
                ratio = row[rhs] / coeff
                if best_ratio is None or ratio < best_ratio or (ratio == best_ratio and self.basis[r] < best_var):
                    best_ratio, best_row, best_var = ratio, r, self.basis[r]
        return best_row if best_ratio is not None else None

    def _run(self, structural_only: bool) -> None:
        while True:
            j = self._entering(structural_only)
            if j is None:
                return
            r = self._leaving(j)
            if r is None:
                raise UnboundedObjective(f"column {j} admits an improving ray")
            self._pivot(r, j)

    def _ensure_phase_one(self) -> None:
        if self.feasible is not None:
            return
        self._rebuild_cost_row([ZERO] * self.n + [ONE] * self.m)
        self._run(structural_only=False)
        rhs = self.width - 1
        gap = sum((self.rows[r][rhs] for r, b in enumerate(self.basis) if b >= self.n), start=ZERO)
        self.phase_one_gap = gap
        self.feasible = gap == 0

    def _expel_artificials(self) -> None:
        for r, b in enumerate(self.basis):
            if b >= self.n:
                row = self.rows[r]
                for j in range(self.n):
                    if row[j]:
                        self._pivot(r, j)
                        break
                # a fully zero structural row is redundant for the current
                # columns; its artificial stays basic at zero and is inert

    def solve(self) -> LpOutcome:
        self._ensure_phase_one()
        if not self.feasible:
            return LpOutcome(LpStatus.INFEASIBLE, None, None, self.phase_one_gap, self)
        self._expel_artificials()
        self._rebuild_cost_row(self.costs + [ZERO] * self.m)
        self._run(structural_only=True)
        vertex = self.extract_vertex()
        value = sum((c * x for c, x in zip(self.costs, vertex)), start=ZERO)
        return LpOutcome(LpStatus.OPTIMAL, vertex, value, Fraction(0), self)

    def extract_vertex(self) -> tuple[Fraction, ...]:
        rhs = self.width - 1
        x = [ZERO] * self.n
        for r, b in enumerate(self.basis):
            if b < self.n:
                x[b] = self.rows[r][rhs]
        return tuple(x)

    def add_variables(self, costs: Sequence[Fraction], columns: Sequence[Sequence[Fraction]]) -> None:
        """Append new structural variables (one original-space column each).

        The current basis is kept, so a later ``solve`` resumes from where
        the previous phase stopped instead of starting over.
        """
        if len(costs) != len(columns):
            raise ValueError("one cost per new column is required")
        k = len(columns)
        if k == 0:
            return
        for col in columns:
            if len(col) != self.m:
                raise ValueError("new columns must have one entry per constraint row")
        art0 = self.n
        for r, row in enumerate(self.rows):
            transformed = []
            for col in columns:
                v = ZERO
                for i in range(self.m):
                    binv = row[art0 + i]
                    if binv:
                        v += binv * self.signs[i] * Fraction(col[i])
                transformed.append(v)
            self.rows[r] = row[:art0] + transformed + row[art0:]
        self.costs.extend(Fraction(c) for c in costs)
        self.basis = [b + k if b >= art0 else b for b in self.basis]
        self.n += k
        self.cost_row = []
        if self.feasible is False:
            self.feasible = None  # new columns may restore feasibility

    def clone(self) -> SimplexSolver:
        dup = object.__new__(SimplexSolver)
        dup.n, dup.m = self.n, self.m
        dup.costs = list(self.costs)
        dup.signs = list(self.signs)
        dup.rows = [list(row) for row in self.rows]
        dup.basis = list(self.basis)
        dup.cost_row = list(self.cost_row)
        dup.feasible = self.feasible
        dup.phase_one_gap = self.phase_one_gap
        return dup


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve a program, returning one optimal basic vertex or infeasibility."""
    return SimplexSolver(lp).solve()


def solve_many(lp: LinearProgram, objectives: Sequence[Sequence[Fraction]]) -> list[LpOutcome]:
    """Solve several objectives over one constraint system.

    The feasibility phase runs once and each objective resumes from the
    shared feasible basis; ``lp.objective`` itself is not solved.
    """
    base = SimplexSolver(lp)
    base._ensure_phase_one()
    if not base.feasible:
        outcome = LpOutcome(LpStatus.INFEASIBLE, None, None, base.phase_one_gap, base)
        return [outcome] * len(objectives)
    results = []
    for costs in objectives:
        if len(costs) != lp.num_variables:
            raise ValueError("objective length does not match the variable count")
        solver = base.clone()
        solver.costs = [Fraction(c) for c in costs]
        results.append(solver.solve())
    return results


def optimal_face_vertices(lp: LinearProgram, outcome: LpOutcome | None = None,
                          cap: int = DEFAULT_FACE_CAP) -> list[tuple[Fraction, ...]]:
    """All basic feasible solutions attaining the optimal objective.

    Walks the graph of optimal bases through zero-reduced-cost pivots,
    deduplicates coincident (degenerate) bases by solution vector, and
    returns the vertices in a deterministic order.  Refuses problems with
    more variables than ``cap``.
    """
    if lp.num_variables > cap:
        raise CapExceeded(f"{lp.num_variables} variables exceed the enumeration cap of {cap}")
    if outcome is None or outcome.solver is None:
        outcome = solve(lp)
    if outcome.status is not LpStatus.OPTIMAL:
        raise ValueError("optimal face enumeration needs an optimal outcome")
    start = outcome.solver
    assert start is not None
    rhs = start.width - 1
    seen_bases = {frozenset(start.basis)}
    vertices = {start.extract_vertex()}
    queue = [start]
    while queue:
        node = queue.pop()
        basic = set(node.basis)
        for j in range(node.n):
            if j in basic or node.cost_row[j] != 0:
                continue
            best_ratio: Fraction | None = None
            for row in node.rows:
                if row[j] > 0:
                    ratio = row[rhs] / row[j]
                    if best_ratio is None or ratio < best_ratio:
                        best_ratio = ratio
            if best_ratio is None:
                raise UnboundedFace(f"column {j} is an optimal ray; the face has no vertex description")
            for r, row in enumerate(node.rows):
                if row[j] > 0 and row[rhs] / row[j] == best_ratio:
                    key = frozenset(b for i, b in enumerate(node.basis) if i != r) | {j}
                    if key in seen_bases:
                        continue
                    if len(seen_bases) > _BASIS_SEARCH_LIMIT:
                        raise CapExceeded("optimal face has too many bases to enumerate")
                    seen_bases.add(key)
                    child = node.clone()
                    child._pivot(r, j)
                    vertices.add(child.extract_vertex())
                    queue.append(child)
    return sorted(vertices)
