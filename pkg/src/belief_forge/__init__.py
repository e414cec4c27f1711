"""belief-forge: complete partially specified belief functions.

Given belief values known only on some subsets of a finite frame, the
toolkit builds a full belief function by minimum specificity, by the direct
closed-family formula, by focusing on the named sets, or by a staged
weakening of focusing; it checks existence exactly and can interrogate an
expert for the missing values.  All arithmetic is exact rational.
"""

from .belief import (
    BeliefTable,
    CommitmentOrder,
    KnownBeliefs,
    MassAssignment,
    MonotonicityViolation,
    NotABeliefFunction,
    as_fraction,
    belief_from_focal_values,
    belief_from_mass,
    covered_belief,
    focal_elements,
    less_committed,
    mass_from_belief,
    mass_on_family,
    plausibility,
    specificity,
    superadditivity_defect,
)
from .completion import (
    CompletionResult,
    ConditionRecord,
    ExistenceReport,
    FamilyNotClosed,
    FocusingInapplicable,
    Infeasible,
    SymmetryInfo,
    Verdict,
    check_closed,
    check_focusing,
    complete_closed,
    complete_focusing,
    complete_min_specificity,
    complete_stepwise,
    detect_impossible,
    next_question,
)
from .documents import (
    ParseError,
    ResultDocument,
    SpecDocument,
    UnknownLabel,
    ValueOutOfRange,
    build_result_document,
    parse_result,
    parse_spec,
    serialize_result,
    serialize_spec,
)
from .elicitation import ElicitationOracle, ElicitationSession, PendingQuestion, elicit
from .frames import (
    Frame,
    SetFamily,
    Subset,
    intersection_closure,
    maximal_elements,
    meet,
    strict_lower_family,
    stratum,
)
from .journal import JournalRecorder, replay_journal
from .lp import (
    CapExceeded,
    LinearProgram,
    LpOutcome,
    LpStatus,
    SimplexSolver,
    UnboundedFace,
    UnboundedObjective,
    optimal_face_vertices,
    solve,
    solve_many,
)

__version__ = "0.1.0"
