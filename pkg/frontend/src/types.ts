/** Server payload shapes. Every numeric field arrives as an exact "p/q"
 * string, usually with a float rendering alongside; the client never
 * computes belief values of its own. */

export interface RationalField {
  value: string;
  decimal: number;
}

export interface KnownBelief {
  set: string[];
  belief: string;
  decimal: number;
}

export interface FailedCondition {
  set: string[];
  lower_family: string[][];
  rhs: RationalField;
  residual: RationalField;
}

export interface PendingQuestion {
  set: string[];
  failing_set: string[];
  lower_family: string[][];
  rhs: RationalField;
  residual: RationalField;
  admissible: { min: string; max: string };
}

export interface HistoryEntry {
  kind: string;
  set: string[] | null;
  belief: string | null;
}

export type SessionState = "awaiting-answer" | "completed" | "impossible" | "exhausted";

export interface SessionView {
  id: string;
  state: SessionState;
  frame: string[];
  known: KnownBelief[];
  failed_conditions: FailedCondition[];
  verdict: string;
  pending_question: PendingQuestion | null;
  history: HistoryEntry[];
  result_available: boolean;
}

export interface MassEntry {
  set: string[];
  value: string;
  decimal: number;
}

export interface BeliefEntry {
  set: string[];
  belief: string;
  belief_decimal: number;
  plausibility: string;
  plausibility_decimal: number;
}

export interface ExistenceCondition {
  set: string[];
  lower_family: string[][];
  rhs: string;
  rhs_decimal: number;
  residual: string;
  residual_decimal: number;
  passed: boolean;
}

export interface ResultDocument {
  method: string;
  stage: number | null;
  frame: string[];
  mass: MassEntry[];
  beliefs: BeliefEntry[];
  specificity: RationalField;
  existence: { verdict: string; conditions: ExistenceCondition[] };
  symmetry: { vertex_count: number | null; averaged: boolean; capped: boolean } | null;
}

export interface AnswerRejection {
  status: 422;
  error: string;
  admissible: { min: string; max: string } | null;
  view: SessionView;
}
