// Payload shapes of the risk service API. Risk numbers arrive at full
// precision and are only ever formatted client-side, never computed.

export interface RiskEntry {
  actor: string;
  technique: string;
  variant_label: string;
  threat: string;
  likelihood: number;
  effectiveness: number;
  impact_value: number;
  indicator: number;
  risk: number;
  feasible: boolean;
}

export interface Profile {
  title: string;
  description: string;
  scenario: string;
  actor: string;
  impact_grades: Record<string, string>;
  answers: Record<string, string>;
  apply_dominance_closure: boolean;
}

export interface AssessmentResult {
  profile: Profile;
  catalog_version: string;
  scores: Record<string, number>;
  entries: RiskEntry[];
  prioritized: number[];
}

export interface AssessmentRecord {
  id: string;
  revision: number;
  profile: Profile;
  result: AssessmentResult;
}

export interface Question {
  id: string;
  capability: string;
  text: string;
  scale: [string, number][];
}

export interface CatalogTechnique {
  id: string;
  family: string;
  variant_label: string;
  req: Record<string, number>;
  impacts: string[];
  effectiveness: number;
}

export interface CatalogDoc {
  version: string;
  capabilities: { code: string; axis: string; label: string }[];
  techniques: CatalogTechnique[];
  threats: { id: string; label: string; violated_property: string }[];
  actors: { id: string; label: string }[];
  scenarios: { id: string }[];
}

export interface Recommendation {
  countermeasure: string;
  name: string;
  category: string;
  matched_threats: string[];
  score: number;
  violated_budget_flags: string[];
  rationale: string[];
}

export type FormTab =
  | "UsecaseQuestions"
  | "AttackMapping"
  | "AttackMappingUC"
  | "AttackPrioritization"
  | "Countermeasures";

export const IMPACT_GRADES = ["None", "Low", "Medium", "High", "Critical"] as const;
