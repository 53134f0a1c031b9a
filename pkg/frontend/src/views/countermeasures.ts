// Countermeasures tab: server-ranked recommendations for the current
// top-risk threats, with the filter facts that admitted each one.

import type { Recommendation } from "../types.js";

export interface CountermeasureRow {
  rank: number;
  name: string;
  category: string;
  coveredThreats: string;
  budgetFlags: string;
  rationale: string[];
}

export function renderCountermeasures(recommendations: Recommendation[]): CountermeasureRow[] {
  return recommendations.map((rec) => ({
    rank: rec.score,
    name: rec.name,
    category: rec.category,
    coveredThreats: rec.matched_threats.join(", "),
    budgetFlags: rec.violated_budget_flags.join(", ") || "within budget",
    rationale: rec.rationale,
  }));
}
