// Prioritization table: rows in the server's ranked order (the engine's
// risk-descending order with its tie-break), risk shown to 2 decimals,
// each row linking to countermeasure recommendations for its threat.

import { formatRisk } from "../format.js";
import type { AssessmentResult, RiskEntry } from "../types.js";

export interface PrioritizationRow {
  rank: number;
  technique: string;
  variant: string;
  threat: string;
  risk: string; // already display-rounded
  riskValue: number; // untouched server value
  feasible: boolean;
  recommendationsLink: string;
}

export function rankedEntries(result: AssessmentResult): RiskEntry[] {
  // the server's permutation is authoritative; the client never re-sorts
  return result.prioritized.map((i) => result.entries[i]);
}

export function renderPrioritization(
  result: AssessmentResult,
  assessmentId: string,
): PrioritizationRow[] {
  return rankedEntries(result).map((entry, i) => ({
    rank: i + 1,
    technique: entry.technique,
    variant: entry.variant_label,
    threat: entry.threat,
    risk: formatRisk(entry.risk),
    riskValue: entry.risk,
    feasible: entry.feasible,
    recommendationsLink: `/assessments/${assessmentId}/recommendations?top=${i + 1}`,
  }));
}

export function changedTechniques(
  before: PrioritizationRow[],
  after: PrioritizationRow[],
): Set<string> {
  const prev = new Map(before.map((r) => [`${r.technique}/${r.threat}`, r]));
  const changed = new Set<string>();
  for (const row of after) {
    const key = `${row.technique}/${row.threat}`;
    const old = prev.get(key);
    if (!old || old.rank !== row.rank || old.risk !== row.risk) {
      changed.add(key);
    }
  }
  return changed;
}

export function prioritizationHtml(
  rows: PrioritizationRow[],
  highlight: Set<string> = new Set(),
): string {
  const body = rows
    .map((r) => {
      const key = `${r.technique}/${r.threat}`;
      const cls = highlight.has(key) ? ` class="changed"` : "";
      return (
        `<tr${cls}><td>${r.rank}</td><td>${r.technique}</td><td>${r.variant}</td>` +
        `<td>${r.threat}</td><td>${r.risk}</td><td>${r.feasible ? "yes" : "no"}</td>` +
        `<td><a href="${r.recommendationsLink}">countermeasures</a></td></tr>`
      );
    })
    .join("");
  return (
    `<table><thead><tr><th>#</th><th>Technique</th><th>Variant</th>` +
    `<th>Threat</th><th>Risk</th><th>Feasible</th><th></th></tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}
