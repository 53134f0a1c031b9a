// Attack Mapping: read-only catalog matrix of capability requirements
// (0 / 0.5 / 1 cells) and impact indicators per technique. Catalog
// editing stays file-based; this tab only displays.

import type { CatalogDoc } from "../types.js";

export interface AttackMappingView {
  capabilityCodes: string[];
  rows: {
    technique: string;
    variant: string;
    req: number[]; // aligned with capabilityCodes
    impacts: string[];
    effectiveness: number;
  }[];
}

export function renderAttackMapping(catalog: CatalogDoc): AttackMappingView {
  const codes = catalog.capabilities.map((c) => c.code);
  return {
    capabilityCodes: codes,
    rows: catalog.techniques.map((t) => ({
      technique: t.id,
      variant: t.variant_label,
      req: codes.map((code) => t.req[code] ?? 0),
      impacts: t.impacts,
      effectiveness: t.effectiveness,
    })),
  };
}

// Attack Mapping (UC): per-technique derived scores for the current
// assessment - every number verbatim from the server result.
import { formatRisk, formatScore } from "../format.js";
import type { AssessmentResult } from "../types.js";

export interface AttackMappingUcRow {
  technique: string;
  variant: string;
  threat: string;
  effectiveness: string;
  impact: string;
  likelihood: string;
  risk: string;
}

export function renderAttackMappingUc(result: AssessmentResult): AttackMappingUcRow[] {
  return result.entries.map((e) => ({
    technique: e.technique,
    variant: e.variant_label,
    threat: e.threat,
    effectiveness: formatScore(e.effectiveness),
    impact: formatScore(e.impact_value),
    likelihood: formatScore(e.likelihood),
    risk: formatRisk(e.risk),
  }));
}
