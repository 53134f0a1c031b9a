// Use-case questions form: title/description, scenario and actor
// selectors, impact grade pickers for T1..T7, one graded control per
// question. Every control change maps to one PATCH request.

import type { AssessmentRecord, CatalogDoc, Question } from "../types.js";
import { IMPACT_GRADES } from "../types.js";

export interface SelectControl {
  field: string;
  label: string;
  options: string[];
  selected: string;
  patchEndpoint: "answers" | "impacts" | "profile";
}

export interface UsecaseFormView {
  title: string;
  description: string;
  scenario: SelectControl;
  actor: SelectControl;
  impacts: SelectControl[];
  questions: SelectControl[];
}

export function renderUsecaseForm(
  record: AssessmentRecord,
  questions: Question[],
  catalog: CatalogDoc,
): UsecaseFormView {
  const profile = record.profile;
  return {
    title: profile.title,
    description: profile.description,
    scenario: {
      field: "scenario",
      label: "Deployment scenario",
      options: catalog.scenarios.map((s) => s.id),
      selected: profile.scenario,
      patchEndpoint: "profile",
    },
    actor: {
      field: "actor",
      label: "Threat actor",
      options: catalog.actors.map((a) => a.id),
      selected: profile.actor,
      patchEndpoint: "profile",
    },
    impacts: catalog.threats.map((threat) => ({
      field: threat.id,
      label: `${threat.id} ${threat.label}`,
      options: [...IMPACT_GRADES],
      selected: profile.impact_grades[threat.id] ?? "None",
      patchEndpoint: "impacts" as const,
    })),
    questions: questions.map((q) => ({
      field: q.id,
      label: `${q.id}: ${q.text}`,
      options: q.scale.map(([grade]) => grade),
      selected: profile.answers[q.id] ?? q.scale[0][0],
      patchEndpoint: "answers" as const,
    })),
  };
}

export function usecaseFormHtml(view: UsecaseFormView): string {
  const select = (c: SelectControl) =>
    `<label>${c.label}<select data-endpoint="${c.patchEndpoint}" data-field="${c.field}">` +
    c.options
      .map((o) => `<option${o === c.selected ? " selected" : ""}>${o}</option>`)
      .join("") +
    `</select></label>`;
  return [
    `<h2>${view.title}</h2>`,
    `<p>${view.description}</p>`,
    select(view.scenario),
    select(view.actor),
    `<fieldset><legend>Impact per threat</legend>${view.impacts.map(select).join("")}</fieldset>`,
    `<fieldset><legend>Capability questions</legend>${view.questions.map(select).join("")}</fieldset>`,
  ].join("\n");
}
