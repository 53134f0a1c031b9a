// Browser bootstrap: tab bar + event delegation over the DOM-free views.

import { RiskServiceClient } from "./api.js";
import { AnalystSession } from "./session.js";
import type { FormTab } from "./types.js";
import { prioritizationHtml } from "./views/prioritization.js";
import { usecaseFormHtml } from "./views/usecaseForm.js";

const TABS: FormTab[] = [
  "UsecaseQuestions",
  "AttackMapping",
  "AttackMappingUC",
  "AttackPrioritization",
  "Countermeasures",
];

export async function boot(root: HTMLElement, baseUrl: string,
                           assessmentId: string): Promise<AnalystSession> {
  const session = new AnalystSession(new RiskServiceClient(baseUrl));
  await session.loadReferenceData();
  await session.openAssessment(assessmentId);

  const render = async () => {
    const tab = session.state.tab;
    const nav = TABS.map(
      (t) => `<button data-tab="${t}"${t === tab ? ' class="active"' : ""}>${t}</button>`,
    ).join("");
    let body = "";
    switch (tab) {
      case "UsecaseQuestions":
        body = usecaseFormHtml(session.usecaseForm());
        break;
      case "AttackMapping": {
        const view = session.attackMapping();
        const head = view.capabilityCodes.map((c) => `<th>${c}</th>`).join("");
        const rows = view.rows
          .map((r) =>
            `<tr><td>${r.technique}</td><td>${r.variant}</td>` +
            r.req.map((v) => `<td>${v}</td>`).join("") + `</tr>`)
          .join("");
        body = `<table><thead><tr><th>id</th><th>variant</th>${head}</tr></thead><tbody>${rows}</tbody></table>`;
        break;
      }
      case "AttackMappingUC": {
        const rows = session.attackMappingUc()
          .map((r) =>
            `<tr><td>${r.technique}</td><td>${r.threat}</td><td>${r.effectiveness}</td>` +
            `<td>${r.impact}</td><td>${r.likelihood}</td><td>${r.risk}</td></tr>`)
          .join("");
        body = `<table><thead><tr><th>id</th><th>threat</th><th>Ef</th><th>Imp</th><th>LH</th><th>Risk</th></tr></thead><tbody>${rows}</tbody></table>`;
        break;
      }
      case "AttackPrioritization":
        body = prioritizationHtml(session.prioritizationTable());
        break;
      case "Countermeasures": {
        const rows = (await session.countermeasures())
          .map((r) =>
            `<tr><td>${r.rank}</td><td>${r.name}</td><td>${r.category}</td>` +
            `<td>${r.coveredThreats}</td><td>${r.budgetFlags}</td></tr>`)
          .join("");
        body = `<table><thead><tr><th>#</th><th>Countermeasure</th><th>Category</th><th>Covers</th><th>Budget</th></tr></thead><tbody>${rows}</tbody></table>`;
        break;
      }
    }
    root.innerHTML = `<nav>${nav}</nav><main>${body}</main>`;
  };

  root.addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    const tab = target.dataset?.tab as FormTab | undefined;
    if (tab) session.state.selectTab(tab);
  });

  root.addEventListener("change", async (ev) => {
    const target = ev.target as HTMLSelectElement;
    const endpoint = target.dataset?.endpoint;
    const field = target.dataset?.field;
    if (!endpoint || !field) return;
    if (endpoint === "answers") await session.setAnswer(field, target.value);
    else if (endpoint === "impacts") await session.setImpact(field, target.value);
    else await session.setProfileField(field as "scenario" | "actor", target.value);
  });

  session.state.onChange(() => void render());
  await render();
  return session;
}
