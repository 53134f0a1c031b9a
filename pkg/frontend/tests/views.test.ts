import { describe, expect, it } from "vitest";

import { formatRisk } from "../src/format.js";
import { ViewState } from "../src/state.js";
import type { AssessmentRecord, AssessmentResult, RiskEntry } from "../src/types.js";
import {
  changedTechniques,
  prioritizationHtml,
  renderPrioritization,
} from "../src/views/prioritization.js";
import { renderUsecaseForm } from "../src/views/usecaseForm.js";

function entry(technique: string, threat: string, risk: number): RiskEntry {
  return {
    actor: "A5",
    technique,
    variant_label: "v",
    threat,
    likelihood: 0.5,
    effectiveness: 1.0,
    impact_value: 5.0,
    indicator: 1,
    risk,
    feasible: true,
  };
}

function result(entries: RiskEntry[], prioritized: number[]): AssessmentResult {
  return {
    profile: {
      title: "t",
      description: "",
      scenario: "DS2",
      actor: "A5",
      impact_grades: { T1: "Medium" },
      answers: {},
      apply_dominance_closure: true,
    },
    catalog_version: "1.0.0",
    scores: {},
    entries,
    prioritized,
  };
}

describe("prioritization view", () => {
  it("renders rows in the server order with two-decimal risk", () => {
    // server risks [1.5, 7.9, 0.0] with server permutation -> [7.90, 1.50, 0.00]
    const r = result(
      [entry("AT1.1", "T1", 1.5), entry("AT4.1", "T2", 7.9), entry("AT9.1", "T5", 0.0)],
      [1, 0, 2],
    );
    const rows = renderPrioritization(r, "ts");
    expect(rows.map((x) => x.risk)).toEqual(["7.90", "1.50", "0.00"]);
    expect(rows.map((x) => x.rank)).toEqual([1, 2, 3]);
    expect(rows[0].technique).toBe("AT4.1");
    expect(rows[0].recommendationsLink).toContain("/assessments/ts/recommendations");
  });

  it("never re-orders: the permutation is authoritative even if odd", () => {
    const r = result([entry("AT1.1", "T1", 0.1), entry("AT2.1", "T1", 9.0)], [0, 1]);
    const rows = renderPrioritization(r, "ts");
    expect(rows[0].technique).toBe("AT1.1");
  });

  it("flags changed rows between two server results", () => {
    const before = renderPrioritization(
      result([entry("AT1.1", "T1", 1.5), entry("AT4.1", "T2", 7.9)], [1, 0]), "ts");
    const after = renderPrioritization(
      result([entry("AT1.1", "T1", 8.0), entry("AT4.1", "T2", 7.9)], [0, 1]), "ts");
    const changed = changedTechniques(before, after);
    expect(changed.has("AT1.1/T1")).toBe(true);
    expect(changed.has("AT4.1/T2")).toBe(true); // rank moved 1 -> 2
  });

  it("emits an html table with highlight class", () => {
    const rows = renderPrioritization(result([entry("AT1.1", "T1", 1.5)], [0]), "ts");
    const html = prioritizationHtml(rows, new Set(["AT1.1/T1"]));
    expect(html).toContain("<table>");
    expect(html).toContain('class="changed"');
    expect(html).toContain("1.50");
  });
});

describe("risk formatting", () => {
  it("renders the magnitude from the walkthrough as 7.90", () => {
    expect(formatRisk(7.9)).toBe("7.90");
    expect(formatRisk(0)).toBe("0.00");
  });

  it("matches the service's round-half-even on exact binary midpoints", () => {
    expect(formatRisk(6.625)).toBe("6.62"); // 2 is even: stays
    expect(formatRisk(6.875)).toBe("6.88"); // 7 is odd: bumps to even
    expect(formatRisk(0.125)).toBe("0.12");
    expect(formatRisk(9.995)).toBe("9.99"); // 9.995's double is just below the half
    expect(formatRisk(4.83)).toBe("4.83");
  });
});

describe("usecase form", () => {
  const catalog = {
    version: "1.0.0",
    capabilities: [],
    techniques: [],
    threats: [
      { id: "T1", label: "Evasion", violated_property: "Integrity" },
      { id: "T2", label: "Model Corruption", violated_property: "Integrity" },
    ],
    actors: [{ id: "A5", label: "UE" }, { id: "A4", label: "HW" }],
    scenarios: [{ id: "DS1" }, { id: "DS2" }],
  };
  const questions = [
    { id: "Q1", capability: "ACD4", text: "sensor?", scale: [["Impossible", 0], ["Easy", 0.8], ["Trivial", 1]] as [string, number][] },
  ];

  function record(answers: Record<string, string>): AssessmentRecord {
    const res = result([], []);
    res.profile.answers = answers;
    return { id: "ts", revision: 0, profile: res.profile, result: res };
  }

  it("defaults unanswered questions to the scale minimum", () => {
    const view = renderUsecaseForm(record({}), questions, catalog);
    expect(view.questions[0].selected).toBe("Impossible");
  });

  it("reflects answered grades and wires each control to a PATCH endpoint", () => {
    const view = renderUsecaseForm(record({ Q1: "Easy" }), questions, catalog);
    expect(view.questions[0].selected).toBe("Easy");
    expect(view.questions[0].patchEndpoint).toBe("answers");
    expect(view.impacts.map((c) => c.field)).toEqual(["T1", "T2"]);
    expect(view.impacts[0].patchEndpoint).toBe("impacts");
    expect(view.scenario.options).toEqual(["DS1", "DS2"]);
    expect(view.actor.patchEndpoint).toBe("profile");
  });
});

describe("view state revisions", () => {
  function recordAt(revision: number): AssessmentRecord {
    const res = result([], []);
    return { id: "ts", revision, profile: res.profile, result: res };
  }

  it("applies monotone revisions and discards stale ones", () => {
    const state = new ViewState();
    expect(state.applyServerResponse(recordAt(0))).toBe(true);
    expect(state.applyServerResponse(recordAt(2))).toBe(true);
    expect(state.applyServerResponse(recordAt(1))).toBe(false); // stale
    expect(state.lastConfirmedRevision).toBe(2);
  });

  it("clears pending edits when a response is confirmed", () => {
    const state = new ViewState();
    state.beginEdit({ kind: "answer", field: "Q1", value: "Easy" });
    expect(state.pendingEdits).toHaveLength(1);
    state.applyServerResponse(recordAt(1));
    expect(state.pendingEdits).toHaveLength(0);
  });
});
