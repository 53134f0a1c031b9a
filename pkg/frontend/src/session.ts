// Analyst session: wires the API client to the view state and view
// builders. DOM-free, so the scripted flows are testable headless; the
// browser bootstrap in main.ts only adds event plumbing.

import { RiskServiceClient } from "./api.js";
import { ViewState } from "./state.js";
import type { AssessmentRecord, CatalogDoc, Profile, Question } from "./types.js";
import { renderAttackMapping, renderAttackMappingUc } from "./views/attackMapping.js";
import { renderCountermeasures } from "./views/countermeasures.js";
import { renderPrioritization, type PrioritizationRow } from "./views/prioritization.js";
import { renderUsecaseForm, type UsecaseFormView } from "./views/usecaseForm.js";

export class AnalystSession {
  readonly state = new ViewState();
  private catalog: CatalogDoc | null = null;
  private questions: Question[] | null = null;

  constructor(private client: RiskServiceClient) {}

  async loadReferenceData(): Promise<void> {
    this.catalog = await this.client.getCatalog();
    this.questions = await this.client.getQuestions();
  }

  requireCatalog(): CatalogDoc {
    if (!this.catalog) throw new Error("reference data not loaded");
    return this.catalog;
  }

  requireQuestions(): Question[] {
    if (!this.questions) throw new Error("reference data not loaded");
    return this.questions;
  }

  private requireRecord(): AssessmentRecord {
    if (this.state.assessmentId === null || this.state.lastConfirmedResult === null) {
      throw new Error("no assessment loaded");
    }
    return {
      id: this.state.assessmentId,
      revision: this.state.lastConfirmedRevision,
      profile: this.state.lastConfirmedResult.profile,
      result: this.state.lastConfirmedResult,
    };
  }

  async createAssessment(profile: Profile, id?: string): Promise<void> {
    this.state.applyServerResponse(await this.client.createAssessment(profile, id));
  }

  async openAssessment(id: string): Promise<void> {
    this.state.applyServerResponse(await this.client.getAssessment(id));
  }

  /** One control change = one PATCH; the response is the fresh result. */
  async setAnswer(questionId: string, grade: string): Promise<boolean> {
    this.state.beginEdit({ kind: "answer", field: questionId, value: grade });
    const record = await this.client.patchAnswers(this.requireRecord().id, {
      [questionId]: grade,
    });
    return this.state.applyServerResponse(record);
  }

  async setImpact(threatId: string, grade: string): Promise<boolean> {
    this.state.beginEdit({ kind: "impact", field: threatId, value: grade });
    const record = await this.client.patchImpacts(this.requireRecord().id, {
      [threatId]: grade,
    });
    return this.state.applyServerResponse(record);
  }

  async setProfileField(field: "scenario" | "actor", value: string): Promise<boolean> {
    this.state.beginEdit({ kind: "profile", field, value });
    const record = await this.client.patchProfile(this.requireRecord().id, {
      [field]: value,
    });
    return this.state.applyServerResponse(record);
  }

  usecaseForm(): UsecaseFormView {
    return renderUsecaseForm(this.requireRecord(), this.requireQuestions(),
      this.requireCatalog());
  }

  prioritizationTable(): PrioritizationRow[] {
    const record = this.requireRecord();
    return renderPrioritization(record.result, record.id);
  }

  attackMapping() {
    return renderAttackMapping(this.requireCatalog());
  }

  attackMappingUc() {
    return renderAttackMappingUc(this.requireRecord().result);
  }

  async countermeasures(top = 5) {
    const { recommendations } = await this.client.getRecommendations(
      this.requireRecord().id, top);
    return renderCountermeasures(recommendations);
  }

  async whatIf(patch: Record<string, unknown>) {
    return this.client.whatIf(this.requireRecord().id, patch);
  }
}
