// Client view state. Displayed risk always originates from a server
// response; a monotone revision counter discards stale responses that
// arrive after a newer edit's confirmation.

import type { AssessmentRecord, AssessmentResult, FormTab } from "./types.js";

export interface PendingEdit {
  kind: "answer" | "impact" | "profile";
  field: string;
  value: string;
}

export class ViewState {
  assessmentId: string | null = null;
  tab: FormTab = "UsecaseQuestions";
  pendingEdits: PendingEdit[] = [];
  lastConfirmedRevision = -1;
  lastConfirmedResult: AssessmentResult | null = null;
  private listeners: (() => void)[] = [];

  onChange(listener: () => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener();
  }

  selectTab(tab: FormTab): void {
    this.tab = tab;
    this.notify();
  }

  beginEdit(edit: PendingEdit): void {
    this.pendingEdits.push(edit);
    this.notify();
  }

  /**
   * Accept a server response. Returns true if applied; false when the
   * response is stale (an older revision than one already confirmed).
   */
  applyServerResponse(record: AssessmentRecord): boolean {
    if (record.revision < this.lastConfirmedRevision) {
      return false;
    }
    this.assessmentId = record.id;
    this.lastConfirmedRevision = record.revision;
    this.lastConfirmedResult = record.result;
    this.pendingEdits = [];
    this.notify();
    return true;
  }
}
