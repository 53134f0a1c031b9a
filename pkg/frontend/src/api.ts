import type {
  AssessmentRecord,
  CatalogDoc,
  Profile,
  Question,
  Recommendation,
  RiskEntry,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // leave statusText
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class RiskServiceClient {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  getCatalog(): Promise<CatalogDoc> {
    return request(this.url("/catalog"));
  }

  getQuestions(): Promise<Question[]> {
    return request(this.url("/questions"));
  }

  createAssessment(profile: Profile, id?: string): Promise<AssessmentRecord> {
    return request(this.url("/assessments"), {
      method: "POST",
      body: JSON.stringify(id ? { id, profile } : { profile }),
    });
  }

  getAssessment(id: string): Promise<AssessmentRecord> {
    return request(this.url(`/assessments/${id}`));
  }

  patchAnswers(id: string, answers: Record<string, string>): Promise<AssessmentRecord> {
    return request(this.url(`/assessments/${id}/answers`), {
      method: "PATCH",
      body: JSON.stringify(answers),
    });
  }

  patchImpacts(id: string, grades: Record<string, string>): Promise<AssessmentRecord> {
    return request(this.url(`/assessments/${id}/impacts`), {
      method: "PATCH",
      body: JSON.stringify(grades),
    });
  }

  patchProfile(id: string, patch: Record<string, unknown>): Promise<AssessmentRecord> {
    return request(this.url(`/assessments/${id}/profile`), {
      method: "PATCH",
      body: JSON.stringify(patch),
    });
  }

  getRisk(id: string): Promise<{ revision: number; entries: RiskEntry[] }> {
    return request(this.url(`/assessments/${id}/risk`));
  }

  getPrioritization(id: string): Promise<{ revision: number; ranked: RiskEntry[] }> {
    return request(this.url(`/assessments/${id}/prioritization`));
  }

  whatIf(id: string, patch: Record<string, unknown>): Promise<{
    deltas: {
      technique: string;
      threat: string;
      old_risk: number;
      new_risk: number;
      old_rank: number;
      new_rank: number;
      rank_shift: number;
    }[];
  }> {
    return request(this.url(`/assessments/${id}/what-if`), {
      method: "POST",
      body: JSON.stringify(patch),
    });
  }

  getRecommendations(id: string, top = 5): Promise<{ recommendations: Recommendation[] }> {
    return request(this.url(`/assessments/${id}/recommendations?top=${top}`));
  }
}
