/** Typed client for the case service with an optimistic-revision mirror.
 *
 * The last revision seen for each case is remembered and sent back as
 * If-Match on every mutation. A 409 from the service surfaces as
 * ConflictError so the UI can show its reload banner instead of
 * overwriting someone else's edit.
 */

import type {
  ApiErrorDoc,
  CaseDoc,
  CaseSummary,
  ContactInput,
  EventDoc,
  EventInput,
  LaneLayoutDoc,
  MetricsDoc,
  SuggestionDoc,
  TimeBarDoc,
  VersionDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly detail: string,
    readonly violations: ApiErrorDoc["violations"] = undefined,
  ) {
    super(`${code}: ${detail}`);
  }
}

export class ConflictError extends ApiError {
  constructor(detail: string) {
    super(409, "CONFLICT", detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private revisions = new Map<string, number>();

  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  revisionOf(caseId: string): number | undefined {
    return this.revisions.get(caseId);
  }

  trackRevision(caseId: string, revision: number): void {
    this.revisions.set(caseId, revision);
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    mutatedCase?: string,
  ): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (mutatedCase !== undefined) {
      const revision = this.revisions.get(mutatedCase);
      if (revision === undefined) throw new Error(`no tracked revision for case ${mutatedCase}`);
      headers["If-Match"] = String(revision);
    }
    const response = await this.fetchFn(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (response.status === 204) return undefined as T;
    const text = await response.text();
    const doc = text ? JSON.parse(text) : undefined;
    if (!response.ok) {
      const err = (doc ?? {}) as ApiErrorDoc;
      if (response.status === 409) throw new ConflictError(err.detail ?? "stale revision");
      throw new ApiError(response.status, err.code ?? "HTTP", err.detail ?? response.statusText, err.violations);
    }
    if (mutatedCase !== undefined && doc && typeof doc.revision === "number") {
      this.revisions.set(mutatedCase, doc.revision);
    }
    return doc as T;
  }

  async listCases(): Promise<CaseSummary[]> {
    const doc = await this.request<{ cases: CaseSummary[] }>("GET", "/api/cases");
    return doc.cases;
  }

  async createCase(body: {
    display_name: string;
    gender?: string | null;
    birth_date?: string | null;
    case_id?: string;
  }): Promise<CaseDoc> {
    const doc = await this.request<CaseDoc>("POST", "/api/cases", body);
    this.revisions.set(doc.case_id, doc.revision);
    return doc;
  }

  async getCase(caseId: string): Promise<CaseDoc> {
    const doc = await this.request<CaseDoc>("GET", `/api/cases/${caseId}`);
    this.revisions.set(doc.case_id, doc.revision);
    return doc;
  }

  createVersion(caseId: string, label: string, fromVersion?: string) {
    return this.request<{ revision: number; version: VersionDoc }>(
      "POST",
      `/api/cases/${caseId}/netmap/versions`,
      fromVersion ? { label, from: fromVersion } : { label },
      caseId,
    );
  }

  replaceVersion(caseId: string, version: VersionDoc) {
    return this.request<{ revision: number; version: VersionDoc }>(
      "PUT",
      `/api/cases/${caseId}/netmap/versions/${version.version_id}`,
      {
        label: version.label,
        created_at: version.created_at,
        sector_config: version.sector_config,
        contacts: version.contacts,
        edges: version.edges,
      },
      caseId,
    );
  }

  addContact(caseId: string, versionId: string, contact: ContactInput) {
    return this.request<{ revision: number; contact: ContactInput }>(
      "POST",
      `/api/cases/${caseId}/netmap/versions/${versionId}/contacts`,
      contact,
      caseId,
    );
  }

  updateContact(caseId: string, versionId: string, contactId: string, contact: ContactInput) {
    return this.request<{ revision: number; contact: ContactInput }>(
      "PUT",
      `/api/cases/${caseId}/netmap/versions/${versionId}/contacts/${contactId}`,
      contact,
      caseId,
    );
  }

  deleteContact(caseId: string, versionId: string, contactId: string) {
    return this.request<{ revision: number }>(
      "DELETE",
      `/api/cases/${caseId}/netmap/versions/${versionId}/contacts/${contactId}`,
      undefined,
      caseId,
    );
  }

  addEdge(caseId: string, versionId: string, a: string, b: string) {
    return this.request<{ revision: number }>(
      "POST",
      `/api/cases/${caseId}/netmap/versions/${versionId}/edges`,
      { a, b },
      caseId,
    );
  }

  deleteEdge(caseId: string, versionId: string, a: string, b: string) {
    return this.request<{ revision: number }>(
      "DELETE",
      `/api/cases/${caseId}/netmap/versions/${versionId}/edges/${a}/${b}`,
      undefined,
      caseId,
    );
  }

  metrics(caseId: string, versionId: string) {
    return this.request<MetricsDoc>(
      "GET",
      `/api/cases/${caseId}/netmap/versions/${versionId}/metrics`,
    );
  }

  suggestLayout(caseId: string, versionId: string, params?: { mark_radius?: number; radius_tolerance?: number }) {
    return this.request<SuggestionDoc>(
      "POST",
      `/api/cases/${caseId}/netmap/versions/${versionId}/layout:suggest`,
      params ?? {},
    );
  }

  putTimebar(caseId: string, body: Partial<TimeBarDoc>) {
    return this.request<{ revision: number; timebar: TimeBarDoc }>(
      "PUT",
      `/api/cases/${caseId}/timebar`,
      body,
      caseId,
    );
  }

  addEvent(caseId: string, event: EventInput) {
    return this.request<{ revision: number; event: EventDoc }>(
      "POST",
      `/api/cases/${caseId}/timebar/events`,
      event,
      caseId,
    );
  }

  updateEvent(caseId: string, eventId: string, event: EventInput) {
    return this.request<{ revision: number; event: EventDoc }>(
      "PUT",
      `/api/cases/${caseId}/timebar/events/${eventId}`,
      event,
      caseId,
    );
  }

  deleteEvent(caseId: string, eventId: string) {
    return this.request<{ revision: number }>(
      "DELETE",
      `/api/cases/${caseId}/timebar/events/${eventId}`,
      undefined,
      caseId,
    );
  }

  timebarLayout(caseId: string) {
    return this.request<{ lanes: LaneLayoutDoc[] }>("GET", `/api/cases/${caseId}/timebar/layout`);
  }

  netmapSvgUrl(caseId: string, versionId: string): string {
    return `${this.baseUrl}/api/cases/${caseId}/export/netmap/${versionId}.svg`;
  }

  timebarSvgUrl(caseId: string): string {
    return `${this.baseUrl}/api/cases/${caseId}/export/timebar.svg`;
  }
}
