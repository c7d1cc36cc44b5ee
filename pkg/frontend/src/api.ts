/** Typed client for the reqlens HTTP API. */

export type TermStatus = "pending" | "filtered" | "classified";
export type ObjectType = "FUNCTION" | "ENTITY" | "ATTRIBUTE";

export const OBJECT_TYPES: readonly ObjectType[] = ["FUNCTION", "ENTITY", "ATTRIBUTE"];

export interface Claim {
  type: ObjectType;
  object_value: string;
}

export interface Term {
  value: string;
  display: string;
  sentence_indices: number[];
  status: TermStatus;
  claims: Claim[];
}

export interface DocumentSummary {
  doc_id: string;
  title: string;
  sentence_count: number;
  unparsed_indices: number[];
}

export interface ProjectSummary {
  project_id: string;
  documents: { doc_id: string; title: string; sentence_count: number }[];
  sentence_count: number;
  term_count: number;
  open_conflict_count: number;
}

export interface SentenceTree {
  index: number;
  doc_id: string;
  text: string;
  tokens: string[];
  tree: string | null;
  tree_count: number;
}

export interface Conflict {
  value: string;
  types: ObjectType[];
  status: "open" | "resolved";
  resolution: ObjectType | null;
}

/** Error carrying the HTTP status and the server's detail message. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(response: Response): Promise<string> {
  const text = await response.text();
  try {
    const body = JSON.parse(text) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // not JSON; fall through to the raw body
  }
  return text || response.statusText;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.baseUrl + path, init);
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return (await response.json()) as T;
  }

  private post<T>(path: string, body?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  }

  createProject(projectId: string): Promise<ProjectSummary> {
    return this.post("/projects", { project_id: projectId });
  }

  getProject(projectId: string): Promise<ProjectSummary> {
    return this.request(`/projects/${encodeURIComponent(projectId)}`);
  }

  addDocument(projectId: string, title: string, text: string): Promise<DocumentSummary> {
    return this.post(`/projects/${encodeURIComponent(projectId)}/documents`, { title, text });
  }

  listTerms(projectId: string, status?: TermStatus): Promise<Term[]> {
    const query = status ? `?status=${encodeURIComponent(status)}` : "";
    return this.request<{ terms: Term[] }>(
      `/projects/${encodeURIComponent(projectId)}/terms${query}`,
    ).then((body) => body.terms);
  }

  sentenceTree(projectId: string, index: number): Promise<SentenceTree> {
    return this.request(`/projects/${encodeURIComponent(projectId)}/sentences/${index}/tree`);
  }

  private termAction(projectId: string, value: string, action: string, body?: unknown): Promise<Term> {
    return this.post(
      `/projects/${encodeURIComponent(projectId)}/terms/${encodeURIComponent(value)}/${action}`,
      body,
    );
  }

  filterTerm(projectId: string, value: string): Promise<Term> {
    return this.termAction(projectId, value, "filter");
  }

  unfilterTerm(projectId: string, value: string): Promise<Term> {
    return this.termAction(projectId, value, "unfilter");
  }

  classifyTerm(
    projectId: string,
    value: string,
    type: ObjectType,
    objectValue?: string,
  ): Promise<Term> {
    const body: { type: ObjectType; object_value?: string } = { type };
    if (objectValue !== undefined) body.object_value = objectValue;
    return this.termAction(projectId, value, "classify", body);
  }

  declassifyTerm(projectId: string, value: string): Promise<Term> {
    return this.termAction(projectId, value, "declassify");
  }

  listConflicts(projectId: string): Promise<Conflict[]> {
    return this.request<{ conflicts: Conflict[] }>(
      `/projects/${encodeURIComponent(projectId)}/conflicts`,
    ).then((body) => body.conflicts);
  }

  resolveConflict(projectId: string, value: string, type: ObjectType): Promise<Conflict> {
    return this.post(
      `/projects/${encodeURIComponent(projectId)}/conflicts/${encodeURIComponent(value)}/resolve`,
      { type },
    );
  }

  async exportSexpr(projectId: string): Promise<string> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/projects/${encodeURIComponent(projectId)}/export.sexpr`,
    );
    if (!response.ok) throw new ApiError(response.status, await errorDetail(response));
    return response.text();
  }
}
