/** Application state and actions.
 *
 * Every mutation calls exactly one documented endpoint and then refetches the
 * affected server state, so the UI never maintains its own classification
 * logic: after any action the state equals a fresh fetch. Term mutations are
 * applied optimistically and rolled back by the refetch when the server
 * rejects them with a 4xx.
 */

import {
  ApiClient,
  ApiError,
  Conflict,
  ObjectType,
  OBJECT_TYPES,
  ProjectSummary,
  SentenceTree,
  Term,
} from "./api.js";

export interface AppState {
  projectId: string | null;
  project: ProjectSummary | null;
  terms: Term[];
  conflicts: Conflict[];
  selectedClass: ObjectType;
  sentence: SentenceTree | null;
  collapsedNodes: Set<string>;
  exportText: string | null;
  exportBlocked: string | null;
  rowErrors: Map<string, string>;
  notice: string | null;
}

export function initialState(): AppState {
  return {
    projectId: null,
    project: null,
    terms: [],
    conflicts: [],
    selectedClass: "FUNCTION",
    sentence: null,
    collapsedNodes: new Set(),
    exportText: null,
    exportBlocked: null,
    rowErrors: new Map(),
    notice: null,
  };
}

/** Distinct object values of the selected class, as the server claims them. */
export function classMembers(terms: Term[], type: ObjectType): string[] {
  const seen = new Map<string, string>();
  for (const term of terms) {
    for (const claim of term.claims) {
      if (claim.type !== type) continue;
      const key = claim.object_value.toLowerCase();
      if (!seen.has(key)) seen.set(key, claim.object_value);
    }
  }
  return [...seen.values()].sort((a, b) => a.toLowerCase().localeCompare(b.toLowerCase()));
}

export function openConflicts(conflicts: Conflict[]): Conflict[] {
  return conflicts.filter((c) => c.status === "open");
}

type Listener = () => void;

export class Store {
  state: AppState = initialState();
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private requireProject(): string {
    if (this.state.projectId === null) throw new Error("no project loaded");
    return this.state.projectId;
  }

  async createProject(projectId: string): Promise<void> {
    try {
      this.state.project = await this.api.createProject(projectId);
      this.state.projectId = projectId;
      this.state.notice = `project ${projectId} created`;
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.notice = error.message;
      this.emit();
      return;
    }
    await this.refreshAll();
  }

  async openProject(projectId: string): Promise<void> {
    try {
      this.state.project = await this.api.getProject(projectId);
      this.state.projectId = projectId;
      this.state.notice = `project ${projectId} opened`;
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.notice = error.message;
      this.emit();
      return;
    }
    await this.refreshAll();
  }

  async uploadDocument(title: string, text: string): Promise<void> {
    const projectId = this.requireProject();
    try {
      const doc = await this.api.addDocument(projectId, title, text);
      const unparsed = doc.unparsed_indices.length;
      this.state.notice =
        `${doc.doc_id} "${doc.title}": ${doc.sentence_count} sentences` +
        (unparsed ? `, ${unparsed} unparsed` : "");
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.notice = error.message;
    }
    await this.refreshAll();
  }

  /** Refetch everything the panes show; the single source of truth. */
  async refreshAll(): Promise<void> {
    const projectId = this.requireProject();
    this.state.project = await this.api.getProject(projectId);
    this.state.terms = await this.api.listTerms(projectId);
    this.state.conflicts = await this.api.listConflicts(projectId);
    try {
      this.state.exportText = await this.api.exportSexpr(projectId);
      this.state.exportBlocked = null;
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.exportText = null;
      this.state.exportBlocked = error.message;
    }
    this.emit();
  }

  private findTerm(value: string): Term | undefined {
    const key = value.toLowerCase();
    return this.state.terms.find((t) => t.value.toLowerCase() === key);
  }

  private async mutateTerm(value: string, call: () => Promise<unknown>): Promise<void> {
    try {
      await call();
      this.state.rowErrors.delete(value);
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.rowErrors.set(value, error.message);
    }
    await this.refreshAll();
  }

  /** Filter a pending term or restore a filtered one. */
  async toggleFilter(value: string): Promise<void> {
    const projectId = this.requireProject();
    const term = this.findTerm(value);
    const filtering = term === undefined || term.status !== "filtered";
    if (term !== undefined && term.status !== "classified") {
      term.status = filtering ? "filtered" : "pending";
      this.emit();
    }
    await this.mutateTerm(value, () =>
      filtering ? this.api.filterTerm(projectId, value) : this.api.unfilterTerm(projectId, value),
    );
  }

  async classify(value: string, type: ObjectType, objectValue?: string): Promise<void> {
    const projectId = this.requireProject();
    const term = this.findTerm(value);
    if (term !== undefined && term.status === "pending") {
      term.status = "classified";
      this.emit();
    }
    await this.mutateTerm(value, () => this.api.classifyTerm(projectId, value, type, objectValue));
  }

  async declassify(value: string): Promise<void> {
    const projectId = this.requireProject();
    const term = this.findTerm(value);
    if (term !== undefined && term.status === "classified") {
      term.status = "pending";
      this.emit();
    }
    await this.mutateTerm(value, () => this.api.declassifyTerm(projectId, value));
  }

  async resolveConflict(value: string, type: ObjectType): Promise<void> {
    const projectId = this.requireProject();
    try {
      await this.api.resolveConflict(projectId, value, type);
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.notice = `${error.message}; view refreshed`;
    }
    await this.refreshAll();
  }

  selectClass(type: ObjectType): void {
    if (!OBJECT_TYPES.includes(type)) return;
    this.state.selectedClass = type;
    this.emit();
  }

  async viewSentence(index: number): Promise<void> {
    const projectId = this.requireProject();
    try {
      this.state.sentence = await this.api.sentenceTree(projectId, index);
      this.state.collapsedNodes = new Set();
      this.state.notice = null;
    } catch (error) {
      if (!(error instanceof ApiError)) throw error;
      this.state.notice = error.status === 404 ? "sentence not found" : error.message;
    }
    this.emit();
  }

  /** Pure view-state change; issues no request. */
  toggleNode(id: string): void {
    if (this.state.collapsedNodes.has(id)) {
      this.state.collapsedNodes.delete(id);
    } else {
      this.state.collapsedNodes.add(id);
    }
    this.emit();
  }
}
