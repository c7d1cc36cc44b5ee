/** End-to-end analyst workflow over the HTTP contract: upload the reference
 * document, filter one term, classify two, trigger and resolve a conflict,
 * and check after every step that the panes reflect a fresh fetch of server
 * state rather than any client-side bookkeeping.
 */

import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { Store } from "../src/store.js";
import { renderApp, renderClassPane, renderConflictBanner, renderExportPane, renderTermPane, renderTreePane } from "../src/view.js";
import { FakeService } from "./fake_service.js";
import { cannedAnalyses, DUNEDIN_DOC_TEXT } from "./fixtures.js";

async function expectMirrorsServer(store: Store, api: ApiClient): Promise<void> {
  const projectId = store.state.projectId;
  expect(projectId).not.toBeNull();
  expect(store.state.terms).toEqual(await api.listTerms(projectId as string));
  expect(store.state.conflicts).toEqual(await api.listConflicts(projectId as string));
  let exportText: string | null = null;
  let exportBlocked: string | null = null;
  try {
    exportText = await api.exportSexpr(projectId as string);
  } catch (error) {
    if (!(error instanceof ApiError)) throw error;
    exportBlocked = error.message;
  }
  expect(store.state.exportText).toEqual(exportText);
  expect(store.state.exportBlocked).toEqual(exportBlocked);
}

describe("analyst workflow", () => {
  it("uploads, filters, classifies, and resolves a conflict against live server state", async () => {
    const service = new FakeService(cannedAnalyses());
    const api = new ApiClient("", service.fetch);
    const store = new Store(new ApiClient("", service.fetch));

    await store.createProject("clinic");
    await store.uploadDocument("intake", DUNEDIN_DOC_TEXT);
    await expectMirrorsServer(store, api);

    expect(store.state.terms.map((t) => t.value)).toEqual([
      "Dunedin Podiatry",
      "information system",
      "entry",
      "retrieval",
      "details",
      "histories",
    ]);
    expect(store.state.project?.documents).toEqual([
      { doc_id: "doc-1", title: "intake", sentence_count: 2 },
    ]);
    expect(renderTermPane(store.state)).toContain("(patient&#39;s) details");

    // Filter one term: the row greys out via its status class.
    await store.toggleFilter("Dunedin Podiatry");
    await expectMirrorsServer(store, api);
    expect(renderTermPane(store.state)).toContain('class="term-row filtered"');

    // Classify two terms and check the class pane per selected class.
    await store.classify("entry", "FUNCTION");
    await expectMirrorsServer(store, api);
    await store.classify("details", "ENTITY");
    await expectMirrorsServer(store, api);
    expect(renderClassPane(store.state)).toContain("entry");
    store.selectClass("ENTITY");
    expect(renderClassPane(store.state)).toContain("details");
    expect(renderClassPane(store.state)).not.toContain(">entry<");

    // A filtered term cannot be classified: error badge, state unchanged.
    await store.classify("Dunedin Podiatry", "ENTITY");
    await expectMirrorsServer(store, api);
    expect(store.state.terms.find((t) => t.value === "Dunedin Podiatry")?.status).toBe("filtered");
    expect(renderTermPane(store.state)).toContain("error-badge");

    // Export works while nothing conflicts.
    expect(store.state.exportText).toBe(
      '(OBJECT (:TYPE FUNCTION) (:VALUE "entry"))\n(OBJECT (:TYPE ENTITY) (:VALUE "details"))\n',
    );

    // Trigger a conflict: the same object claimed under a second type.
    await store.classify("entry", "ENTITY");
    await expectMirrorsServer(store, api);
    expect(store.state.project?.open_conflict_count).toBe(1);
    const banner = renderConflictBanner(store.state);
    expect(banner).toContain('class="conflict"');
    expect(banner).toContain("FUNCTION and ENTITY");
    expect(renderExportPane(store.state)).toContain("cannot export while conflicts are open");

    // Resolve it: banner clears and the export pane reflects the refetch.
    await store.resolveConflict("entry", "FUNCTION");
    await expectMirrorsServer(store, api);
    expect(renderConflictBanner(store.state)).toContain('class="clear"');
    expect(store.state.exportText).toBe(
      '(OBJECT (:TYPE FUNCTION) (:VALUE "entry"))\n(OBJECT (:TYPE ENTITY) (:VALUE "details"))\n',
    );
    expect(renderExportPane(store.state)).toContain("(OBJECT (:TYPE FUNCTION) (:VALUE &quot;entry&quot;))");

    // The resolved conflict stays visible in the history the server returns.
    expect(store.state.conflicts).toEqual([
      { value: "entry", types: ["FUNCTION", "ENTITY"], status: "resolved", resolution: "FUNCTION" },
    ]);
  });

  it("shows parse trees for parsed sentences and flags unparsed ones", async () => {
    const service = new FakeService(cannedAnalyses());
    const store = new Store(new ApiClient("", service.fetch));
    await store.createProject("clinic");
    await store.uploadDocument("intake", DUNEDIN_DOC_TEXT);

    await store.viewSentence(0);
    let pane = renderTreePane(store.state);
    expect(pane).toContain("Dunedin Podiatry");
    expect(pane).toContain("2 parses; showing the first.");
    expect(pane).toContain('data-node="0.1.2"');

    // Collapsing a node is pure view state: no request leaves the client.
    const requestsBefore = service.requestCount;
    store.toggleNode("0.1");
    pane = renderTreePane(store.state);
    expect(pane).not.toContain('data-node="0.1.2"');
    expect(pane).toContain('data-node="0.1"');
    expect(service.requestCount).toBe(requestsBefore);

    await store.viewSentence(1);
    pane = renderTreePane(store.state);
    expect(pane).toContain("UNPARSED: He see a car in the park");
  });

  it("renders the full app shell for a loaded project", async () => {
    const service = new FakeService(cannedAnalyses());
    const store = new Store(new ApiClient("", service.fetch));
    await store.createProject("clinic");
    await store.uploadDocument("intake", DUNEDIN_DOC_TEXT);
    const html = renderApp(store.state);
    expect(html).toContain("reqlens: clinic");
    expect(html).toContain('id="term-pane"');
    expect(html).toContain('id="class-pane"');
    expect(html).toContain('id="tree-pane"');
    expect(html).toContain('id="export-pane"');
    expect(html).toContain("1 documents, 2 sentences, 6 terms");
  });
});
