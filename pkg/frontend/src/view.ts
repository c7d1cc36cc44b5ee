/** Pure HTML renderers: state in, markup out. Event wiring lives in main.ts,
 * keyed off data-action attributes, so these functions stay testable without
 * a DOM.
 */

import { Conflict, ObjectType, OBJECT_TYPES, Term } from "./api.js";
import { AppState, classMembers, openConflicts } from "./store.js";
import { parseBracketTree, treeLines } from "./tree.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function attr(text: string): string {
  return escapeHtml(text);
}

function classOptions(selected?: ObjectType): string {
  return OBJECT_TYPES.map(
    (t) => `<option value="${t}"${t === selected ? " selected" : ""}>${t}</option>`,
  ).join("");
}

function termRow(term: Term, error: string | undefined): string {
  const indices = term.sentence_indices.join(", ");
  const filterLabel = term.status === "filtered" ? "Unfilter" : "Filter";
  const claims = term.claims
    .map((c) => `${c.type}:${escapeHtml(c.object_value)}`)
    .join(" ");
  return `
    <tr class="term-row ${term.status}" data-term="${attr(term.value)}">
      <td class="term-display">${escapeHtml(term.display)}</td>
      <td class="term-sentences">${indices}</td>
      <td class="term-status">${term.status}</td>
      <td class="term-claims">${claims}</td>
      <td class="term-actions">
        <button data-action="toggle-filter" data-value="${attr(term.value)}">${filterLabel}</button>
        <select data-role="class-choice">${classOptions()}</select>
        <input data-role="object-value" placeholder="object value" size="10">
        <button data-action="classify" data-value="${attr(term.value)}">Classify</button>
        <button data-action="declassify" data-value="${attr(term.value)}">Declassify</button>
        ${error ? `<span class="error-badge">${escapeHtml(error)}</span>` : ""}
      </td>
    </tr>`;
}

export function renderTermPane(state: AppState): string {
  const rows = state.terms.map((t) => termRow(t, state.rowErrors.get(t.value))).join("");
  return `
    <section id="term-pane">
      <h2>Terms</h2>
      <table>
        <thead>
          <tr><th>Term</th><th>Sentences</th><th>Status</th><th>Claims</th><th></th></tr>
        </thead>
        <tbody>${rows}</tbody>
      </table>
    </section>`;
}

export function renderClassPane(state: AppState): string {
  const members = classMembers(state.terms, state.selectedClass);
  const items = members
    .map((value) => `<li class="class-member">${escapeHtml(value)}</li>`)
    .join("");
  return `
    <section id="class-pane">
      <h2>Classes</h2>
      <label>Class
        <select data-action="select-class">${classOptions(state.selectedClass)}</select>
      </label>
      <ul class="class-members">${items || "<li class='empty'>no objects</li>"}</ul>
    </section>`;
}

function conflictRow(conflict: Conflict): string {
  const buttons = conflict.types
    .map(
      (t) =>
        `<button data-action="resolve" data-value="${attr(conflict.value)}" data-type="${t}">` +
        `${t}</button>`,
    )
    .join(" ");
  return `
    <li class="conflict" data-conflict="${attr(conflict.value)}">
      <strong>${escapeHtml(conflict.value)}</strong> claimed as ${conflict.types.join(" and ")};
      resolve as: ${buttons}
    </li>`;
}

export function renderConflictBanner(state: AppState): string {
  const open = openConflicts(state.conflicts);
  if (open.length === 0) return `<section id="conflict-banner" class="clear"></section>`;
  return `
    <section id="conflict-banner" class="open">
      <h2>Class conflicts</h2>
      <ul>${open.map(conflictRow).join("")}</ul>
    </section>`;
}

export function renderTreePane(state: AppState): string {
  const total = state.project?.sentence_count ?? 0;
  const picker = `
    <form data-action="view-sentence-form">
      <label>Sentence index
        <input type="number" name="sentence-index" min="0" max="${Math.max(total - 1, 0)}" value="${state.sentence?.index ?? 0}">
      </label>
      <button data-action="view-sentence">Show parse</button>
    </form>`;
  if (state.sentence === null) {
    return `<section id="tree-pane"><h2>Parse view</h2>${picker}</section>`;
  }
  const sentence = state.sentence;
  let body: string;
  if (sentence.tree === null) {
    body = `<p class="unparsed-flag">UNPARSED: ${escapeHtml(sentence.tokens.join(" "))}</p>`;
  } else {
    const lines = treeLines(parseBracketTree(sentence.tree), state.collapsedNodes);
    body =
      `<div class="tree">` +
      lines
        .map((line) => {
          const toggle = line.hasChildren
            ? `<button class="node-toggle" data-action="toggle-node" data-id="${line.id}">` +
              `${line.collapsed ? "+" : "-"}</button>`
            : "";
          const leaf = line.leaf === null ? "" : ` <span class="leaf">"${escapeHtml(line.leaf)}"</span>`;
          return (
            `<div class="tree-line" data-node="${line.id}" style="--depth: ${line.depth}">` +
            `${toggle}<span class="node-label">${escapeHtml(line.label)}</span>${leaf}</div>`
          );
        })
        .join("") +
      `</div>`;
  }
  const ambiguity =
    sentence.tree_count > 1
      ? `<p class="ambiguity-note">${sentence.tree_count} parses; showing the first.</p>`
      : "";
  return `
    <section id="tree-pane">
      <h2>Parse view</h2>
      ${picker}
      <p class="sentence-text">${escapeHtml(sentence.text)}</p>
      ${ambiguity}
      ${body}
    </section>`;
}

export function renderExportPane(state: AppState): string {
  if (state.exportBlocked !== null) {
    return `
      <section id="export-pane" class="blocked">
        <h2>Export</h2>
        <p class="export-blocked">${escapeHtml(state.exportBlocked)}</p>
      </section>`;
  }
  return `
    <section id="export-pane">
      <h2>Export</h2>
      <pre class="export-text">${escapeHtml(state.exportText ?? "")}</pre>
    </section>`;
}

function renderHeader(state: AppState): string {
  const notice = state.notice ? `<p class="notice">${escapeHtml(state.notice)}</p>` : "";
  if (state.projectId === null) {
    return `
      <header>
        <h1>reqlens</h1>
        ${notice}
        <form data-action="project-form">
          <input name="project-id" placeholder="project id">
          <button data-action="create-project">Create</button>
          <button data-action="open-project">Open</button>
        </form>
      </header>`;
  }
  const summary = state.project
    ? `${state.project.documents.length} documents, ${state.project.sentence_count} sentences, ` +
      `${state.project.term_count} terms`
    : "";
  return `
    <header>
      <h1>reqlens: ${escapeHtml(state.projectId)}</h1>
      <p class="project-summary">${summary}</p>
      ${notice}
      <form data-action="upload-form">
        <input name="doc-title" placeholder="document title">
        <textarea name="doc-text" rows="4" placeholder="requirement text"></textarea>
        <button data-action="upload-doc">Analyse document</button>
      </form>
    </header>`;
}

export function renderApp(state: AppState): string {
  if (state.projectId === null) return renderHeader(state);
  return (
    renderHeader(state) +
    renderConflictBanner(state) +
    `<main class="panes">` +
    renderTermPane(state) +
    renderClassPane(state) +
    `</main>` +
    renderTreePane(state) +
    renderExportPane(state)
  );
}
