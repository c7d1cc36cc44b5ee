/** Browser bootstrap: renders the app into #app and wires events to store
 * actions via data-action attributes.
 */

import { ApiClient, ObjectType } from "./api.js";
import { Store } from "./store.js";
import { renderApp } from "./view.js";

function formValue(root: HTMLElement, selector: string): string {
  const field = root.querySelector<HTMLInputElement | HTMLTextAreaElement>(selector);
  return field ? field.value.trim() : "";
}

export function mount(root: HTMLElement, store: Store): void {
  const render = () => {
    root.innerHTML = renderApp(store.state);
  };
  store.subscribe(render);
  render();

  root.addEventListener("click", (event) => {
    const target = event.target;
    if (!(target instanceof HTMLElement)) return;
    const button = target.closest<HTMLElement>("[data-action]");
    if (!button) return;
    const action = button.dataset.action;
    const value = button.dataset.value ?? "";
    switch (action) {
      case "create-project":
        event.preventDefault();
        void store.createProject(formValue(root, "input[name=project-id]"));
        break;
      case "open-project":
        event.preventDefault();
        void store.openProject(formValue(root, "input[name=project-id]"));
        break;
      case "upload-doc":
        event.preventDefault();
        void store.uploadDocument(
          formValue(root, "input[name=doc-title]") || "untitled",
          formValue(root, "textarea[name=doc-text]"),
        );
        break;
      case "toggle-filter":
        void store.toggleFilter(value);
        break;
      case "classify": {
        const row = button.closest("tr");
        const choice = row?.querySelector<HTMLSelectElement>("select[data-role=class-choice]");
        const objectField = row?.querySelector<HTMLInputElement>("input[data-role=object-value]");
        const objectValue = objectField && objectField.value.trim() ? objectField.value.trim() : undefined;
        void store.classify(value, (choice?.value ?? "FUNCTION") as ObjectType, objectValue);
        break;
      }
      case "declassify":
        void store.declassify(value);
        break;
      case "resolve":
        void store.resolveConflict(value, (button.dataset.type ?? "FUNCTION") as ObjectType);
        break;
      case "view-sentence": {
        event.preventDefault();
        const index = Number(formValue(root, "input[name=sentence-index]") || "0");
        void store.viewSentence(index);
        break;
      }
      case "toggle-node":
        store.toggleNode(button.dataset.id ?? "");
        break;
      default:
        break;
    }
  });

  root.addEventListener("change", (event) => {
    const target = event.target;
    if (!(target instanceof HTMLSelectElement)) return;
    if (target.dataset.action === "select-class") {
      store.selectClass(target.value as ObjectType);
    }
  });
}

declare global {
  interface Window {
    reqlensStore?: Store;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root) {
    // The UI is served from /ui on the same origin as the API.
    const store = new Store(new ApiClient(""));
    window.reqlensStore = store;
    mount(root, store);
  }
}
