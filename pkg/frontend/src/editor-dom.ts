// DOM layer of the predictive editor: a read-only field with the accepted
// sentence beginning, a text input for typing/filtering, one menu box per
// word class allowed at the current position, and the add-word form.

import { ApiError } from "./api.js";
import { EditorController, MenuEntry } from "./editor-core.js";
import type { SentenceJson } from "./types.js";

const MENU_TITLES: [MenuEntry["menu"], string][] = [
  ["properName", "proper names"],
  ["noun", "nouns"],
  ["transitiveVerb", "verbs"],
  ["ofConstruct", "of-constructs"],
  ["function", "function words"],
  ["reference", "references"],
];

export class EditorView {
  readonly root: HTMLElement;
  private controller: EditorController;
  private onCommitted: (sentence: SentenceJson) => void;

  constructor(controller: EditorController, doc: Document,
              onCommitted: (sentence: SentenceJson) => void) {
    this.controller = controller;
    this.onCommitted = onCommitted;
    this.root = doc.createElement("div");
    this.root.className = "editor";
    this.root.innerHTML = `
      <div class="editor-sentence">
        <span id="accepted-tokens" class="formal"></span>
        <input id="editor-buffer" class="formal" autocomplete="off"
               placeholder="type words or click below" />
      </div>
      <div class="editor-controls">
        <button id="editor-delete" class="informal">Delete</button>
        <button id="editor-commit" class="informal" disabled>Save sentence</button>
        <span id="editor-error" class="informal error"></span>
      </div>
      <div id="editor-menus" class="editor-menus"></div>
      <form id="new-word" class="new-word">
        <span class="informal">new word:</span>
        <select id="new-word-category" class="informal">
          <option value="pn">proper name</option>
          <option value="noun">noun</option>
          <option value="tv">transitive verb</option>
          <option value="of">of-construct</option>
        </select>
        <input id="new-word-surface" class="formal" autocomplete="off" />
        <button type="submit" class="informal">add word</button>
        <span id="new-word-error" class="informal error"></span>
      </form>
    `;
    this.wire();
  }

  private el<T extends HTMLElement>(id: string): T {
    return this.root.querySelector(`#${id}`) as T;
  }

  private wire(): void {
    const buffer = this.el<HTMLInputElement>("editor-buffer");
    buffer.addEventListener("keydown", (event) => {
      const key = (event as KeyboardEvent).key;
      if (key === "Tab") {
        event.preventDefault();
        this.controller.buffer = buffer.value;
        void this.controller.tab().then(() => this.render());
      } else if (key === "Enter" || key === " ") {
        event.preventDefault();
        this.controller.buffer = buffer.value;
        void this.controller.acceptBuffer().then(() => this.render());
      }
    });
    buffer.addEventListener("input", () => {
      this.controller.buffer = buffer.value;
      this.renderMenus();
    });
    this.el("editor-delete").addEventListener("click", () => {
      void this.controller.deleteLastStep().then(() => this.render());
    });
    this.el("editor-commit").addEventListener("click", () => {
      void this.controller.commit().then(
        (sentence) => this.onCommitted(sentence),
        (err) => {
          const message = err instanceof ApiError && err.code === "VersionConflict"
            ? "someone else changed this page; please reload"
            : String(err instanceof Error ? err.message : err);
          this.el("editor-error").textContent = message;
        });
    });
    this.el("new-word").addEventListener("submit", (event) => {
      event.preventDefault();
      const category = this.el<HTMLSelectElement>("new-word-category").value;
      const surface = this.el<HTMLInputElement>("new-word-surface").value.trim();
      void this.controller.addWordInline(category, surface).then(
        () => {
          this.el<HTMLInputElement>("new-word-surface").value = "";
          this.el("new-word-error").textContent = "";
          this.render();
        },
        (err) => {
          this.el("new-word-error").textContent =
            err instanceof ApiError ? err.message : String(err);
        });
    });
  }

  async start(): Promise<void> {
    await this.controller.refresh();
    this.render();
  }

  render(): void {
    this.el("accepted-tokens").textContent = this.controller.acceptedText;
    const buffer = this.el<HTMLInputElement>("editor-buffer");
    if (buffer.value !== this.controller.buffer) {
      buffer.value = this.controller.buffer;
    }
    const commit = this.el<HTMLButtonElement>("editor-commit");
    commit.disabled = !this.controller.canFinish;
    (this.el<HTMLButtonElement>("editor-delete")).disabled =
      this.controller.steps.length === 0;
    this.el("editor-error").textContent = this.controller.error ?? "";
    this.renderMenus();
  }

  private renderMenus(): void {
    const host = this.el("editor-menus");
    host.textContent = "";
    const visible = this.controller.visibleEntries;
    for (const [menu, title] of MENU_TITLES) {
      const entries = visible.filter((e) => e.menu === menu);
      if (!entries.length) {
        continue;
      }
      const box = host.ownerDocument.createElement("div");
      box.className = "menu-box";
      const heading = host.ownerDocument.createElement("h4");
      heading.className = "informal";
      heading.textContent = title;
      box.appendChild(heading);
      for (const entry of entries) {
        const button = host.ownerDocument.createElement("button");
        button.className = "menu-entry formal";
        button.dataset.menu = entry.menu;
        button.dataset.tokens = entry.tokens.join(" ");
        button.textContent = entry.label;
        button.addEventListener("click", () => {
          void this.controller.chooseEntry(entry).then(() => this.render());
        });
        box.appendChild(button);
      }
      host.appendChild(box);
    }
  }
}
