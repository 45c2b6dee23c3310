// Application shell: hash routing between the word index and articles; the
// editor mounts on demand and navigates back to the article on commit.

import { WikiApi } from "./api.js";
import { renderArticle } from "./article-view.js";
import { EditorController } from "./editor-core.js";
import { EditorView } from "./editor-dom.js";

export class App {
  constructor(private api: WikiApi, private doc: Document,
              private main: HTMLElement) {}

  async route(hash: string): Promise<void> {
    const match = /^#\/word\/(.+)$/.exec(hash);
    if (match) {
      await this.showArticle(decodeURIComponent(match[1]));
    } else {
      await this.showIndex();
    }
  }

  async showIndex(): Promise<void> {
    const words = await this.api.words();
    this.main.textContent = "";
    const h2 = this.doc.createElement("h2");
    h2.className = "informal";
    h2.textContent = "Words";
    this.main.appendChild(h2);
    const list = this.doc.createElement("ul");
    list.className = "word-index";
    for (const word of words) {
      const item = this.doc.createElement("li");
      const link = this.doc.createElement("a");
      link.className = "formal";
      link.href = `#/word/${encodeURIComponent(word.surface)}`;
      link.textContent = word.display;
      item.appendChild(link);
      list.appendChild(item);
    }
    this.main.appendChild(list);
  }

  async showArticle(surface: string): Promise<void> {
    const article = await this.api.article(surface);
    this.main.textContent = "";
    const view = renderArticle(this.doc, article, (restrict) => {
      void this.openEditor(surface, restrict);
    });
    this.main.appendChild(view);
  }

  async openEditor(surface: string, restrict?: string[]): Promise<void> {
    const controller = new EditorController(this.api, restrict);
    const editor = new EditorView(controller, this.doc, () => {
      void this.showArticle(surface);
    });
    this.main.appendChild(editor.root);
    await editor.start();
  }
}

export function boot(doc: Document, baseUrl = ""): App {
  const api = new WikiApi(baseUrl);
  const main = doc.getElementById("main") as HTMLElement;
  const app = new App(api, doc, main);
  const go = () => void app.route(doc.defaultView?.location.hash ?? "");
  doc.defaultView?.addEventListener("hashchange", go);
  go();
  return app;
}

declare global {
  interface Window {
    cnlwikiBoot?: typeof boot;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" &&
    document.getElementById("main")) {
  window.cnlwikiBoot = boot;
  boot(document);
}
