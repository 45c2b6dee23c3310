// @vitest-environment jsdom
//
// End-to-end editor walkthrough against the real server: sentences are
// constructed by menu clicks alone, committed, and observed in the article
// with their blue/red markers; tab completion resolves a unique prefix.

import { beforeAll, describe, expect, inject, it } from "vitest";

import { WikiApi } from "../src/api.js";
import { App } from "../src/app.js";

const baseUrl = inject("wikiUrl");

async function waitFor<T>(probe: () => T | null | undefined,
                          what: string, timeout = 8000): Promise<T> {
  const deadline = Date.now() + timeout;
  for (;;) {
    const got = probe();
    if (got !== null && got !== undefined && got !== false) {
      return got as T;
    }
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

function menuButton(label: string): HTMLButtonElement | null {
  const buttons = document.querySelectorAll<HTMLButtonElement>(".menu-entry");
  for (const b of buttons) {
    if (b.textContent === label) {
      return b;
    }
  }
  return null;
}

async function clickEntry(label: string): Promise<void> {
  const button = await waitFor(() => menuButton(label), `menu entry ${label}`);
  button.click();
}

describe("editor walkthrough", () => {
  let api: WikiApi;
  let app: App;

  beforeAll(async () => {
    api = new WikiApi(baseUrl);
    for (const [category, surface] of [
      ["pn", "Zurich"], ["noun", "canal"], ["noun", "waterbody"],
      ["noun", "animal"], ["noun", "mammal"],
    ] as const) {
      await api.addWord(category, surface);
    }
    document.body.innerHTML = '<div id="main"></div>';
    app = new App(api, document, document.getElementById("main")!);
  });

  it("builds a hierarchy sentence by clicks and sees a blue marker",
     async () => {
    await app.showArticle("canal");
    const add = await waitFor(
      () => document.querySelector<HTMLButtonElement>(
        'button.add-sentence[data-box="unrestricted"]'),
      "add button");
    add.click();
    await clickEntry("every");
    await clickEntry("canal");
    await clickEntry("is a");
    await clickEntry("waterbody");
    const commit = await waitFor(() => {
      const b = document.querySelector<HTMLButtonElement>("#editor-commit");
      return b && !b.disabled ? b : null;
    }, "enabled commit button");
    expect(document.querySelector("#accepted-tokens")?.textContent)
      .toBe("every canal is a waterbody");
    commit.click();
    const row = await waitFor(
      () => document.querySelector(
        'section[data-box="hierarchy"] .sentence-row'),
      "hierarchy sentence");
    expect(row.textContent).toContain("every canal is a waterbody .");
    expect(row.querySelector(".triangle.blue")).not.toBeNull();
    expect(row.querySelector(".triangle.red")).toBeNull();
  });

  it("builds the negated universal and sees a red marker in the "
     + "unrestricted section", async () => {
    await app.showArticle("animal");
    document.querySelector<HTMLButtonElement>(
      'button.add-sentence[data-box="unrestricted"]')!.click();
    await clickEntry("it is false that");
    await clickEntry("every");
    await clickEntry("animal");
    await clickEntry("is a");
    await clickEntry("mammal");
    const commit = await waitFor(() => {
      const b = document.querySelector<HTMLButtonElement>("#editor-commit");
      return b && !b.disabled ? b : null;
    }, "enabled commit button");
    commit.click();
    const row = await waitFor(
      () => document.querySelector(
        'section[data-box="unrestricted"] .sentence-row'),
      "unrestricted sentence");
    expect(row.textContent).toContain("it is false that every animal is a mammal .");
    expect(row.querySelector(".triangle.red")).not.toBeNull();
    const hierarchy = document.querySelector(
      'section[data-box="hierarchy"]');
    expect(hierarchy?.querySelector(".sentence-row")).toBeNull();
  });

  it("tab completion resolves Zu to Zurich when unique", async () => {
    await app.showArticle("canal");
    document.querySelector<HTMLButtonElement>(
      'button.add-sentence[data-box="unrestricted"]')!.click();
    const buffer = await waitFor(
      () => document.querySelector<HTMLInputElement>("#editor-buffer"),
      "editor buffer");
    await waitFor(() => menuButton("Zurich"), "opening menus");
    buffer.value = "Zu";
    buffer.dispatchEvent(new KeyboardEvent("input", { bubbles: true }));
    buffer.dispatchEvent(
      new KeyboardEvent("keydown", { key: "Tab", bubbles: true }));
    await waitFor(
      () => document.querySelector("#accepted-tokens")?.textContent === "Zurich",
      "Zurich accepted");
    expect(buffer.value).toBe("");
  });
});
