// Editor state machine. Pure of DOM concerns: the server's prediction is the
// single source of grammar truth, so every mutation here is "append tokens,
// refetch menus". A composite menu entry ("it is false that", "part of")
// counts as one undoable step.

import { ApiError } from "./api.js";
import type { PredictionJson, SentenceJson, WordJson } from "./types.js";

/** The slice of the API client the editor needs (stubbed in tests). */
export interface EditorApi {
  predict(prefix: string[], restrict?: string[]): Promise<PredictionJson>;
  createSentence(tokens: string[], restrict?: string[]): Promise<SentenceJson>;
  addWord(category: string, surface: string): Promise<WordJson>;
}

export interface MenuEntry {
  menu: "properName" | "noun" | "transitiveVerb" | "ofConstruct"
      | "function" | "reference";
  label: string;
  tokens: string[];
}

export interface EditorStep {
  label: string;
  tokens: string[];
}

const CATEGORY_MENUS = [
  "properName", "noun", "transitiveVerb", "ofConstruct",
] as const;

function wordEntry(menu: MenuEntry["menu"], word: WordJson): MenuEntry {
  if (word.category === "of") {
    return { menu, label: word.display, tokens: [word.surface, "of"] };
  }
  return { menu, label: word.surface, tokens: [word.surface] };
}

/** All clickable entries for one prediction, in display order. */
export function menuEntries(prediction: PredictionJson): MenuEntry[] {
  const out: MenuEntry[] = [];
  for (const menu of CATEGORY_MENUS) {
    for (const word of prediction.categoryMenus[menu]) {
      out.push(wordEntry(menu, word));
    }
  }
  for (const phrase of prediction.functionMenu) {
    out.push({ menu: "function", label: phrase, tokens: phrase.split(" ") });
  }
  for (const name of prediction.varRefMenu) {
    out.push({ menu: "reference", label: name, tokens: [name] });
  }
  for (const name of prediction.varIntroNames) {
    out.push({ menu: "reference", label: `new ${name}`, tokens: [name] });
  }
  return out;
}

/** Every single token that can legally come next. */
export function offeredTokens(prediction: PredictionJson): Set<string> {
  const out = new Set<string>();
  for (const menu of CATEGORY_MENUS) {
    for (const word of prediction.categoryMenus[menu]) {
      out.add(word.surface);
    }
  }
  for (const phrase of prediction.functionMenu) {
    out.add(phrase.split(" ")[0]);
  }
  for (const name of prediction.varRefMenu) {
    out.add(name);
  }
  for (const name of prediction.varIntroNames) {
    out.add(name);
  }
  return out;
}

/** The step to append when the user types one word, or null if the word is
 * not a legal continuation. */
export function stepForTypedWord(prediction: PredictionJson,
                                 word: string): EditorStep | null {
  if (!offeredTokens(prediction).has(word)) {
    return null;
  }
  return { label: word, tokens: [word] };
}

/** Entries whose label continues what the user has typed (live filter). */
export function filterEntries(entries: MenuEntry[],
                              buffer: string): MenuEntry[] {
  if (!buffer) {
    return entries;
  }
  const needle = buffer.toLowerCase();
  return entries.filter((e) => e.label.toLowerCase().startsWith(needle));
}

export type TabResult =
  | { kind: "token"; token: string }
  | { kind: "prefix"; prefix: string }
  | { kind: "none" };

/** Autocompletion against the union of the current menus. */
export function tabComplete(prediction: PredictionJson,
                            buffer: string): TabResult {
  if (!buffer) {
    return { kind: "none" };
  }
  let matches = [...offeredTokens(prediction)].filter(
    (t) => t.startsWith(buffer));
  if (!matches.length) {
    const needle = buffer.toLowerCase();
    matches = [...offeredTokens(prediction)].filter(
      (t) => t.toLowerCase().startsWith(needle));
  }
  if (!matches.length) {
    return { kind: "none" };
  }
  if (matches.length === 1) {
    return { kind: "token", token: matches[0] };
  }
  let prefix = matches[0];
  for (const m of matches.slice(1)) {
    let k = 0;
    while (k < prefix.length && k < m.length && prefix[k] === m[k]) {
      k += 1;
    }
    prefix = prefix.slice(0, k);
  }
  return prefix.length > buffer.length
    ? { kind: "prefix", prefix }
    : { kind: "none" };
}

export class EditorController {
  steps: EditorStep[] = [];
  prediction: PredictionJson | null = null;
  buffer = "";
  error: string | null = null;
  /** Box mode: the sentence-pattern restriction sent with every request. */
  restrict?: string[];

  constructor(private api: EditorApi, restrict?: string[]) {
    this.restrict = restrict;
  }

  get acceptedTokens(): string[] {
    return this.steps.flatMap((s) => s.tokens);
  }

  get acceptedText(): string {
    return this.acceptedTokens.join(" ");
  }

  get canFinish(): boolean {
    return this.prediction !== null && this.prediction.canFinish;
  }

  get entries(): MenuEntry[] {
    return this.prediction ? menuEntries(this.prediction) : [];
  }

  get visibleEntries(): MenuEntry[] {
    return filterEntries(this.entries, this.buffer.trim());
  }

  async refresh(): Promise<void> {
    try {
      this.prediction = await this.api.predict(this.acceptedTokens,
                                               this.restrict);
      this.error = null;
    } catch (err) {
      this.prediction = null;
      this.error = err instanceof ApiError ? err.message : String(err);
    }
  }

  async chooseEntry(entry: EditorStep | MenuEntry): Promise<void> {
    this.steps.push({ label: entry.label, tokens: [...entry.tokens] });
    this.buffer = "";
    await this.refresh();
  }

  /** Move the longest accepted prefix of the typed words into the sentence;
   * whatever is not accepted stays in the buffer as an error. */
  async acceptBuffer(): Promise<{ accepted: number; rejected: string | null }> {
    const words = this.buffer.trim().split(/\s+/).filter((w) => w.length);
    let accepted = 0;
    for (const word of words) {
      if (!this.prediction) {
        break;
      }
      const step = stepForTypedWord(this.prediction, word);
      if (step === null) {
        break;
      }
      this.steps.push(step);
      await this.refresh();
      accepted += 1;
    }
    const rest = words.slice(accepted);
    this.buffer = rest.join(" ");
    const rejected = rest.length ? rest[0] : null;
    if (rejected !== null) {
      this.error = `"${rejected}" cannot continue the sentence here`;
    }
    return { accepted, rejected };
  }

  async tab(): Promise<TabResult> {
    if (!this.prediction) {
      return { kind: "none" };
    }
    const result = tabComplete(this.prediction, this.buffer.trim());
    if (result.kind === "token") {
      this.buffer = "";
      await this.chooseEntry({ label: result.token, tokens: [result.token] });
    } else if (result.kind === "prefix") {
      this.buffer = result.prefix;
    }
    return result;
  }

  async deleteLastStep(): Promise<void> {
    if (!this.steps.length) {
      return;
    }
    this.steps.pop();
    await this.refresh();
  }

  async addWordInline(category: string, surface: string): Promise<WordJson> {
    const word = await this.api.addWord(category, surface);
    await this.refresh();
    return word;
  }

  async commit(): Promise<SentenceJson> {
    if (!this.canFinish) {
      throw new Error("the sentence is not complete yet");
    }
    return this.api.createSentence([...this.acceptedTokens, "."],
                                   this.restrict);
  }
}
