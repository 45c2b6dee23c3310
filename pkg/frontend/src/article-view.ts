// Article rendering: linguistic header, the three pattern boxes, the
// unrestricted sentences, and informal notes. Formal text is upright,
// informal text italic; every sentence carries its blue/red marker.

import type { ArticleJson, SentenceJson } from "./types.js";

const CATEGORY_LABELS: Record<string, string> = {
  pn: "proper name",
  noun: "noun",
  tv: "transitive verb",
  of: "of-construct",
};

export const BOX_RESTRICTIONS: Record<string, string[]> = {
  hierarchy: ["ConceptInclusion", "RoleInclusion"],
  assignments: ["IndividualAssignment"],
  domainRange: ["DomainRestriction", "RangeRestriction"],
};

const BOX_TITLES: [keyof ArticleJson["boxes"], string][] = [
  ["hierarchy", "Hierarchy"],
  ["assignments", "Assignments"],
  ["domainRange", "Domain and range"],
];

function sentenceRow(doc: Document, sentence: SentenceJson): HTMLElement {
  const row = doc.createElement("div");
  row.className = "sentence-row";
  row.dataset.sentenceId = String(sentence.id);
  const marker = doc.createElement("span");
  marker.className = sentence.owl ? "triangle blue" : "triangle red";
  marker.title = sentence.owl
    ? "within the supported logic"
    : "outside the supported logic";
  const text = doc.createElement("span");
  text.className = "formal";
  text.textContent = sentence.text;
  row.appendChild(marker);
  row.appendChild(text);
  return row;
}

export function renderArticle(
  doc: Document,
  article: ArticleJson,
  onAddSentence: (restrict: string[] | undefined) => void,
): HTMLElement {
  const root = doc.createElement("article");
  const heading = doc.createElement("h2");
  heading.className = "formal";
  heading.textContent = article.word.display;
  root.appendChild(heading);

  const header = doc.createElement("p");
  header.className = "linguistic";
  const label = doc.createElement("em");
  label.className = "informal";
  label.textContent = `${CATEGORY_LABELS[article.word.category]}: `;
  const surface = doc.createElement("span");
  surface.className = "formal";
  surface.textContent = article.word.display;
  header.appendChild(label);
  header.appendChild(surface);
  root.appendChild(header);

  for (const [key, title] of BOX_TITLES) {
    const box = doc.createElement("section");
    box.className = "pattern-box";
    box.dataset.box = key;
    const h3 = doc.createElement("h3");
    h3.className = "informal";
    h3.textContent = title;
    box.appendChild(h3);
    for (const sentence of article.boxes[key]) {
      box.appendChild(sentenceRow(doc, sentence));
    }
    const add = doc.createElement("button");
    add.className = "informal add-sentence";
    add.dataset.box = key;
    add.textContent = "add...";
    add.addEventListener("click", () => onAddSentence(BOX_RESTRICTIONS[key]));
    box.appendChild(add);
    root.appendChild(box);
  }

  const free = doc.createElement("section");
  free.className = "pattern-box";
  free.dataset.box = "unrestricted";
  const h3 = doc.createElement("h3");
  h3.className = "informal";
  h3.textContent = "Sentences";
  free.appendChild(h3);
  for (const sentence of article.unrestricted) {
    free.appendChild(sentenceRow(doc, sentence));
  }
  const add = doc.createElement("button");
  add.className = "informal add-sentence";
  add.dataset.box = "unrestricted";
  add.textContent = "add...";
  add.addEventListener("click", () => onAddSentence(undefined));
  free.appendChild(add);
  root.appendChild(free);

  if (article.comments.length) {
    const notes = doc.createElement("section");
    notes.className = "notes";
    for (const comment of article.comments) {
      const em = doc.createElement("em");
      em.className = "informal";
      em.textContent = comment.text;
      notes.appendChild(em);
    }
    root.appendChild(notes);
  }
  return root;
}
