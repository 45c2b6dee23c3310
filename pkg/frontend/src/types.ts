// Wire types of the wiki's JSON API (see API.md in the repository root).

export interface WordJson {
  id: number;
  surface: string;
  category: "pn" | "noun" | "tv" | "of";
  display: string;
}

export interface SentenceJson {
  id: number;
  text: string;
  tokens: string[];
  pattern: string;
  axiom: string;
  owl: boolean;
  version: number;
}

export interface ArticleJson {
  word: WordJson;
  boxes: {
    hierarchy: SentenceJson[];
    assignments: SentenceJson[];
    domainRange: SentenceJson[];
  };
  unrestricted: SentenceJson[];
  comments: { position: number; text: string; italic: boolean }[];
}

export interface PredictionJson {
  categoryMenus: {
    properName: WordJson[];
    noun: WordJson[];
    transitiveVerb: WordJson[];
    ofConstruct: WordJson[];
  };
  functionMenu: string[];
  varRefMenu: string[];
  varIntroNames: string[];
  varIntroAllowed: boolean;
  canFinish: boolean;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  position?: number;
}

export interface StatsJson {
  patternCounts: Record<string, number>;
  negOrImplFraction: number;
  total: number;
}
