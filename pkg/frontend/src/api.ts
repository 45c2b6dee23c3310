import type {
  ApiErrorBody, ArticleJson, PredictionJson, SentenceJson, StatsJson, WordJson,
} from "./types.js";

export class ApiError extends Error {
  code: string;
  position?: number;
  status: number;

  constructor(status: number, body: ApiErrorBody) {
    super(body.message);
    this.status = status;
    this.code = body.code;
    this.position = body.position;
  }
}

/** Thin typed client over the wiki server. */
export class WikiApi {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      let body: ApiErrorBody;
      try {
        body = (await response.json()) as ApiErrorBody;
      } catch {
        body = { code: "HttpError", message: `HTTP ${response.status}` };
      }
      throw new ApiError(response.status, body);
    }
    if (response.status === 204) {
      return undefined as T;
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  words(): Promise<WordJson[]> {
    return this.request("/words");
  }

  addWord(category: string, surface: string): Promise<WordJson> {
    return this.post("/words", { category, surface });
  }

  article(surface: string): Promise<ArticleJson> {
    return this.request(`/articles/${encodeURIComponent(surface)}`);
  }

  predict(prefix: string[], restrict?: string[]): Promise<PredictionJson> {
    const payload: Record<string, unknown> = { prefix };
    if (restrict && restrict.length) {
      payload.restrict = restrict;
    }
    return this.post("/predict", payload);
  }

  createSentence(tokens: string[], restrict?: string[]): Promise<SentenceJson> {
    const payload: Record<string, unknown> = { tokens };
    if (restrict && restrict.length) {
      payload.restrict = restrict;
    }
    return this.post("/sentences", payload);
  }

  editSentence(id: number, tokens: string[],
               expectedVersion: number): Promise<SentenceJson> {
    return this.request(`/sentences/${id}`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ tokens, expectedVersion }),
    });
  }

  deleteSentence(id: number, expectedVersion: number): Promise<void> {
    return this.request(
      `/sentences/${id}?expectedVersion=${expectedVersion}`,
      { method: "DELETE" });
  }

  stats(): Promise<StatsJson> {
    return this.request("/stats");
  }
}
