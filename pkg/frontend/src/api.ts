import type { AnswerRejection, SessionView } from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function readJson(response: Response): Promise<any> {
  const text = await response.text();
  return text.trim() ? JSON.parse(text) : null;
}

/** Thin client for the session endpoints. One instance per server. */
export class SessionApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async expect(response: Response, status: number): Promise<any> {
    const body = await readJson(response);
    if (response.status !== status) {
      throw new ApiError(response.status, body?.error ?? `unexpected status ${response.status}`);
    }
    return body;
  }

  async createSession(specText: string): Promise<SessionView> {
    const response = await fetch(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: specText,
    });
    return this.expect(response, 201);
  }

  async getSession(id: string): Promise<SessionView> {
    return this.expect(await fetch(this.url(`/sessions/${id}`)), 200);
  }

  /** Post an answer; a 422 comes back as a value, not an exception, so the
   * caller can surface the admissible range inline. */
  async answer(id: string, set: string[], belief: string): Promise<SessionView | AnswerRejection> {
    const response = await fetch(this.url(`/sessions/${id}/answer`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ set, belief }),
    });
    if (response.status === 422) {
      const body = await readJson(response);
      return {
        status: 422,
        error: body.error,
        admissible: body.admissible ?? null,
        view: body.session,
      };
    }
    return this.expect(response, 200);
  }

  async markUnavailable(id: string, set: string[]): Promise<SessionView> {
    const response = await fetch(this.url(`/sessions/${id}/answer`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ set, unavailable: true }),
    });
    return this.expect(response, 200);
  }

  /** Raw bytes of the completed result document: exporting these verbatim
   * is what keeps the download byte-identical to the CLI's output. */
  async fetchResultRaw(id: string): Promise<string> {
    const response = await fetch(this.url(`/sessions/${id}/result`));
    const text = await response.text();
    if (response.status !== 200) {
      let message = `unexpected status ${response.status}`;
      try {
        message = JSON.parse(text)?.error ?? message;
      } catch {
        // keep the fallback message
      }
      throw new ApiError(response.status, message);
    }
    return text;
  }

  async discard(id: string): Promise<void> {
    const response = await fetch(this.url(`/sessions/${id}`), { method: "DELETE" });
    if (response.status !== 204) {
      throw new ApiError(response.status, "failed to discard the session");
    }
  }
}

export function isRejection(value: SessionView | AnswerRejection): value is AnswerRejection {
  return (value as AnswerRejection).status === 422;
}
