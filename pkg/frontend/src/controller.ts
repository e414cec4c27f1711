/** Wires the DOM to the session API.
 *
 * One session per tab; nothing is rendered optimistically, every transition
 * waits for the server's confirmed view.  The session id lives in the URL
 * hash so a reload reconstructs the identical state from the server.
 */

import { SessionApi, isRejection } from "./api.js";
import { isRationalInput } from "./rational.js";
import { renderSession } from "./view.js";
import type { ResultDocument, SessionView } from "./types.js";

export class SessionController {
  private api: SessionApi;
  private view: SessionView | null = null;
  private resultDoc: ResultDocument | null = null;
  private resultRaw: string | null = null;

  constructor(
    private root: HTMLElement,
    baseUrl: string,
    private onHashChange: (id: string | null) => void = () => {},
  ) {
    this.api = new SessionApi(baseUrl);
  }

  setBaseUrl(baseUrl: string): void {
    this.api = new SessionApi(baseUrl);
  }

  async create(specText: string): Promise<void> {
    this.resultDoc = null;
    this.resultRaw = null;
    await this.apply(await this.api.createSession(specText));
  }

  async resume(id: string): Promise<void> {
    this.resultDoc = null;
    this.resultRaw = null;
    await this.apply(await this.api.getSession(id));
  }

  private async apply(view: SessionView): Promise<void> {
    this.view = view;
    this.onHashChange(view.id);
    if (view.state === "completed" && this.resultRaw === null) {
      this.resultRaw = await this.api.fetchResultRaw(view.id);
      this.resultDoc = JSON.parse(this.resultRaw) as ResultDocument;
    }
    this.render();
  }

  private render(): void {
    if (this.view === null) {
      return;
    }
    this.root.innerHTML = renderSession(this.view, this.resultDoc);
    this.bind();
  }

  private bind(): void {
    const surface = (error: unknown) =>
      this.showAnswerError(error instanceof Error ? error.message : String(error));
    const form = this.root.querySelector<HTMLFormElement>("#answer-form");
    if (form) {
      form.addEventListener("submit", (event) => {
        event.preventDefault();
        this.submitAnswer().catch(surface);
      });
    }
    const unavailable = this.root.querySelector<HTMLButtonElement>("#unavailable-button");
    if (unavailable) {
      unavailable.addEventListener("click", () => {
        this.submitUnavailable().catch(surface);
      });
    }
    const exportButton = this.root.querySelector<HTMLButtonElement>("#export-button");
    if (exportButton) {
      exportButton.addEventListener("click", () => this.exportResult());
    }
  }

  private showAnswerError(message: string): void {
    const box = this.root.querySelector<HTMLElement>("#answer-error");
    if (box) {
      box.textContent = message;
      box.hidden = false;
    }
  }

  private async submitAnswer(): Promise<void> {
    if (!this.view?.pending_question) {
      return;
    }
    const input = this.root.querySelector<HTMLInputElement>("#answer-input");
    const raw = input?.value.trim() ?? "";
    if (!isRationalInput(raw)) {
      this.showAnswerError("Enter a decimal such as 0.2 or a fraction such as 1/5.");
      return;
    }
    const outcome = await this.api.answer(this.view.id, this.view.pending_question.set, raw);
    if (isRejection(outcome)) {
      this.view = outcome.view;
      this.render();
      const range = outcome.admissible
        ? ` Admissible range: [${outcome.admissible.min}, ${outcome.admissible.max}].`
        : "";
      this.showAnswerError(`Rejected: the value breaks monotonicity.${range}`);
      return;
    }
    await this.apply(outcome);
  }

  private async submitUnavailable(): Promise<void> {
    if (!this.view?.pending_question) {
      return;
    }
    await this.apply(await this.api.markUnavailable(this.view.id, this.view.pending_question.set));
  }

  private exportResult(): void {
    if (this.resultRaw === null || this.view === null) {
      return;
    }
    const blob = new Blob([this.resultRaw], { type: "application/json" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = `belief-${this.view.id.slice(0, 8)}.json`;
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }

  /** Raw document bytes, exactly as the server sent them. */
  exportedBytes(): string | null {
    return this.resultRaw;
  }
}
