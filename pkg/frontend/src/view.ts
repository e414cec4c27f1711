/** Pure renderers: server state in, HTML strings out.
 *
 * Nothing here computes a belief value; every figure shown is copied from
 * a server response field, with decimal hints produced at render time only.
 */

import { withApprox } from "./rational.js";
import type { ResultDocument, SessionView } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** A set rendered as a chip group, e.g. {u1, u2}. */
export function chips(labels: string[]): string {
  if (labels.length === 0) {
    return `<span class="chips empty-set">&empty;</span>`;
  }
  const items = labels.map((l) => `<span class="chip">${escapeHtml(l)}</span>`).join("");
  return `<span class="chips">${items}</span>`;
}

function familyChips(family: string[][]): string {
  return family.map(chips).join(" ");
}

export function renderKnown(view: SessionView): string {
  const rows = view.known
    .map(
      (k) => `<tr><td>${chips(k.set)}</td>` +
        `<td class="num">${escapeHtml(k.belief)}</td>` +
        `<td class="num dim">${k.decimal}</td></tr>`,
    )
    .join("");
  return `<section class="known"><h2>Known beliefs</h2>` +
    `<table><thead><tr><th>set</th><th>belief</th><th>&approx;</th></tr></thead>` +
    `<tbody>${rows}</tbody></table></section>`;
}

export function renderFailedConditions(view: SessionView): string {
  if (view.failed_conditions.length === 0) {
    return `<section class="conditions"><h2>Existence conditions</h2>` +
      `<p class="ok">All conditions hold.</p></section>`;
  }
  const rows = view.failed_conditions
    .map(
      (c) => `<tr class="failed-condition">` +
        `<td>${chips(c.set)}</td>` +
        `<td class="num">${escapeHtml(withApprox(c.rhs.value))}</td>` +
        `<td class="num bad">${escapeHtml(withApprox(c.residual.value))}</td>` +
        `<td>${familyChips(c.lower_family)}</td></tr>`,
    )
    .join("");
  return `<section class="conditions"><h2>Failing conditions</h2>` +
    `<table><thead><tr><th>set</th><th>required &ge;</th><th>residual</th>` +
    `<th>known sets below</th></tr></thead><tbody>${rows}</tbody></table></section>`;
}

export function renderQuestion(view: SessionView): string {
  const q = view.pending_question;
  if (q === null) {
    return "";
  }
  return `<section class="question">` +
    `<h2>Question</h2>` +
    `<p>What is your belief in ${chips(q.set)}?</p>` +
    `<p class="context">Asked because the condition for ${chips(q.failing_set)} fails ` +
    `by ${escapeHtml(withApprox(q.residual.value))}; the known sets below it are ` +
    `${familyChips(q.lower_family)}.</p>` +
    `<p class="context">Admissible range: [${escapeHtml(q.admissible.min)}, ` +
    `${escapeHtml(q.admissible.max)}].</p>` +
    `<form id="answer-form">` +
    `<input id="answer-input" name="belief" placeholder="decimal or p/q" autocomplete="off">` +
    `<button type="submit">Answer</button>` +
    `<button type="button" id="unavailable-button">I cannot say</button>` +
    `</form>` +
    `<p id="answer-error" class="error" hidden></p>` +
    `</section>`;
}

export function renderTerminalBanner(view: SessionView): string {
  if (view.state === "completed") {
    return `<section class="banner done"><h2>Belief completed</h2>` +
      `<p>Every existence condition holds; the completed mass is below.</p></section>`;
  }
  if (view.state === "impossible") {
    const failing = view.failed_conditions[0];
    const where = failing ? ` The condition for ${chips(failing.set)} cannot be met: ` +
      `it falls short by ${escapeHtml(withApprox(failing.residual.value))} and every ` +
      `intersection of the sets below it is already known.` : "";
    return `<section class="banner impossible"><h2>Provably impossible</h2>` +
      `<p>No belief function is compatible with these values.${where}</p></section>`;
  }
  if (view.state === "exhausted") {
    return `<section class="banner impossible"><h2>No completion found</h2>` +
      `<p>Every candidate set has been considered and the conditions still fail.</p></section>`;
  }
  return "";
}

export function renderHistory(view: SessionView): string {
  if (view.history.length === 0) {
    return "";
  }
  const items = view.history
    .map((e) => {
      const set = e.set ? chips(e.set) : "";
      const belief = e.belief ? ` = ${escapeHtml(e.belief)}` : "";
      return `<li class="event-${escapeHtml(e.kind)}">${escapeHtml(e.kind)} ${set}${belief}</li>`;
    })
    .join("");
  return `<section class="history"><h2>Timeline</h2><ol>${items}</ol></section>`;
}

export function renderResult(doc: ResultDocument): string {
  const bars = doc.mass
    .map((entry) => {
      const width = Math.max(1, Math.round(entry.decimal * 100));
      return `<li><span class="bar" style="width:${width}%"></span>` +
        `${chips(entry.set)} <span class="num">${escapeHtml(entry.value)}</span> ` +
        `<span class="num dim">${entry.decimal}</span></li>`;
    })
    .join("");
  const stage = doc.stage === null ? "" : ` (stage ${doc.stage})`;
  const symmetry = doc.symmetry && doc.symmetry.vertex_count !== null && doc.symmetry.vertex_count > 1
    ? `<p class="context">Averaged over ${doc.symmetry.vertex_count} optimal vertices.</p>`
    : "";
  return `<section class="result"><h2>Completed mass &middot; ${escapeHtml(doc.method)}${stage}</h2>` +
    `<ul class="mass-bars">${bars}</ul>` +
    `<p>Specificity: <span class="num">${escapeHtml(doc.specificity.value)}</span> ` +
    `<span class="num dim">${doc.specificity.decimal}</span></p>` +
    symmetry +
    `<button id="export-button">Export result document</button></section>`;
}

/** The whole session panel; the result section is appended only when the
 * raw document has been fetched. */
export function renderSession(view: SessionView, result: ResultDocument | null): string {
  const parts = [
    `<p class="session-meta">session <code>${escapeHtml(view.id)}</code> &middot; ` +
    `frame ${chips(view.frame)} &middot; state <strong>${escapeHtml(view.state)}</strong></p>`,
    renderTerminalBanner(view),
    view.state === "awaiting-answer" ? renderFailedConditions(view) : "",
    renderQuestion(view),
    result ? renderResult(result) : "",
    renderKnown(view),
    renderHistory(view),
  ];
  return parts.filter((p) => p !== "").join("\n");
}
