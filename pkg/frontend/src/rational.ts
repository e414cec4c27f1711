/** Display helpers for exact "p/q" strings.
 *
 * These functions only format or validate text; the state shown to the
 * user is always the server's exact value, rounded at render time only.
 */

const RATIONAL_INPUT = /^\s*\d+(\.\d+)?\s*$|^\s*\d+\s*\/\s*[1-9]\d*\s*$/;

/** Whether the text looks like an answer the server could parse:
 * a nonnegative decimal such as "0.3" or a fraction such as "1/5". */
export function isRationalInput(raw: string): boolean {
  return RATIONAL_INPUT.test(raw);
}

/** Approximate a "p/q" string for display, e.g. "1/3" -> "~0.3333".
 * Integers and exact decimals render without the tilde. */
export function approx(value: string, digits = 4): string {
  const slash = value.indexOf("/");
  if (slash < 0) {
    return value;
  }
  const p = Number(value.slice(0, slash));
  const q = Number(value.slice(slash + 1));
  if (!Number.isFinite(p) || !Number.isFinite(q) || q === 0) {
    return value;
  }
  const scaled = (p / q).toFixed(digits);
  const exact = Number(scaled) * q === p;
  return `${exact ? "" : "~"}${scaled.replace(/0+$/, "").replace(/\.$/, "")}`;
}

/** Render a server rational with its decimal hint, e.g. `1/5 (~0.2)`. */
export function withApprox(value: string): string {
  const hint = approx(value);
  return hint === value ? value : `${value} (${hint})`;
}
