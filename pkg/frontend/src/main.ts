/** Browser entry point: hash routing, form wiring, and the poll loop.
 * All tournament math lives behind the HTTP surface; this file moves
 * payloads between the service and the render functions. Views rerender
 * from cached service payloads; drafts typed into the result form are
 * captured before each rerender and restored after, so neither a failed
 * submission nor a background poll refresh loses input. */

import { Api, isServiceError, type CompleteTierOutcome } from "./api.js";
import { startPolling, type PollHandle } from "./poll.js";
import {
  renderApiError,
  renderGroups,
  renderPairings,
  renderPromotions,
  renderRetryBanner,
  renderSnapshotSummary,
  renderStandings,
  renderTieBreakPrompt,
  escapeHtml,
} from "./render.js";
import type {
  CompleteTierResponse,
  PairingsResponse,
  PendingTieBreak,
  PlayerBody,
  ResultRequest,
  StandingsResponse,
  TournamentSnapshot,
} from "./types.js";

type Route = "setup" | "pairings" | "results" | "standings" | "promotions" | "tiebreak";

const ROUTES: Route[] = ["setup", "pairings", "results", "standings", "promotions", "tiebreak"];

interface ConsoleState {
  tournamentId: string | null;
  snapshot: TournamentSnapshot | null;
  pairings: PairingsResponse | null;
  standings: StandingsResponse | null;
  lastOutcome: CompleteTierResponse | null;
  pendingTie: PendingTieBreak | null;
  netDown: boolean;
}

const api = new Api("");
const state: ConsoleState = {
  tournamentId: null,
  snapshot: null,
  pairings: null,
  standings: null,
  lastOutcome: null,
  pendingTie: null,
  netDown: false,
};
let poll: PollHandle | null = null;

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node;
}

function currentRoute(): Route {
  const hash = location.hash.replace(/^#\//, "");
  return (ROUTES as string[]).includes(hash) ? (hash as Route) : "setup";
}

function setBanner(down: boolean): void {
  state.netDown = down;
  el("banner").innerHTML = renderRetryBanner(down);
}

function showError(err: unknown): void {
  if (isServiceError(err)) {
    el("flash").innerHTML = renderApiError(err.body);
  } else {
    setBanner(true);
  }
}

function clearFlash(): void {
  el("flash").innerHTML = "";
}

// ---- drafts: survive rerenders and failed submissions ----

interface Draft {
  result: string;
  moves: string;
}

function captureDrafts(): Map<string, Draft> {
  const drafts = new Map<string, Draft>();
  for (const row of document.querySelectorAll<HTMLElement>("[data-entry-ref]")) {
    const ref = row.dataset.entryRef as string;
    const result = row.querySelector<HTMLSelectElement>("select");
    const moves = row.querySelector<HTMLInputElement>("input");
    if (result !== null && moves !== null) {
      drafts.set(ref, { result: result.value, moves: moves.value });
    }
  }
  return drafts;
}

function restoreDrafts(drafts: Map<string, Draft>): void {
  for (const [ref, draft] of drafts) {
    const row = document.querySelector<HTMLElement>(`[data-entry-ref="${ref}"]`);
    if (row === null) continue;
    const result = row.querySelector<HTMLSelectElement>("select");
    const moves = row.querySelector<HTMLInputElement>("input");
    if (result !== null) result.value = draft.result;
    if (moves !== null) moves.value = draft.moves;
  }
}

// ---- data refresh ----

async function refreshAll(): Promise<void> {
  if (state.tournamentId === null) return;
  const id = state.tournamentId;
  const [snapshot, pairings, standings] = await Promise.all([
    api.snapshot(id),
    api.pairings(id),
    api.standings(id),
  ]);
  state.snapshot = snapshot;
  state.pairings = pairings;
  state.standings = standings;
  setBanner(false);
}

async function refreshAndRender(): Promise<void> {
  try {
    await refreshAll();
    render();
  } catch (err) {
    showError(err);
  }
}

function startPoll(id: string): void {
  poll?.stop();
  poll = startPolling({
    fetchEvents: (since) => api.events(id, since),
    onAdvance: () => void refreshAndRender(),
    onError: () => setBanner(true),
    onRecover: () => void refreshAndRender(),
  });
}

// ---- setup ----

const SETUP_FORM = `
<h2>New tournament</h2>
<p>Roster CSV (id,name,elo):</p>
<textarea id="roster-csv" rows="10" cols="48">id,name,elo
</textarea>
<p>Config (JSON):</p>
<textarea id="config-json" rows="6" cols="48">{
  "tiers": [{"baseSize": 8, "promoteCount": 2}, {"baseSize": 2, "promoteCount": 0}],
  "seed": 0,
  "tieBreakMode": "interactive"
}</textarea>
<p><button id="create" type="button">Create</button></p>
<div id="setup-error"></div>
`;

function parseRosterCsv(text: string): PlayerBody[] {
  const roster: PlayerBody[] = [];
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (line === "" || line.toLowerCase() === "id,name,elo") continue;
    const cells = line.split(",");
    if (cells.length !== 3) throw new Error(`bad roster line: ${line}`);
    const [id, name, elo] = cells as [string, string, string];
    roster.push({ id: id.trim(), name: name.trim(), elo: Number(elo.trim()) });
  }
  return roster;
}

function wireSetup(): void {
  el("create").addEventListener("click", () => void submitSetup());
}

async function submitSetup(): Promise<void> {
  const rosterText = (el("roster-csv") as HTMLTextAreaElement).value;
  const configText = (el("config-json") as HTMLTextAreaElement).value;
  const target = el("setup-error");
  try {
    const roster = parseRosterCsv(rosterText);
    const config = JSON.parse(configText);
    const created = await api.createTournament(config, roster);
    state.tournamentId = created.tournamentId;
    state.lastOutcome = null;
    state.pendingTie = null;
    await refreshAll();
    startPoll(created.tournamentId);
    location.hash = "#/pairings";
  } catch (err) {
    // the form keeps whatever the director typed
    if (isServiceError(err)) {
      target.innerHTML = renderApiError(err.body);
    } else if (err instanceof SyntaxError || err instanceof Error) {
      target.innerHTML = `<div class="api-error" role="alert">${escapeHtml(err.message)}</div>`;
    }
  }
}

// ---- result entry ----

function renderResultEntry(pairings: PairingsResponse): string {
  const open = pairings.boards.filter((b) => b.result === null);
  if (open.length === 0) return "<p>No games awaiting a result.</p>";
  const rows = open
    .map(
      (b) =>
        `<tr data-entry-ref="${escapeHtml(b.ref)}">` +
        `<td>${escapeHtml(b.ref)}</td>` +
        `<td class="white">${escapeHtml(b.whiteId)}</td>` +
        `<td class="black">${escapeHtml(b.blackId)}</td>` +
        `<td><select>` +
        `<option value="1-0">1-0</option>` +
        `<option value="0-1">0-1</option>` +
        `<option value="1/2-1/2">1/2-1/2</option>` +
        `</select></td>` +
        `<td><input type="number" min="1" value="30" size="4"></td>` +
        `<td><button type="button" data-submit="${escapeHtml(b.ref)}">save</button></td>` +
        `<td class="entry-status"></td>` +
        `</tr>`,
    )
    .join("");
  return (
    "<h2>Enter results</h2>" +
    '<table class="entry"><thead><tr>' +
    "<th>board</th><th>White</th><th>Black</th><th>result</th><th>moves</th><th></th><th></th>" +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

function wireResultEntry(): void {
  for (const button of document.querySelectorAll<HTMLButtonElement>("[data-submit]")) {
    button.addEventListener("click", () => void submitResult(button.dataset.submit as string));
  }
}

async function submitResult(ref: string): Promise<void> {
  if (state.tournamentId === null) return;
  const row = document.querySelector<HTMLElement>(`[data-entry-ref="${ref}"]`);
  if (row === null) return;
  const resultSel = row.querySelector<HTMLSelectElement>("select");
  const movesInput = row.querySelector<HTMLInputElement>("input");
  const status = row.querySelector<HTMLElement>(".entry-status");
  if (resultSel === null || movesInput === null || status === null) return;
  const body: ResultRequest = {
    gameRef: ref,
    result: resultSel.value as ResultRequest["result"],
    moves: Number(movesInput.value),
  };
  // optimistic: the row shows the chosen result immediately, then the
  // server's answer either confirms it (row disappears on rerender from
  // server truth) or rolls it back with the error shown inline
  status.textContent = `${body.result} saving...`;
  clearFlash();
  try {
    const standings = await api.enterResult(state.tournamentId, body);
    state.standings = standings;
    await refreshAndRender();
  } catch (err) {
    status.textContent = "";
    showError(err);
  }
}

// ---- promotions / tie-break ----

async function runCompleteTier(): Promise<void> {
  if (state.tournamentId === null) return;
  clearFlash();
  try {
    const outcome: CompleteTierOutcome = await api.completeTier(state.tournamentId);
    if (outcome.kind === "pending") {
      state.pendingTie = outcome.body;
      location.hash = "#/tiebreak";
      return;
    }
    state.lastOutcome = outcome.body;
    state.pendingTie = null;
    await refreshAndRender();
  } catch (err) {
    showError(err);
  }
}

async function runConfirmTieBreak(): Promise<void> {
  if (state.tournamentId === null) return;
  clearFlash();
  try {
    const outcome = await api.confirmTieBreak(state.tournamentId);
    if (outcome.kind === "pending") {
      state.pendingTie = outcome.body;
      render();
      return;
    }
    state.lastOutcome = outcome.body;
    state.pendingTie = null;
    await refreshAll();
    location.hash = "#/promotions";
  } catch (err) {
    showError(err);
  }
}

function renderPromotionsRoute(): string {
  const parts: string[] = [];
  if (state.lastOutcome !== null) {
    parts.push(renderPromotions(state.lastOutcome));
    if (state.lastOutcome.winner === null && state.snapshot !== null) {
      parts.push(`<h3>Tier ${state.snapshot.currentTier} groups</h3>`);
      parts.push(`<ul class="groups">${renderGroups(state.snapshot.groups)}</ul>`);
    }
  } else {
    parts.push("<p>No tier completed yet.</p>");
  }
  if (state.snapshot !== null && state.snapshot.phase !== "complete") {
    parts.push('<p><button id="complete-tier" type="button">Complete current tier</button></p>');
  }
  return parts.join("\n");
}

// ---- routing ----

function render(): void {
  const route = currentRoute();
  const view = el("view");
  const drafts = captureDrafts();
  for (const link of document.querySelectorAll<HTMLElement>("[data-route]")) {
    link.classList.toggle("active", link.dataset.route === route);
  }
  el("summary").innerHTML = state.snapshot === null ? "" : renderSnapshotSummary(state.snapshot);

  if (route === "setup") {
    view.innerHTML = SETUP_FORM;
    wireSetup();
    return;
  }
  if (state.tournamentId === null) {
    view.innerHTML = '<p>No tournament yet. <a href="#/setup">Create one.</a></p>';
    return;
  }
  switch (route) {
    case "pairings":
      view.innerHTML = state.pairings === null ? "<p>Loading...</p>" : renderPairings(state.pairings);
      break;
    case "results":
      view.innerHTML =
        state.pairings === null ? "<p>Loading...</p>" : renderResultEntry(state.pairings);
      wireResultEntry();
      restoreDrafts(drafts);
      break;
    case "standings":
      view.innerHTML =
        state.standings === null ? "<p>Loading...</p>" : renderStandings(state.standings);
      break;
    case "promotions":
      view.innerHTML = renderPromotionsRoute();
      document
        .getElementById("complete-tier")
        ?.addEventListener("click", () => void runCompleteTier());
      break;
    case "tiebreak":
      if (state.pendingTie === null) {
        view.innerHTML = "<p>No tie-break pending.</p>";
      } else {
        view.innerHTML = renderTieBreakPrompt(state.pendingTie);
        el("confirm-tiebreak").addEventListener("click", () => void runConfirmTieBreak());
      }
      break;
  }
}

function main(): void {
  window.addEventListener("hashchange", render);
  render();
}

main();
