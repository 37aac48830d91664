/** Pure view functions: service payload in, HTML string out. No score,
 * rank, pairing, or promotion is ever computed here; the only arithmetic
 * is formatting the exact fraction the service reported as a decimal for
 * display next to it. Keeping these pure (no DOM, no fetch) is what lets
 * the test suite render arbitrary service states directly. */

import type {
  ApiErrorBody,
  Board,
  Bye,
  CompleteTierResponse,
  GroupSnapshot,
  PairingsResponse,
  PendingTieBreak,
  RuleToken,
  StandingRow,
  StandingsResponse,
  TournamentSnapshot,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

const RULE_LABELS: Record<RuleToken, string> = {
  score: "tier score",
  i: "head-to-head",
  ii: "more wins",
  iii: "fewer moves per win",
  iv: "random draw",
  "-": "unresolved",
};

/** Label for the rule separating a row from the one above. The top row of
 * a table is separated from nothing, so it gets no annotation. */
export function ruleLabel(rule: RuleToken, rank: number): string {
  if (rank === 1) return "";
  return RULE_LABELS[rule] ?? rule;
}

/** Exact fraction as reported, with its decimal alongside. A 0/0 row is a
 * player with no finished game yet. */
export function tsText(row: StandingRow): string {
  if (row.tsDen === 0) return "0/0";
  const decimal = (row.tsNum / row.tsDen).toFixed(3);
  return `${row.tsNum}/${row.tsDen} = ${decimal}`;
}

function standingsTable(rows: StandingRow[], highlight: ReadonlySet<string>): string {
  const body = rows
    .map((row) => {
      const cls = highlight.has(row.playerId) ? ' class="promoted"' : "";
      return (
        `<tr${cls} data-player="${escapeHtml(row.playerId)}">` +
        `<td>${row.rank}</td>` +
        `<td>${escapeHtml(row.playerId)}</td>` +
        `<td>${tsText(row)}</td>` +
        `<td>${row.wins}</td><td>${row.losses}</td><td>${row.draws}</td>` +
        `<td class="rule">${ruleLabel(row.tiebreakRule, row.rank)}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    '<table class="standings"><thead><tr>' +
    "<th>#</th><th>player</th><th>TS</th><th>W</th><th>L</th><th>D</th><th>decided by</th>" +
    `</tr></thead><tbody>${body}</tbody></table>`
  );
}

export function renderStandings(
  standings: StandingsResponse,
  promoted: readonly string[] = [],
): string {
  const mark = new Set(promoted);
  const parts: string[] = [];
  if (standings.winner !== null) {
    parts.push(`<p class="winner">Winner: <strong>${escapeHtml(standings.winner)}</strong></p>`);
  }
  for (const group of standings.groups) {
    parts.push(`<h3>Tier ${standings.tier} &middot; group ${escapeHtml(group.groupId)}</h3>`);
    parts.push(standingsTable(group.rows, mark));
  }
  if (standings.finalStanding !== null) {
    parts.push("<h3>Final standing</h3>");
    parts.push(standingsTable(standings.finalStanding, mark));
  }
  return parts.join("\n");
}

function boardRow(board: Board): string {
  const result = board.result === null ? "&middot;" : escapeHtml(board.result);
  return (
    `<tr data-ref="${escapeHtml(board.ref)}">` +
    `<td>${escapeHtml(board.ref)}</td>` +
    `<td class="white">${escapeHtml(board.whiteId)}</td>` +
    `<td class="black">${escapeHtml(board.blackId)}</td>` +
    `<td class="result">${result}</td>` +
    `</tr>`
  );
}

/** Full schedule for the current tier, every round at once, grouped by
 * round in the order the service listed the boards. */
export function renderPairings(pairings: PairingsResponse): string {
  const rounds = new Map<number, Board[]>();
  for (const board of pairings.boards) {
    const bucket = rounds.get(board.round);
    if (bucket === undefined) rounds.set(board.round, [board]);
    else bucket.push(board);
  }
  const byesByRound = new Map<number, Bye[]>();
  for (const bye of pairings.byes) {
    const bucket = byesByRound.get(bye.round);
    if (bucket === undefined) byesByRound.set(bye.round, [bye]);
    else bucket.push(bye);
  }
  const parts: string[] = [`<h2>Tier ${pairings.tier} pairings</h2>`];
  for (const [round, boards] of rounds) {
    parts.push(`<h3>Round ${round}</h3>`);
    parts.push(
      '<table class="pairings"><thead><tr>' +
        "<th>board</th><th>White</th><th>Black</th><th>result</th>" +
        `</tr></thead><tbody>${boards.map(boardRow).join("")}</tbody></table>`,
    );
    const byes = byesByRound.get(round) ?? [];
    for (const bye of byes) {
      parts.push(
        `<p class="bye">bye: ${escapeHtml(bye.playerId)} (group ${escapeHtml(bye.groupId)})</p>`,
      );
    }
  }
  return parts.join("\n");
}

export function renderGroups(groups: GroupSnapshot[]): string {
  return groups
    .map(
      (g) =>
        `<li data-group="${escapeHtml(g.groupId)}">group ${escapeHtml(g.groupId)}: ` +
        `${g.members.map(escapeHtml).join(", ")} (${g.roundsTotal} rounds)</li>`,
    )
    .join("");
}

export function renderSnapshotSummary(snap: TournamentSnapshot): string {
  const winner =
    snap.winner === null ? "" : ` &middot; winner <strong>${escapeHtml(snap.winner)}</strong>`;
  const forfeits =
    snap.forfeited.length === 0 ? "" : ` &middot; forfeited: ${snap.forfeited.map(escapeHtml).join(", ")}`;
  return (
    `<p class="summary">${escapeHtml(snap.tournamentId)} &middot; ${escapeHtml(snap.phase)}` +
    ` &middot; tier ${snap.currentTier} of ${snap.tierCount}` +
    ` &middot; ${snap.pendingGames.length} games pending${forfeits}${winner}</p>`
  );
}

/** Outcome view for a completed tier: who went up, the table that decided
 * it, and where play continues. */
export function renderPromotions(outcome: CompleteTierResponse): string {
  const mark = new Set(outcome.promoted);
  const parts: string[] = [`<h2>Tier ${outcome.tier} complete</h2>`];
  if (outcome.promoted.length > 0) {
    parts.push(
      `<p class="promoted-list">Promoted: ` +
        outcome.promoted.map((p) => `<strong>${escapeHtml(p)}</strong>`).join(", ") +
        `</p>`,
    );
  }
  for (const group of outcome.standings) {
    parts.push(`<h3>Group ${escapeHtml(group.groupId)}</h3>`);
    parts.push(standingsTable(group.rows, mark));
  }
  if (outcome.winner !== null) {
    parts.push(`<p class="winner">Champion: <strong>${escapeHtml(outcome.winner)}</strong></p>`);
  } else if (outcome.nextTier !== null) {
    parts.push(`<p class="next-tier">Play continues in tier ${outcome.nextTier}.</p>`);
  }
  return parts.join("\n");
}

/** The coin-toss prompt. Rendering only states what the service reported;
 * the confirm button is wired by the caller. */
export function renderTieBreakPrompt(pending: PendingTieBreak): string {
  return (
    `<h2>Random tie-break required</h2>` +
    `<p class="tie-message">${escapeHtml(pending.message)}</p>` +
    `<p>Tied players: ${pending.tiedPlayers
      .map((p) => `<strong>${escapeHtml(p)}</strong>`)
      .join(", ")}</p>` +
    `<button id="confirm-tiebreak" type="button">Confirm coin toss</button>`
  );
}

/** Service errors are shown verbatim: status, code, message, and any
 * details it attached (e.g. the missing game refs on IncompleteResults). */
export function renderApiError(err: ApiErrorBody): string {
  const detailKeys = Object.keys(err.details);
  const details =
    detailKeys.length === 0
      ? ""
      : `<pre class="error-details">${escapeHtml(JSON.stringify(err.details, null, 2))}</pre>`;
  return (
    `<div class="api-error" role="alert">` +
    `<strong>${err.httpStatus} ${escapeHtml(err.code)}</strong>: ${escapeHtml(err.message)}` +
    details +
    `</div>`
  );
}

export function renderRetryBanner(visible: boolean): string {
  if (!visible) return "";
  return (
    '<div class="retry-banner" role="alert">Service unreachable, retrying' +
    " &mdash; your input is preserved.</div>"
  );
}
