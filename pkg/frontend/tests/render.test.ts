/** The console displays service payloads; it never recomputes them. These
 * tests feed fixed payloads (as a mocked service would return them) into
 * the render functions and check the output is a faithful transcription. */

import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderApiError,
  renderPairings,
  renderPromotions,
  renderRetryBanner,
  renderSnapshotSummary,
  renderStandings,
  renderTieBreakPrompt,
  ruleLabel,
  tsText,
} from "../src/render";
import type {
  ApiErrorBody,
  CompleteTierResponse,
  PairingsResponse,
  PendingTieBreak,
  StandingRow,
  StandingsResponse,
  TournamentSnapshot,
} from "../src/types";

function row(overrides: Partial<StandingRow>): StandingRow {
  return {
    rank: 1,
    playerId: "p1",
    tsNum: 0,
    tsDen: 7,
    wins: 0,
    losses: 0,
    draws: 7,
    tiebreakRule: "score",
    ...overrides,
  };
}

describe("tsText", () => {
  it("shows the exact fraction and its decimal", () => {
    expect(tsText(row({ tsNum: 3, tsDen: 7 }))).toBe("3/7 = 0.429");
    expect(tsText(row({ tsNum: -2, tsDen: 7 }))).toBe("-2/7 = -0.286");
    expect(tsText(row({ tsNum: 7, tsDen: 7 }))).toBe("7/7 = 1.000");
  });

  it("leaves a no-games row as 0/0", () => {
    expect(tsText(row({ tsNum: 0, tsDen: 0 }))).toBe("0/0");
  });
});

describe("ruleLabel", () => {
  it("annotates each tie-break rule in words", () => {
    expect(ruleLabel("i", 2)).toBe("head-to-head");
    expect(ruleLabel("ii", 2)).toBe("more wins");
    expect(ruleLabel("iii", 3)).toBe("fewer moves per win");
    expect(ruleLabel("iv", 4)).toBe("random draw");
    expect(ruleLabel("score", 2)).toBe("tier score");
    expect(ruleLabel("-", 5)).toBe("unresolved");
  });

  it("never annotates the top row", () => {
    expect(ruleLabel("score", 1)).toBe("");
  });
});

describe("renderStandings", () => {
  const standings: StandingsResponse = {
    tournamentId: "t1",
    tier: 1,
    groups: [
      {
        groupId: "1A",
        rows: [
          row({ rank: 1, playerId: "ada", tsNum: 5, tsDen: 7, wins: 5, losses: 0, draws: 2 }),
          row({
            rank: 2,
            playerId: "bob",
            tsNum: 3,
            tsDen: 7,
            wins: 4,
            losses: 1,
            draws: 2,
            tiebreakRule: "score",
          }),
          row({
            rank: 3,
            playerId: "cid",
            tsNum: 3,
            tsDen: 7,
            wins: 3,
            losses: 0,
            draws: 4,
            tiebreakRule: "ii",
          }),
        ],
      },
    ],
    finalStanding: null,
    winner: null,
  };

  it("transcribes every row: rank, id, fraction with decimal, W/L/D", () => {
    const html = renderStandings(standings);
    expect(html).toContain("group 1A");
    expect(html).toContain("ada");
    expect(html).toContain("5/7 = 0.714");
    expect(html).toContain("3/7 = 0.429");
    expect(html).toContain("<td>5</td><td>0</td><td>2</td>");
  });

  it("annotates the adjacency decided by rule (ii) as more wins", () => {
    const html = renderStandings(standings);
    const cidRow = html.split('data-player="cid"')[1] ?? "";
    expect(cidRow).toContain('<td class="rule">more wins</td>');
  });

  it("marks promoted players and the winner when given", () => {
    const done: StandingsResponse = { ...standings, winner: "ada" };
    const html = renderStandings(done, ["ada", "bob"]);
    expect(html).toContain("Winner: <strong>ada</strong>");
    expect(html).toContain('class="promoted" data-player="ada"');
    expect(html).toContain('class="promoted" data-player="bob"');
    expect(html).not.toContain('class="promoted" data-player="cid"');
  });

  it("renders a final standing table when the service reports one", () => {
    const done: StandingsResponse = {
      ...standings,
      finalStanding: [row({ rank: 1, playerId: "ada" }), row({ rank: 2, playerId: "bob" })],
      winner: "ada",
    };
    expect(renderStandings(done)).toContain("Final standing");
  });
});

describe("renderPairings", () => {
  const pairings: PairingsResponse = {
    tournamentId: "t1",
    tier: 2,
    boards: [
      { tier: 2, groupId: "2A", round: 1, ref: "g1", whiteId: "ada", blackId: "bob", result: "1-0" },
      { tier: 2, groupId: "2A", round: 1, ref: "g2", whiteId: "cid", blackId: "dee", result: null },
      { tier: 2, groupId: "2A", round: 2, ref: "g3", whiteId: "bob", blackId: "cid", result: null },
    ],
    byes: [{ groupId: "2A", round: 2, playerId: "ada" }],
  };

  it("shows the whole tier, every round at once, with colors", () => {
    const html = renderPairings(pairings);
    expect(html).toContain("Tier 2 pairings");
    expect(html).toContain("Round 1");
    expect(html).toContain("Round 2");
    expect(html).toContain('<td class="white">ada</td>');
    expect(html).toContain('<td class="black">bob</td>');
  });

  it("shows reported results and leaves open boards blank", () => {
    const html = renderPairings(pairings);
    const g1 = html.split('data-ref="g1"')[1] ?? "";
    const g2 = html.split('data-ref="g2"')[1] ?? "";
    expect(g1).toContain('<td class="result">1-0</td>');
    expect(g2).toContain('<td class="result">&middot;</td>');
  });

  it("lists byes under their round", () => {
    expect(renderPairings(pairings)).toContain("bye: ada (group 2A)");
  });
});

describe("renderPromotions", () => {
  const outcome: CompleteTierResponse = {
    tournamentId: "t1",
    tier: 1,
    promoted: ["ada", "bob"],
    standings: [
      {
        groupId: "1A",
        rows: [
          row({ rank: 1, playerId: "ada", tsNum: 5, tsDen: 7 }),
          row({ rank: 2, playerId: "bob", tsNum: 3, tsDen: 7 }),
          row({ rank: 3, playerId: "cid", tsNum: 1, tsDen: 7 }),
        ],
      },
    ],
    nextTier: 2,
    winner: null,
  };

  it("highlights exactly the promoted players", () => {
    const html = renderPromotions(outcome);
    expect(html).toContain("Promoted: <strong>ada</strong>, <strong>bob</strong>");
    expect(html).toContain('class="promoted" data-player="ada"');
    expect(html).not.toContain('class="promoted" data-player="cid"');
    expect(html).toContain("Play continues in tier 2.");
  });

  it("announces the champion when the last tier closed", () => {
    const done: CompleteTierResponse = { ...outcome, promoted: [], nextTier: null, winner: "ada" };
    const html = renderPromotions(done);
    expect(html).toContain("Champion: <strong>ada</strong>");
    expect(html).not.toContain("Play continues");
  });
});

describe("renderTieBreakPrompt", () => {
  it("names the tied players and asks for confirmation", () => {
    const pending: PendingTieBreak = {
      tournamentId: "t1",
      code: "PendingRandomTieBreak",
      tiedPlayers: ["bob", "cid"],
      message: "promotion between bob, cid requires a random draw",
    };
    const html = renderTieBreakPrompt(pending);
    expect(html).toContain("<strong>bob</strong>, <strong>cid</strong>");
    expect(html).toContain("promotion between bob, cid requires a random draw");
    expect(html).toContain('id="confirm-tiebreak"');
  });
});

describe("renderApiError", () => {
  it("shows status, code and message verbatim", () => {
    const err: ApiErrorBody = {
      httpStatus: 400,
      code: "SizeMismatch",
      message: "roster has 7 players, config wants 10",
      details: {},
    };
    const html = renderApiError(err);
    expect(html).toContain("400 SizeMismatch");
    expect(html).toContain("roster has 7 players, config wants 10");
    expect(html).not.toContain("error-details");
  });

  it("lists the missing games an IncompleteResults error reports", () => {
    const err: ApiErrorBody = {
      httpStatus: 409,
      code: "IncompleteResults",
      message: "2 games unreported",
      details: { missing: ["t1-1A-r3-g1", "t1-1A-r3-g2"] },
    };
    const html = renderApiError(err);
    expect(html).toContain("409 IncompleteResults");
    expect(html).toContain("t1-1A-r3-g1");
    expect(html).toContain("t1-1A-r3-g2");
  });

  it("escapes markup in service text", () => {
    const err: ApiErrorBody = {
      httpStatus: 400,
      code: "InvalidValue",
      message: "<img src=x>",
      details: {},
    };
    expect(renderApiError(err)).toContain("&lt;img src=x&gt;");
  });
});

describe("renderSnapshotSummary", () => {
  it("states phase, tier position, pending count and forfeits", () => {
    const snap: TournamentSnapshot = {
      tournamentId: "t1",
      phase: "active",
      currentTier: 1,
      tierCount: 2,
      config: { tiers: [{ baseSize: 8, promoteCount: 2 }] },
      roster: [],
      groups: [],
      pendingGames: ["a", "b", "c"],
      forfeited: ["dee"],
      tieBreakMode: "auto",
      winner: null,
    };
    const html = renderSnapshotSummary(snap);
    expect(html).toContain("tier 1 of 2");
    expect(html).toContain("3 games pending");
    expect(html).toContain("forfeited: dee");
  });
});

describe("renderRetryBanner", () => {
  it("is present only while the service is unreachable", () => {
    expect(renderRetryBanner(true)).toContain("retrying");
    expect(renderRetryBanner(true)).toContain("input is preserved");
    expect(renderRetryBanner(false)).toBe("");
  });
});

describe("escapeHtml", () => {
  it("neutralizes angle brackets, quotes and ampersands", () => {
    expect(escapeHtml('<a href="x">&')).toBe("&lt;a href=&quot;x&quot;&gt;&amp;");
  });
});
