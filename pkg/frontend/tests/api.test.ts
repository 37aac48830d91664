/** Client behavior against a stubbed fetch: paths, methods, payload
 * shapes, and the error contract (non-2xx bodies surface verbatim as
 * ServiceError; 202 on tier completion is a pending tie-break, not an
 * error). */

import { afterEach, describe, expect, it, vi } from "vitest";

import { Api, isServiceError, ServiceError } from "../src/api";
import type { ApiErrorBody } from "../src/types";

type Call = { url: string; method: string; body: unknown };

const calls: Call[] = [];

function stubFetch(status: number, payload: unknown): void {
  calls.length = 0;
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: string, init?: RequestInit) => {
      calls.push({
        url,
        method: init?.method ?? "GET",
        body: init?.body === undefined ? undefined : JSON.parse(init.body as string),
      });
      return new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
      });
    }),
  );
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("Api", () => {
  it("creates a tournament with the config under configRef", async () => {
    stubFetch(201, { tournamentId: "t1" });
    const api = new Api("http://svc");
    const created = await api.createTournament(
      { tiers: [{ baseSize: 8, promoteCount: 2 }], seed: 3 },
      [{ id: "ada", name: "Ada", elo: 2500 }],
    );
    expect(created.tournamentId).toBe("t1");
    expect(calls[0]?.url).toBe("http://svc/tournaments");
    expect(calls[0]?.method).toBe("POST");
    expect(calls[0]?.body).toEqual({
      configRef: { tiers: [{ baseSize: 8, promoteCount: 2 }], seed: 3 },
      roster: [{ id: "ada", name: "Ada", elo: 2500 }],
    });
  });

  it("addresses reads at the documented paths", async () => {
    stubFetch(200, {});
    const api = new Api();
    await api.snapshot("t1");
    await api.pairings("t1");
    await api.pairings("t1", 3);
    await api.standings("t1");
    await api.events("t1", 17);
    expect(calls.map((c) => c.url)).toEqual([
      "/tournaments/t1",
      "/tournaments/t1/pairings",
      "/tournaments/t1/pairings?round=3",
      "/tournaments/t1/standings",
      "/tournaments/t1/events?since=17",
    ]);
    expect(calls.every((c) => c.method === "GET")).toBe(true);
  });

  it("posts results and forfeits with their wire bodies", async () => {
    stubFetch(200, { groups: [] });
    const api = new Api();
    await api.enterResult("t1", { gameRef: "g1", result: "1/2-1/2", moves: 40 });
    await api.forfeit("t1", { playerId: "dee", reason: "withdrew" });
    expect(calls[0]?.url).toBe("/tournaments/t1/results");
    expect(calls[0]?.body).toEqual({ gameRef: "g1", result: "1/2-1/2", moves: 40 });
    expect(calls[1]?.url).toBe("/tournaments/t1/forfeit");
    expect(calls[1]?.body).toEqual({ playerId: "dee", reason: "withdrew" });
  });

  it("surfaces a non-2xx body verbatim as ServiceError", async () => {
    const body: ApiErrorBody = {
      httpStatus: 409,
      code: "AlreadyReported",
      message: "game g1 already has a result",
      details: { gameRef: "g1" },
    };
    stubFetch(409, body);
    const api = new Api();
    const err = await api
      .enterResult("t1", { gameRef: "g1", result: "1-0", moves: 30 })
      .then(() => null)
      .catch((e: unknown) => e);
    expect(isServiceError(err)).toBe(true);
    expect((err as ServiceError).body).toEqual(body);
    expect((err as ServiceError).message).toBe("game g1 already has a result");
  });

  it("treats 202 on complete-tier as a pending tie-break", async () => {
    stubFetch(202, {
      tournamentId: "t1",
      code: "PendingRandomTieBreak",
      tiedPlayers: ["bob", "cid"],
      message: "random draw required",
    });
    const api = new Api();
    const outcome = await api.completeTier("t1");
    expect(outcome.kind).toBe("pending");
    if (outcome.kind === "pending") {
      expect(outcome.body.tiedPlayers).toEqual(["bob", "cid"]);
    }
  });

  it("returns the completion body on 200", async () => {
    stubFetch(200, {
      tournamentId: "t1",
      tier: 1,
      promoted: ["ada", "bob"],
      standings: [],
      nextTier: 2,
      winner: null,
    });
    const api = new Api();
    const outcome = await api.completeTier("t1");
    expect(outcome.kind).toBe("completed");
    if (outcome.kind === "completed") {
      expect(outcome.body.promoted).toEqual(["ada", "bob"]);
      expect(outcome.body.nextTier).toBe(2);
    }
    expect(calls[0]?.url).toBe("/tournaments/t1/complete-tier");
  });

  it("confirms a tie-break with an explicit accept", async () => {
    stubFetch(200, {
      tournamentId: "t1",
      tier: 1,
      promoted: ["bob"],
      standings: [],
      nextTier: 2,
      winner: null,
    });
    const api = new Api();
    await api.confirmTieBreak("t1");
    expect(calls[0]?.url).toBe("/tournaments/t1/tiebreak");
    expect(calls[0]?.body).toEqual({ accept: true });
  });

  it("propagates incomplete-tier rejections with their details", async () => {
    stubFetch(409, {
      httpStatus: 409,
      code: "IncompleteResults",
      message: "1 game unreported",
      details: { missing: ["t1-1A-r7-g4"] },
    });
    const api = new Api();
    const err = await api
      .completeTier("t1")
      .then(() => null)
      .catch((e: unknown) => e);
    expect(isServiceError(err)).toBe(true);
    expect((err as ServiceError).body.details).toEqual({ missing: ["t1-1A-r7-g4"] });
  });

  it("wraps a non-JSON failure body instead of crashing", async () => {
    calls.length = 0;
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => new Response("gateway timeout", { status: 504, statusText: "Gateway Timeout" })),
    );
    const api = new Api();
    const err = await api
      .snapshot("t1")
      .then(() => null)
      .catch((e: unknown) => e);
    expect(isServiceError(err)).toBe(true);
    expect((err as ServiceError).body.code).toBe("BadResponse");
    expect((err as ServiceError).body.httpStatus).toBe(504);
  });

  it("lets network failures through untouched", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => {
        throw new TypeError("fetch failed");
      }),
    );
    const api = new Api();
    const err = await api
      .snapshot("t1")
      .then(() => null)
      .catch((e: unknown) => e);
    expect(isServiceError(err)).toBe(false);
    expect(err).toBeInstanceOf(TypeError);
  });
});
