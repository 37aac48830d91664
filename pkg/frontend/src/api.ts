/** Typed client for the tournament service. Exactly the endpoints the
 * service exposes, nothing invented client-side. Non-2xx responses raise
 * ServiceError carrying the ApiError body verbatim; network failures
 * propagate as whatever fetch threw, so callers can tell the two apart. */

import type {
  ApiErrorBody,
  CompleteTierResponse,
  CreateResponse,
  ConfigBody,
  EventsResponse,
  ForfeitRequest,
  PairingsResponse,
  PendingTieBreak,
  PlayerBody,
  ResultRequest,
  StandingsResponse,
  TournamentList,
  TournamentSnapshot,
} from "./types.js";

export class ServiceError extends Error {
  readonly body: ApiErrorBody;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.name = "ServiceError";
    this.body = body;
  }
}

export function isServiceError(err: unknown): err is ServiceError {
  return err instanceof ServiceError;
}

/** Tier completion either finishes (200) or suspends on an interactive
 * random tie-break (202). Both are successful responses on the wire. */
export type CompleteTierOutcome =
  | { kind: "completed"; body: CompleteTierResponse }
  | { kind: "pending"; body: PendingTieBreak };

async function readError(res: Response): Promise<ServiceError> {
  let body: ApiErrorBody;
  try {
    body = (await res.json()) as ApiErrorBody;
  } catch {
    body = { httpStatus: res.status, code: "BadResponse", message: res.statusText, details: {} };
  }
  return new ServiceError(body);
}

export class Api {
  constructor(private readonly base: string = "") {}

  private async send<T>(method: string, path: string, payload?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (payload !== undefined) init.body = JSON.stringify(payload);
    const res = await fetch(this.base + path, init);
    if (!res.ok) throw await readError(res);
    return (await res.json()) as T;
  }

  listTournaments(): Promise<TournamentList> {
    return this.send("GET", "/tournaments");
  }

  createTournament(config: ConfigBody, roster: PlayerBody[]): Promise<CreateResponse> {
    return this.send("POST", "/tournaments", { configRef: config, roster });
  }

  snapshot(id: string): Promise<TournamentSnapshot> {
    return this.send("GET", `/tournaments/${id}`);
  }

  pairings(id: string, round?: number): Promise<PairingsResponse> {
    const suffix = round === undefined ? "" : `?round=${round}`;
    return this.send("GET", `/tournaments/${id}/pairings${suffix}`);
  }

  enterResult(id: string, body: ResultRequest): Promise<StandingsResponse> {
    return this.send("POST", `/tournaments/${id}/results`, body);
  }

  forfeit(id: string, body: ForfeitRequest): Promise<StandingsResponse> {
    return this.send("POST", `/tournaments/${id}/forfeit`, body);
  }

  standings(id: string): Promise<StandingsResponse> {
    return this.send("GET", `/tournaments/${id}/standings`);
  }

  events(id: string, since: number): Promise<EventsResponse> {
    return this.send("GET", `/tournaments/${id}/events?since=${since}`);
  }

  async completeTier(id: string): Promise<CompleteTierOutcome> {
    return this.finishTier(`/tournaments/${id}/complete-tier`, undefined);
  }

  /** accept=false is rejected by the service (400 ConfirmationRequired);
   * the console only ever posts an explicit confirmation. */
  async confirmTieBreak(id: string): Promise<CompleteTierOutcome> {
    return this.finishTier(`/tournaments/${id}/tiebreak`, { accept: true });
  }

  private async finishTier(path: string, payload: unknown): Promise<CompleteTierOutcome> {
    const init: RequestInit = { method: "POST", headers: { "content-type": "application/json" } };
    if (payload !== undefined) init.body = JSON.stringify(payload);
    const res = await fetch(this.base + path, init);
    if (res.status === 202) {
      return { kind: "pending", body: (await res.json()) as PendingTieBreak };
    }
    if (!res.ok) throw await readError(res);
    return { kind: "completed", body: (await res.json()) as CompleteTierResponse };
  }
}
