/** Wire types for the tournament service. Field names match the JSON
 * payloads exactly (camelCase); the console never derives values the
 * service already reports. */

export interface TierConfigBody {
  baseSize: number;
  promoteCount: number;
  maxGroupSize?: number | null;
}

export interface ConfigBody {
  tiers: TierConfigBody[];
  seed?: number;
  tieBreakMode?: "auto" | "interactive";
}

export interface PlayerBody {
  id: string;
  name: string;
  elo: number;
}

export interface CreateRequest {
  configRef: ConfigBody;
  roster: PlayerBody[];
}

export interface CreateResponse {
  tournamentId: string;
}

export interface Board {
  tier: number;
  groupId: string;
  round: number;
  ref: string;
  whiteId: string;
  blackId: string;
  result: string | null;
}

export interface Bye {
  groupId: string;
  round: number;
  playerId: string;
}

export interface PairingsResponse {
  tournamentId: string;
  tier: number;
  boards: Board[];
  byes: Bye[];
}

/** "score" = separated from the row above by tier score alone;
 * "i".."iv" = the tie-break rule that decided the adjacency;
 * "-" = provisional, not yet resolved. */
export type RuleToken = "score" | "i" | "ii" | "iii" | "iv" | "-";

export interface StandingRow {
  rank: number;
  playerId: string;
  tsNum: number;
  tsDen: number;
  wins: number;
  losses: number;
  draws: number;
  tiebreakRule: RuleToken;
}

export interface GroupStanding {
  groupId: string;
  rows: StandingRow[];
}

export interface StandingsResponse {
  tournamentId: string;
  tier: number;
  groups: GroupStanding[];
  finalStanding: StandingRow[] | null;
  winner: string | null;
}

export interface ResultRequest {
  gameRef: string;
  result: "1-0" | "0-1" | "1/2-1/2";
  moves: number;
}

export interface ForfeitRequest {
  playerId: string;
  reason?: string;
}

export interface CompleteTierResponse {
  tournamentId: string;
  tier: number;
  promoted: string[];
  standings: GroupStanding[];
  nextTier: number | null;
  winner: string | null;
}

export interface PendingTieBreak {
  tournamentId: string;
  code: "PendingRandomTieBreak";
  tiedPlayers: string[];
  message: string;
}

export interface GroupSnapshot {
  groupId: string;
  tier: number;
  members: string[];
  roundsTotal: number;
}

export interface TournamentSnapshot {
  tournamentId: string;
  phase: string;
  currentTier: number;
  tierCount: number;
  config: ConfigBody;
  roster: PlayerBody[];
  groups: GroupSnapshot[];
  pendingGames: string[];
  forfeited: string[];
  tieBreakMode: string;
  winner: string | null;
}

export interface EventsResponse {
  tournamentId: string;
  since: number;
  total: number;
  events: unknown[];
}

export interface TournamentList {
  tournaments: string[];
}

export interface ApiErrorBody {
  httpStatus: number;
  code: string;
  message: string;
  details: Record<string, unknown>;
}
