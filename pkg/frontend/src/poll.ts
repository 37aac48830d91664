/** Event polling. The console discovers other writers by asking the
 * service for its event count every couple of seconds and refreshing
 * views when the count grows; the since=k cursor means a quiet poll
 * carries no event payloads. A failed poll reports the error and keeps
 * trying on the same cadence, it never tears the loop down. */

import type { EventsResponse } from "./types.js";

export const POLL_INTERVAL_MS = 2000;

export interface PollOptions {
  fetchEvents: (since: number) => Promise<EventsResponse>;
  /** Called when the event count advanced; views should refresh. */
  onAdvance: (response: EventsResponse) => void;
  /** Called on every failed poll (network down, service restarting). */
  onError: (err: unknown) => void;
  /** Called on the first successful poll after a failure. */
  onRecover?: () => void;
  intervalMs?: number;
  initialSeen?: number;
}

export interface PollHandle {
  stop(): void;
  /** Event count the poller believes the console has seen. */
  seen(): number;
  /** Advance the cursor after a mutation this console made itself, so the
   * next poll does not re-announce our own write. */
  markSeen(total: number): void;
}

export function startPolling(options: PollOptions): PollHandle {
  const interval = options.intervalMs ?? POLL_INTERVAL_MS;
  let seen = options.initialSeen ?? 0;
  let failing = false;
  let stopped = false;
  let timer: ReturnType<typeof setTimeout> | undefined;

  async function tick(): Promise<void> {
    if (stopped) return;
    try {
      const response = await options.fetchEvents(seen);
      if (failing) {
        failing = false;
        options.onRecover?.();
      }
      if (response.total > seen) {
        seen = response.total;
        if (!stopped) options.onAdvance(response);
      }
    } catch (err) {
      failing = true;
      options.onError(err);
    }
    if (!stopped) timer = setTimeout(tick, interval);
  }

  timer = setTimeout(tick, interval);

  return {
    stop() {
      stopped = true;
      if (timer !== undefined) clearTimeout(timer);
    },
    seen() {
      return seen;
    },
    markSeen(total: number) {
      if (total > seen) seen = total;
    },
  };
}
