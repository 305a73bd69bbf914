/**
 * Hover measurement and ordered delivery of pointing events.
 *
 * Durations are measured client-side from a monotonic clock and every
 * hover is reported, even sub-noise pass-overs: the engine's salience
 * filter is the single source of truth for what counts. Failed posts
 * stay at the head of the queue and are retried, so events always reach
 * the service in the order they happened (its clock check requires
 * non-decreasing timestamps).
 */

import type { PointingEventBody } from "./api.js";

export interface Clock {
  /** seconds, monotonic */
  now(): number;
}

export const monotonicClock: Clock = {
  now: () => performance.now() / 1000,
};

export class HoverTracker {
  private targetId: string | null = null;
  private startedAt = 0;

  constructor(private clock: Clock = monotonicClock) {}

  get current(): string | null {
    return this.targetId;
  }

  enter(id: string): void {
    this.targetId = id;
    this.startedAt = this.clock.now();
  }

  /** Ends the active hover, returning the event to report (if any). */
  leave(): PointingEventBody | null {
    if (this.targetId === null) return null;
    const now = this.clock.now();
    const event: PointingEventBody = {
      identifier: this.targetId,
      hoverDuration: now - this.startedAt,
      timestamp: now,
    };
    this.targetId = null;
    return event;
  }
}

export type PostFn = (event: PointingEventBody) => Promise<unknown>;

export class OrderedQueue {
  private queue: PointingEventBody[] = [];
  private pumping = false;
  private waiters: (() => void)[] = [];
  /** delay before retrying a failed post, ms */
  retryDelayMs = 250;
  /** posts that failed and were retried, for the debug panel */
  retries = 0;

  constructor(private post: PostFn) {}

  get pending(): number {
    return this.queue.length;
  }

  enqueue(event: PointingEventBody): void {
    this.queue.push(event);
    void this.pump();
  }

  /** Resolves once every queued event has been delivered. */
  idle(): Promise<void> {
    if (this.queue.length === 0 && !this.pumping) return Promise.resolve();
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  private async pump(): Promise<void> {
    if (this.pumping) return;
    this.pumping = true;
    try {
      while (this.queue.length > 0) {
        const head = this.queue[0]!;
        try {
          await this.post(head);
          this.queue.shift();
        } catch {
          this.retries += 1;
          await new Promise((r) => setTimeout(r, this.retryDelayMs));
        }
      }
    } finally {
      this.pumping = false;
      const waiters = this.waiters;
      this.waiters = [];
      for (const w of waiters) w();
    }
  }
}
