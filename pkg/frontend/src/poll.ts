/** Repeating fetch with exponential backoff while the service is down. */

export interface PollerOptions<T> {
  intervalMs: number;
  maxBackoffMs?: number;
  fetch: () => Promise<T>;
  onData: (data: T) => void;
  /** Called with the consecutive failure count and the next delay. */
  onError?: (error: unknown, failures: number, nextDelayMs: number) => void;
  onRecover?: () => void;
}

export class Poller<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private failures = 0;
  private running = false;

  constructor(private options: PollerOptions<T>) {}

  get consecutiveFailures(): number {
    return this.failures;
  }

  start(): void {
    if (this.running) return;
    this.running = true;
    void this.tick();
  }

  stop(): void {
    this.running = false;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
  }

  /** One immediate fetch outside the schedule (e.g. after a submit). */
  async refresh(): Promise<void> {
    await this.tick(false);
  }

  private currentDelay(): number {
    const { intervalMs, maxBackoffMs = 30000 } = this.options;
    if (this.failures === 0) return intervalMs;
    return Math.min(intervalMs * 2 ** this.failures, maxBackoffMs);
  }

  private async tick(reschedule = true): Promise<void> {
    try {
      const data = await this.options.fetch();
      if (this.failures > 0) this.options.onRecover?.();
      this.failures = 0;
      this.options.onData(data);
    } catch (error) {
      this.failures += 1;
      this.options.onError?.(error, this.failures, this.currentDelay());
    }
    if (reschedule && this.running) {
      this.timer = setTimeout(() => void this.tick(), this.currentDelay());
    }
  }
}
