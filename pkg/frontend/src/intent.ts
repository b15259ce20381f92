// Slider/drag-to-intent messages, coalesced to at most one send per
// 1/maxRate. Intermediate values collapse into a single trailing send of
// the latest value; an idle slider sends nothing.

export class IntentSender {
  private lastSent = -Infinity;
  private pending: number | null = null;
  private timer: unknown = null;

  constructor(
    private send: (z: number) => void,
    maxRateHz: number,
    private clock: () => number = () => Date.now(),
    private schedule: (fn: () => void, ms: number) => unknown = (fn, ms) =>
      setTimeout(fn, ms),
    private cancel: (handle: unknown) => void = (h) =>
      clearTimeout(h as ReturnType<typeof setTimeout>),
  ) {
    this.minIntervalMs = 1000 / maxRateHz;
  }

  private minIntervalMs: number;

  update(z: number): void {
    const now = this.clock();
    if (now - this.lastSent >= this.minIntervalMs) {
      this.lastSent = now;
      this.send(z);
      return;
    }
    this.pending = z;
    if (this.timer === null) {
      const wait = this.minIntervalMs - (now - this.lastSent);
      this.timer = this.schedule(() => this.fire(), wait);
    }
  }

  // trailing edge: emit the newest coalesced value
  private fire(): void {
    this.timer = null;
    if (this.pending === null) return;
    const z = this.pending;
    this.pending = null;
    this.lastSent = this.clock();
    this.send(z);
  }

  dispose(): void {
    if (this.timer !== null) {
      this.cancel(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}
