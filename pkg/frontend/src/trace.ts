// Scrolling history of (t, cursor z, total force) for the plot strip.

export interface TracePoint {
  t: number;
  z: number;
  force: number;
}

export class Trace {
  private points: TracePoint[] = [];

  constructor(private windowS: number = 6.0) {}

  push(t: number, z: number, force: number): void {
    this.points.push({ t, z, force });
    const cutoff = t - this.windowS;
    let drop = 0;
    while (drop < this.points.length && this.points[drop]!.t < cutoff) drop++;
    if (drop > 0) this.points.splice(0, drop);
  }

  snapshot(): readonly TracePoint[] {
    return this.points;
  }

  get window(): number {
    return this.windowS;
  }
}
