// Canvas painter for the layout model: z column, translucent blocks,
// open-frame cursor with a soft glow, sign grid row, scrolling trace.
// Purely cosmetic; everything it draws comes precomputed from layout.ts.

import type { LayoutModel, ViewConfig } from "./layout.js";
import { zToY } from "./layout.js";
import type { Trace } from "./trace.js";

function css([r, g, b, a]: [number, number, number, number]): string {
  return `rgba(${r * 255}, ${g * 255}, ${b * 255}, ${a})`;
}

export function paintScene(
  ctx: CanvasRenderingContext2D,
  model: LayoutModel,
  view: ViewConfig,
): void {
  ctx.clearRect(0, 0, view.width, view.height);

  // axis ticks every 10 mm
  ctx.strokeStyle = "#444";
  ctx.fillStyle = "#888";
  ctx.font = "10px sans-serif";
  for (let z = view.zMin; z <= view.zMax; z += 10) {
    const y = zToY(z, view);
    ctx.beginPath();
    ctx.moveTo(view.columnX - 26, y);
    ctx.lineTo(view.columnX - 18, y);
    ctx.stroke();
    ctx.fillText(`${z}`, view.columnX - 46, y + 3);
  }

  // floor line
  const floorY = zToY(0, view);
  ctx.strokeStyle = "#666";
  ctx.beginPath();
  ctx.moveTo(view.columnX - 30, floorY);
  ctx.lineTo(view.columnX + view.columnWidth + 30, floorY);
  ctx.stroke();

  for (const block of model.blocks) {
    ctx.fillStyle = css(block.color);
    ctx.fillRect(block.x, block.y, block.w, block.h);
  }

  // cursor glow then open frame
  const c = model.cursor;
  const glow = ctx.createRadialGradient(
    c.x + c.w / 2, c.y, 4, c.x + c.w / 2, c.y, c.w * 0.7);
  glow.addColorStop(0, "rgba(255,255,230,0.35)");
  glow.addColorStop(1, "rgba(255,255,230,0)");
  ctx.fillStyle = glow;
  ctx.fillRect(c.x - c.w, c.y - c.w, c.w * 3, c.w * 2);
  ctx.strokeStyle = "#ddd";
  ctx.lineWidth = 3;
  ctx.strokeRect(c.x, c.y - 4, c.w, 8);
  ctx.lineWidth = 1;

  // sign grid row under the floor
  ctx.font = "16px sans-serif";
  ctx.textAlign = "center";
  model.signs.forEach((sign, i) => {
    const x = view.columnX + view.columnWidth + 40 + i * 28;
    ctx.fillStyle = sign.lit ? "#ffe066" : "#3a3a3a";
    ctx.fillText(sign.symbol, x, floorY + 24);
  });
  ctx.textAlign = "left";

  ctx.fillStyle = "#aaa";
  ctx.font = "11px monospace";
  ctx.fillText(
    `t=${model.t.toFixed(3)}s  z=${model.cursor.z.toFixed(2)}mm  ` +
    `F=${model.totalForce.toFixed(4)}N`,
    8, 14);
}

export function paintTrace(
  ctx: CanvasRenderingContext2D,
  trace: Trace,
  width: number,
  height: number,
  zMax: number,
): void {
  ctx.clearRect(0, 0, width, height);
  const pts = trace.snapshot();
  if (pts.length < 2) return;
  const t1 = pts[pts.length - 1]!.t;
  const t0 = t1 - trace.window;
  const x = (t: number) => ((t - t0) / trace.window) * width;

  ctx.strokeStyle = "#5b8def";
  ctx.beginPath();
  pts.forEach((p, i) => {
    const y = height * (1 - p.z / zMax);
    i === 0 ? ctx.moveTo(x(p.t), y) : ctx.lineTo(x(p.t), y);
  });
  ctx.stroke();

  const fMax = Math.max(0.5, ...pts.map((p) => Math.abs(p.force)));
  ctx.strokeStyle = "#ef8d5b";
  ctx.beginPath();
  pts.forEach((p, i) => {
    const y = height / 2 - (p.force / fMax) * (height / 2 - 4);
    i === 0 ? ctx.moveTo(x(p.t), y) : ctx.lineTo(x(p.t), y);
  });
  ctx.stroke();

  ctx.fillStyle = "#888";
  ctx.font = "10px monospace";
  ctx.fillText("z (blue)  force (orange)", 6, 12);
}
