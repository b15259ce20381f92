// Pure frame -> draw-model mapping. No blending, no haptic math: segment
// colors are forwarded exactly as the server sent them, so identical frame
// streams produce identical layouts regardless of interaction history.

import type { Rgba, UiFrame } from "./protocol.js";

export interface ViewConfig {
  width: number;   // canvas px
  height: number;
  zMin: number;    // mm shown at the bottom edge
  zMax: number;    // mm shown at the top edge
  columnX: number; // left edge of the z column, px
  columnWidth: number;
}

export const DEFAULT_VIEW: ViewConfig = {
  width: 420,
  height: 520,
  zMin: 0,
  zMax: 40,
  columnX: 150,
  columnWidth: 120,
};

export interface BlockRect {
  x: number;
  y: number;      // top edge, px
  w: number;
  h: number;
  color: Rgba;    // byte-exact server color
  contributors: number[];
}

export interface CursorShape {
  x: number;
  y: number;      // px of cursor_z
  w: number;
  z: number;      // mm, for the readout
}

export interface SignCell {
  id: number;
  kind: string;
  symbol: string;
  lit: boolean;
}

export interface LayoutModel {
  t: number;
  totalForce: number;
  cursor: CursorShape;
  blocks: BlockRect[];
  signs: SignCell[];
}

export function zToY(z: number, view: ViewConfig): number {
  const frac = (view.zMax - z) / (view.zMax - view.zMin);
  return frac * view.height;
}

export function layoutFrame(frame: UiFrame, view: ViewConfig = DEFAULT_VIEW): LayoutModel {
  const blocks: BlockRect[] = frame.segments.map((seg) => {
    const yTop = zToY(seg.z1, view);
    const yBot = zToY(seg.z0, view);
    return {
      x: view.columnX,
      y: yTop,
      w: view.columnWidth,
      h: yBot - yTop,
      color: seg.color,
      contributors: seg.contributors,
    };
  });
  return {
    t: frame.t,
    totalForce: frame.total_force,
    cursor: {
      x: view.columnX - 10,
      y: zToY(frame.cursor_z, view),
      w: view.columnWidth + 20,
      z: frame.cursor_z,
    },
    blocks,
    signs: frame.signs.map((s) => ({
      id: s.id,
      kind: s.kind,
      symbol: s.symbol,
      lit: s.lit,
    })),
  };
}
