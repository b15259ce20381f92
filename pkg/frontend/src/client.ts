// WebSocket wrapper: parse-or-skip incoming messages, outbound control
// sends, and a stream-gap watchdog for the connection banner.

import { parseServerMessage, type ControlMsg, type ServerMsg } from "./protocol.js";

export interface ClientHooks {
  onMessage: (msg: ServerMsg) => void;
  onGap: (gapped: boolean) => void; // true after >1 s without any message
  onClose?: () => void;
}

export const GAP_MS = 1000;

export class SessionClient {
  private ws: WebSocket | null = null;
  private lastMsgAt = 0;
  private watchdog: ReturnType<typeof setInterval> | null = null;
  private gapped = false;

  constructor(private url: string, private hooks: ClientHooks) {}

  connect(): void {
    this.ws = new WebSocket(this.url);
    this.ws.onmessage = (ev) => {
      this.lastMsgAt = Date.now();
      if (this.gapped) {
        this.gapped = false;
        this.hooks.onGap(false);
      }
      const msg = parseServerMessage(String(ev.data));
      if (msg !== null) this.hooks.onMessage(msg); // malformed frames: skipped
    };
    this.ws.onopen = () => {
      this.lastMsgAt = Date.now();
      this.watchdog = setInterval(() => {
        const gap = Date.now() - this.lastMsgAt > GAP_MS;
        if (gap !== this.gapped) {
          this.gapped = gap;
          this.hooks.onGap(gap);
        }
      }, 250);
    };
    this.ws.onclose = () => {
      if (this.watchdog !== null) clearInterval(this.watchdog);
      this.watchdog = null;
      this.hooks.onGap(true);
      this.hooks.onClose?.();
    };
  }

  send(msg: ControlMsg): void {
    if (this.ws && this.ws.readyState === WebSocket.OPEN) {
      this.ws.send(JSON.stringify(msg));
    }
  }

  close(): void {
    this.ws?.close();
  }
}
