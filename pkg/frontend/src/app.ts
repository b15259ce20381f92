// DOM wiring: connect to the session server, render the stream, steer.

import { SessionClient } from "./client.js";
import { DEFAULT_VIEW, layoutFrame, type ViewConfig } from "./layout.js";
import { IntentSender } from "./intent.js";
import { paintScene, paintTrace } from "./render.js";
import { Trace } from "./trace.js";
import type { UiFrame } from "./protocol.js";

const $ = <T extends HTMLElement>(id: string) =>
  document.getElementById(id) as T;

const sceneCanvas = $<HTMLCanvasElement>("scene");
const traceCanvas = $<HTMLCanvasElement>("trace");
const banner = $<HTMLDivElement>("banner");
const log = $<HTMLPreElement>("log");
const slider = $<HTMLInputElement>("intent");

const view: ViewConfig = { ...DEFAULT_VIEW };
const sceneCtx = sceneCanvas.getContext("2d")!;
const traceCtx = traceCanvas.getContext("2d")!;
const trace = new Trace(6.0);

let streamRate = 60;
let sender: IntentSender | null = null;

function logLine(text: string): void {
  log.textContent = `${text}\n${log.textContent ?? ""}`.split("\n")
    .slice(0, 12).join("\n");
}

const url = new URLSearchParams(location.search).get("ws") ??
  `ws://${location.hostname || "localhost"}:8765/ws`;

const client = new SessionClient(url, {
  onMessage(msg) {
    switch (msg.type) {
      case "hello": {
        streamRate = msg.stream_rate;
        view.zMin = msg.z_min;
        view.zMax = msg.z_max;
        slider.min = String(msg.z_min);
        slider.max = String(msg.z_max);
        sender?.dispose();
        sender = new IntentSender((z) => client.send({ set_intent: z }),
                                  streamRate);
        logLine(`connected: ${msg.rate} Hz ticks, ` +
                `${streamRate.toFixed(1)} Hz frames, ${msg.plant_mode} plant`);
        break;
      }
      case "frame": {
        const frame: UiFrame = msg;
        paintScene(sceneCtx, layoutFrame(frame, view), view);
        trace.push(frame.t, frame.cursor_z, frame.total_force);
        paintTrace(traceCtx, trace, traceCanvas.width, traceCanvas.height,
                   view.zMax);
        break;
      }
      case "event":
        logLine(`event t=${msg.t.toFixed(3)} ${msg.kind} ` +
                `${msg.speed.toFixed(1)} mm/s`);
        break;
      case "error":
        logLine(`error: ${msg.code ?? ""} ${msg.message ?? ""}`);
        break;
      case "ok":
        logLine(`ok: ${msg.op ?? ""}`);
        break;
    }
  },
  onGap(gapped) {
    banner.style.display = gapped ? "block" : "none";
  },
});

slider.addEventListener("input", () => {
  sender?.update(Number(slider.value));
});

$<HTMLFormElement>("spawn-form").addEventListener("submit", (ev) => {
  ev.preventDefault();
  const name = $<HTMLInputElement>("spawn-name").value.trim();
  const kind = $<HTMLSelectElement>("spawn-kind").value;
  const paramsText = $<HTMLInputElement>("spawn-params").value.trim();
  const spawn: Record<string, unknown> = { name, kind };
  for (const pair of paramsText.split(/\s+/).filter(Boolean)) {
    const [key, value] = pair.split("=");
    if (key && value !== undefined) spawn[key] = Number(value);
  }
  client.send({ spawn });
});

$<HTMLButtonElement>("kill-btn").addEventListener("click", () => {
  const name = $<HTMLInputElement>("spawn-name").value.trim();
  if (name) client.send({ kill: name });
});

$<HTMLInputElement>("script-file").addEventListener("change", async (ev) => {
  const file = (ev.target as HTMLInputElement).files?.[0];
  if (!file) return;
  client.send({ load_script: await file.text() });
});

client.connect();
