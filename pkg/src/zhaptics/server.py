"""Live session endpoint: frames and events out, steering commands in.

A single tick thread owns the session; every connected WebSocket client
gets the frame/event stream as JSON messages (one object per message,
newline-terminated) and may send steering commands:

    {"set_intent": <z mm>}
    {"spawn": {"name": .., "kind": .., <param>: <value>, ...}}
    {"set": {"name": .., <param>: <value>, ...}}
    {"kill": "<name>"}
    {"load_script": "<scene-script text>"}

Malformed or rejected commands are answered with {"type": "error", ...};
the session keeps ticking regardless. Slow clients drop old frames rather
than stalling the loop.
"""

from __future__ import annotations

import asyncio
import json
import threading
import time

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from .runtime import Session

OUT_QUEUE_LIMIT = 256  # per client; oldest frames dropped beyond this


def make_app(session: Session) -> FastAPI:
    """ASGI app exposing the session at /ws."""
    app = FastAPI()

    @app.websocket("/ws")
    async def ws_endpoint(sock: WebSocket):
        await sock.accept()
        loop = asyncio.get_running_loop()
        out: asyncio.Queue = asyncio.Queue()

        def sink(msg: dict) -> None:
            def push():
                if out.qsize() < OUT_QUEUE_LIMIT:
                    out.put_nowait(msg)
            loop.call_soon_threadsafe(push)

        session.frame_sinks.append(sink)
        session.event_sinks.append(sink)
        await sock.send_text(json.dumps({
            "type": "hello",
            "rate": session.config.rate,
            "stream_rate": session.config.rate / session.frame_stride,
            "plant_mode": session.config.plant.mode,
            "z_min": session.config.plant.z_min,
            "z_max": session.config.plant.z_max,
        }) + "\n")

        async def pump_out():
            while True:
                msg = await out.get()
                await sock.send_text(json.dumps(msg) + "\n")

        sender = asyncio.create_task(pump_out())
        try:
            while True:
                raw = await sock.receive_text()
                try:
                    payload = json.loads(raw)
                except json.JSONDecodeError as exc:
                    sink({"type": "error", "code": "Malformed",
                          "message": f"not JSON: {exc}"})
                    continue
                session.submit(payload, reply=_reply_filter(sink, payload))
        except WebSocketDisconnect:
            pass
        finally:
            sender.cancel()
            if sink in session.frame_sinks:
                session.frame_sinks.remove(sink)
            if sink in session.event_sinks:
                session.event_sinks.remove(sink)

    return app


def _reply_filter(sink, payload):
    """set_intent floods at slider rate; stay quiet unless it failed."""
    def reply(result: dict) -> None:
        if isinstance(payload, dict) and "set_intent" in payload \
                and result.get("type") == "ok":
            return
        sink(result)
    return reply


def tick_loop(session: Session, realtime: bool = True,
              stop: threading.Event | None = None) -> None:
    """Drive the session; paced to wall clock when realtime."""
    deadline = time.monotonic()
    while not session._stop.is_set() and (stop is None or not stop.is_set()):
        if session.n_ticks is not None and session.ticks_done >= session.n_ticks:
            break
        session.tick()
        if realtime:
            deadline += session.dt
            lag = deadline - time.monotonic()
            if lag > 0:
                time.sleep(lag)
            else:
                deadline = time.monotonic()  # fell behind; don't burst


def serve(session: Session, *, port: int = 8765, realtime: bool = True) -> None:
    """Run the tick loop and the WebSocket endpoint until interrupted."""
    import uvicorn

    app = make_app(session)
    stop = threading.Event()
    ticker = threading.Thread(target=tick_loop,
                              args=(session, realtime, stop), daemon=True)
    ticker.start()
    try:
        uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
    finally:
        stop.set()
        ticker.join(timeout=2.0)
