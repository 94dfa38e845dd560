"""IFTTT-style webhook gateway.

Endpoints: POST /webhook/command, POST /webhook/override, POST /mode,
GET /state, GET /metrics, GET /events (server-sent events). Every endpoint
requires the shared secret, sent in the X-Auth-Token header (JSON bodies may
carry a token field instead, matching webhook services that can only post a
payload). Unauthorized responses never include home state.
"""

from __future__ import annotations

import json
import queue
from contextlib import asynccontextmanager

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse, StreamingResponse

from ..agent import load_checkpoint
from ..intent import ParseError
from ..sim import HomeConfig
from .config import ServerConfig
from .models import (
    CommandRequest,
    CommandResponse,
    MetricsResponse,
    ModeRequest,
    OverrideRequest,
    OverrideResponse,
    StateResponse,
)
from .runtime import ModeLockedError, ServerRuntime

__all__ = ["create_app"]

SSE_POLL_SECONDS = 0.5


def _error(status: int, message: str, slot: str | None = None) -> JSONResponse:
    body = {"error": message}
    if slot is not None:
        body["slot"] = slot
    return JSONResponse(status_code=status, content=body)


def create_app(server_cfg: ServerConfig) -> FastAPI:
    home_cfg = HomeConfig.from_json(server_cfg.home_config)
    net = None
    if server_cfg.checkpoint:
        net, _, _ = load_checkpoint(server_cfg.checkpoint)
    runtime = ServerRuntime(
        cfg=home_cfg,
        seed=server_cfg.seed,
        mode=server_cfg.mode,
        net=net,
        trajectory_path=server_cfg.trajectory_log,
    )

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        runtime.start_driver(server_cfg.time_scale)
        yield
        runtime.close()

    app = FastAPI(title="ternlight gateway", lifespan=lifespan)
    app.state.runtime = runtime
    app.state.config = server_cfg

    def body_token_ok(token: str | None) -> bool:
        return token == server_cfg.secret

    @app.post("/webhook/command")
    def webhook_command(body: CommandRequest, request: Request,
                        x_auth_token: str | None = Header(default=None)):
        if x_auth_token != server_cfg.secret and not body_token_ok(body.token):
            return _error(401, "unauthorized")
        try:
            result = runtime.submit_command(body.text, source=body.source)
        except ModeLockedError as exc:
            return _error(409, str(exc))
        except ParseError as exc:
            return _error(422, exc.message, slot=exc.slot)
        return CommandResponse(
            intent=result["intent"],
            actions=result["actions"],
            zones=result["zones"],
            seq=result["seq"],
        )

    @app.post("/webhook/override")
    def webhook_override(body: OverrideRequest, request: Request,
                         x_auth_token: str | None = Header(default=None)):
        if x_auth_token != server_cfg.secret and not body_token_ok(body.token):
            return _error(401, "unauthorized")
        try:
            result = runtime.submit_override(body.zone, body.brightness, body.cct)
        except ValueError as exc:
            return _error(400, str(exc))
        return OverrideResponse(**result)

    @app.post("/mode")
    def set_mode(body: ModeRequest, request: Request,
                 x_auth_token: str | None = Header(default=None)):
        if x_auth_token != server_cfg.secret and not body_token_ok(body.token):
            return _error(401, "unauthorized")
        try:
            event = runtime.set_mode(body.mode)
        except ValueError as exc:
            return _error(400, str(exc))
        return {"mode": body.mode, "seq": event["seq"]}

    @app.get("/state")
    def get_state(request: Request, x_auth_token: str | None = Header(default=None)):
        if x_auth_token != server_cfg.secret:
            return _error(401, "unauthorized")
        return StateResponse(**runtime.snapshot())

    @app.get("/metrics")
    def get_metrics(request: Request, x_auth_token: str | None = Header(default=None)):
        if x_auth_token != server_cfg.secret:
            return _error(401, "unauthorized")
        return MetricsResponse(**runtime.metrics())

    @app.get("/events")
    def get_events(request: Request, x_auth_token: str | None = Header(default=None)):
        if x_auth_token != server_cfg.secret:
            return _error(401, "unauthorized")
        q = runtime.subscribe()

        def stream():
            try:
                yield ": connected\n\n"
                while True:
                    try:
                        event = q.get(timeout=SSE_POLL_SECONDS)
                    except queue.Empty:
                        yield ": keepalive\n\n"
                        continue
                    yield f"id: {event['seq']}\ndata: {json.dumps(event, separators=(',', ':'))}\n\n"
            finally:
                runtime.unsubscribe(q)

        return StreamingResponse(stream(), media_type="text/event-stream")

    return app
