"""Gateway configuration: one JSON file plus environment overrides for the
bind address and shared secret."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

__all__ = ["ServerConfig", "ServerConfigError"]

ENV_BIND = "TERNLIGHT_BIND"
ENV_SECRET = "TERNLIGHT_SECRET"


class ServerConfigError(ValueError):
    pass


@dataclass
class ServerConfig:
    home_config: str
    secret: str
    host: str = "127.0.0.1"
    port: int = 8787
    mode: str = "manual"
    time_scale: float = 1.0  # simulator steps per wall-clock second; 0 = frozen
    checkpoint: str | None = None
    trajectory_log: str | None = "trajectory.jsonl"
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("agent", "rule_based", "manual"):
            raise ServerConfigError(f"unknown mode {self.mode!r}")
        if self.mode == "agent" and not self.checkpoint:
            raise ServerConfigError("agent mode requires a checkpoint path")
        if self.time_scale < 0:
            raise ServerConfigError("time_scale must be >= 0")
        if not self.secret:
            raise ServerConfigError("a non-empty shared secret is required")

    @classmethod
    def from_json(cls, path) -> "ServerConfig":
        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except FileNotFoundError:
            raise ServerConfigError(f"server config not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ServerConfigError(f"server config {path} is not valid JSON: {exc}") from exc
        cfg = cls(
            home_config=doc.get("home_config", ""),
            secret=doc.get("secret", ""),
            host=doc.get("host", "127.0.0.1"),
            port=int(doc.get("port", 8787)),
            mode=doc.get("mode", "manual"),
            time_scale=float(doc.get("time_scale", 1.0)),
            checkpoint=doc.get("checkpoint"),
            trajectory_log=doc.get("trajectory_log", "trajectory.jsonl"),
            seed=int(doc.get("seed", 0)),
        )
        return cfg.with_env_overrides()

    def with_env_overrides(self) -> "ServerConfig":
        bind = os.environ.get(ENV_BIND)
        if bind:
            host, _, port = bind.partition(":")
            self.host = host or self.host
            if port:
                self.port = int(port)
        secret = os.environ.get(ENV_SECRET)
        if secret:
            self.secret = secret
        return self
