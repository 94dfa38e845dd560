"""Webhook gateway binding the intent parser, simulator, and agent into the
live control loop, with trajectory persistence and an event stream."""

from .app import create_app
from .config import ServerConfig, ServerConfigError
from .runtime import ModeLockedError, ServerRuntime

__all__ = ["create_app", "ServerConfig", "ServerConfigError", "ModeLockedError", "ServerRuntime"]
