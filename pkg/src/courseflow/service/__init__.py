"""HTTP session service: one engine session per session id, calls serialized per session."""

from .app import create_app

__all__ = ["create_app"]
