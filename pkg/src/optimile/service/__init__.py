"""HTTP planning service: FastAPI app factory and response schemas."""

from .app import create_app

__all__ = ["create_app"]
