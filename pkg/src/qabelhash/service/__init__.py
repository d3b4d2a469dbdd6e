"""HTTP layer: FastAPI app plus its request/response schemas."""

from .app import app

__all__ = ["app"]
