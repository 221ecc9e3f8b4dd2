"""HTTP service front end (FastAPI) over the matching core."""

from .app import app, create_app

__all__ = ["app", "create_app"]
