"""HTTP service wrapping the classification library."""

from .app import app

__all__ = ["app"]
