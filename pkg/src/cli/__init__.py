# cli/__init__.py

from .main import app, main
from .manifest import RunManifest

__all__ = ["RunManifest", "app", "main"]
