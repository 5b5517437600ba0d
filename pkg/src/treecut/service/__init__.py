"""HTTP service wrapping the treecut library.

``create_app`` builds a FastAPI application; ``schemas`` holds the pydantic
request/response bodies.  The command line client in :mod:`treecut.cli`
talks to this app, either in-process or over the network.
"""

from .app import create_app

__all__ = ["create_app"]
