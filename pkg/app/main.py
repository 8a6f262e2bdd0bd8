"""
Main FastAPI application for RecurrentGF.

This module serves as the entry point for the HTTP surface, providing the
main FastAPI application instance and the endpoint index. Run it with
``uvicorn app.main:app`` or ``python -m app.main``.
"""

import logging

from fastapi import FastAPI

# Import routers
from app.api.endpoints import expand, genfunc, green, health, solve, status, verify
from app.__version__ import __author__, __description__, __title__, __version__
from app.core.config import CONFIG

# Configure logging
logging.basicConfig(level=CONFIG.get("logging", {}).get("level", "INFO"))
logger = logging.getLogger(__name__)

# Log startup information
logger.info("Starting %s v%s", __title__, __version__)

# Create FastAPI application
app = FastAPI(
    title=__title__,
    description=__description__,
    version=__version__
)

ROUTERS = [genfunc, solve, green, expand, verify, status, health]


@app.get("/")
def root():
    """
    Index of the service and its endpoints.

    Returns:
        dict: Application metadata and the available routes
    """
    return {
        "application": __title__,
        "version": __version__,
        "description": __description__,
        "author": __author__,
        "endpoints": {
            "POST /genfunc": "generating function of a problem",
            "POST /solve": "solution table on a box",
            "POST /green": "Green's function generating function",
            "POST /expand": "expansion of a generating function at infinity",
            "POST /verify": "cross-check against the solver",
            "GET /status": "server status and statistics",
            "GET /health": "liveness check",
        },
    }


for module in ROUTERS:
    app.include_router(module.router)


if __name__ == "__main__":
    import uvicorn

    server = CONFIG.get("server", {})
    uvicorn.run(app, host=server.get("host", "0.0.0.0"), port=server.get("port", 8000))
