"""
Status endpoint for RecurrentGF.

This module provides detailed server status information including
version, uptime, engine limits and per-operation statistics.
"""

from fastapi import APIRouter

from app.__version__ import __title__, __version__
from app.core.config import CONFIG
from app.core.stats import server_stats

router = APIRouter()


@router.get("/status")
def get_status():
    """
    Get detailed server status information.

    Returns:
        dict: Server status including version, limits and statistics
    """
    return {
        "status": "running",
        "application": __title__,
        "version": __version__,
        "limits": CONFIG.get("limits", {}),
        "stats": server_stats.get_stats(),
    }
