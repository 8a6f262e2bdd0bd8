"""
Statistics tracking for RecurrentGF.

This module tracks per-operation request counts, failures and timings for the
HTTP surface.
"""

import time
from threading import Lock
from typing import Any, Dict


class ServerStats:
    """Thread-safe server statistics tracker."""

    def __init__(self):
        """Initialize statistics tracker."""
        self._lock = Lock()
        self._stats = {
            "total_requests": 0,
            "successful_operations": 0,
            "failed_operations": 0,
            "verifications_failed": 0,
            "operations": {},
            "start_time": time.time(),
            "last_operation": None,
        }

    def increment_request(self, operation: str):
        """Count a request for ``operation``."""
        with self._lock:
            self._stats["total_requests"] += 1
            ops = self._stats["operations"]
            ops[operation] = ops.get(operation, 0) + 1

    def increment_success(self, operation: str, elapsed: float):
        """Record a completed operation and its duration."""
        with self._lock:
            self._stats["successful_operations"] += 1
            self._stats["last_operation"] = {
                "operation": operation,
                "elapsed": round(elapsed, 4),
                "finished": time.time(),
            }

    def increment_failure(self):
        """Increment failed operation counter."""
        with self._lock:
            self._stats["failed_operations"] += 1

    def increment_verification_failure(self):
        """Count a verify run whose report did not pass."""
        with self._lock:
            self._stats["verifications_failed"] += 1

    def get_stats(self) -> Dict[str, Any]:
        """Get current statistics snapshot."""
        with self._lock:
            stats = self._stats.copy()
            stats["operations"] = dict(stats["operations"])
            stats["uptime"] = time.time() - stats["start_time"]
            return stats


# Global statistics instance
server_stats = ServerStats()
