"""
API package for RecurrentGF.

This package contains the HTTP endpoints, the request and file schemas
shared with the command line, and the mapping from engine errors to HTTP
status codes.
"""

import logging
import time
from typing import Callable, TypeVar

from fastapi import HTTPException

from app.core.errors import EngineError, InputError
from app.core.stats import server_stats

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_operation(operation: str, fn: Callable[[], T]) -> T:
    """
    Run an engine call for an endpoint with stats tracking and error mapping.

    Raises:
        HTTPException:
            - 400: Invalid input (InputError)
            - 422: Unsupported construction
    """
    server_stats.increment_request(operation)
    started = time.time()
    try:
        result = fn()
    except EngineError as e:
        server_stats.increment_failure()
        status = 400 if isinstance(e, InputError) else 422
        logger.info("%s rejected: %s: %s", operation, e.code, e)
        raise HTTPException(
            status_code=status,
            detail={"code": e.code, "message": str(e), "diagnostics": [str(d) for d in e.diagnostics]},
        ) from e
    elapsed = time.time() - started
    server_stats.increment_success(operation, elapsed)
    logger.info("%s finished in %.3fs", operation, elapsed)
    return result
