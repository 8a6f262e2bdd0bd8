"""
Expansion endpoint for RecurrentGF.

This module provides the /expand endpoint that expands a rational function
at infinity up to a truncation order.
"""

from fastapi import APIRouter

from app.api import run_operation
from app.api.schemas import ExpandRequest, TableFile
from app.core.algebra import expand_at_infinity

router = APIRouter()


@router.post("/expand", response_model=TableFile, response_model_exclude_none=True)
def expand(request: ExpandRequest):
    """Nonzero coefficients of the expansion inside the window of order d."""
    return run_operation(
        "expand",
        lambda: TableFile.from_expansion(expand_at_infinity(request.gf.to_ratfn(), request.order)),
    )
