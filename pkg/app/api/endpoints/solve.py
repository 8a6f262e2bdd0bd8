"""
Box solution endpoint for RecurrentGF.

This module provides the /solve endpoint that runs the dynamic-programming
solver on the box 0 ≤ x ≤ N.
"""

from fastapi import APIRouter

from app.api import run_operation
from app.api.schemas import SolveRequest, TableFile
from app.models.problem import ensure_problem
from app.models.solver import solve_box

router = APIRouter()


@router.post("/solve", response_model=TableFile, response_model_exclude_none=True)
def solve(request: SolveRequest):
    """Dense solution table over the requested box."""

    def build():
        p = ensure_problem(request.problem.to_problem())
        return TableFile.from_solution(solve_box(p.equation, p.data, request.box))

    return run_operation("solve", build)
