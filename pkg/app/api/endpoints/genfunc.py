"""
Generating-function endpoint for RecurrentGF.

This module provides the /genfunc endpoint that assembles the rational
generating function of a Cauchy problem from its face series.
"""

from fastapi import APIRouter

from app.api import run_operation
from app.api.schemas import GfFile, ProblemFile
from app.core.config import variable_names
from app.models.genfun import assemble_gf
from app.models.problem import ensure_problem

router = APIRouter()


@router.post("/genfunc", response_model=GfFile, response_model_exclude_none=True)
def genfunc(problem: ProblemFile, short_names: bool = False):
    """
    Build F(z) for the posted problem.

    Args:
        problem: Problem file body
        short_names: Name the variables z, w for two-dimensional problems

    Returns:
        GfFile: Canonical numerator and denominator term lists
    """

    def build():
        p = ensure_problem(problem.to_problem())
        return GfFile.from_ratfn(assemble_gf(p.equation, p.data), variable_names(p.dim, short_names))

    return run_operation("genfunc", build)
