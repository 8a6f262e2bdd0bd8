"""
Green's function endpoint for RecurrentGF.

This module provides the /green endpoint returning the closed-form generating
function of the discrete Green's function with source τ0.
"""

from fastapi import APIRouter

from app.api import run_operation
from app.api.schemas import GfFile, GreenRequest
from app.core.config import variable_names
from app.models.genfun import green_gf

router = APIRouter()


@router.post("/green", response_model=GfFile, response_model_exclude_none=True)
def green(request: GreenRequest):
    """P_τ0(z)·z^-(τ0+I) / P(z) for the posted equation."""

    def build():
        p = request.problem.to_problem()
        names = variable_names(p.dim, request.short_names)
        return GfFile.from_ratfn(green_gf(p.equation, request.tau), names)

    return run_operation("green", build)
