"""
Verification endpoint for RecurrentGF.

This module provides the /verify endpoint. The report is always returned with
status 200; its ``passed`` flag carries the verdict.
"""

from fastapi import APIRouter

from app.api import run_operation
from app.api.schemas import VerifyRequest
from app.core.config import CONFIG
from app.core.stats import server_stats
from app.models.genfun import verify
from app.models.problem import ensure_problem

router = APIRouter()


@router.post("/verify")
def verify_problem(request: VerifyRequest):
    """
    Cross-check the assembled generating function against the solver.

    Returns:
        dict: Verify report with per-check results
    """

    def build():
        p = ensure_problem(request.problem.to_problem())
        box = request.box or [CONFIG.get("verify", {}).get("default_box", 8)] * p.dim
        return verify(p.equation, p.data, box, p.expected)

    report = run_operation("verify", build)
    if not report.passed:
        server_stats.increment_verification_failure()
    return report.to_dict()
