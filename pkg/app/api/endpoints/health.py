"""
Liveness endpoint for RecurrentGF.

/health answers as soon as the exact-arithmetic backend can expand a known
series; it does no other work.
"""

import sympy
from fastapi import APIRouter, HTTPException

from app.core.algebra import LaurentPoly, RationalFn, coeff_at

router = APIRouter()

# 1/(z - 1) = Σ z^-(x+1): every coefficient is 1
_PROBE = RationalFn(LaurentPoly.one(1), LaurentPoly.from_terms(1, {(1,): 1, (0,): -1}))


@router.get("/health")
def health_check():
    """
    Returns:
        dict: ``healthy`` plus the SymPy version backing the algebra

    Raises:
        HTTPException: 503 if the probe expansion is wrong
    """
    if coeff_at(_PROBE, (3,)) != 1:
        raise HTTPException(status_code=503, detail="algebra probe failed")
    return {"status": "healthy", "sympy": sympy.__version__}
