"""
Dynamic-programming solver for RecurrentGF.

This module is the brute-force oracle the generating-function side is checked
against. It fills a dense box of exact rationals: points of X_0 come from the
Cauchy data, every other point x = b + m is computed from

    f(b + m) = -(1/c_m) · Σ_{α≠m} c_α f(b + α)

in a graded sweep, which respects the componentwise dependency order.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from app.core.config import CONFIG
from app.core.errors import BoxTooLarge, BoxTooSmall, InputError, OutsideWindow, Tau0NotInX0
from app.core.lattice import (
    MultiIndex,
    add,
    as_index,
    box,
    box_size,
    check_dims,
    geq,
    is_nonnegative,
    leq,
    sub,
    zero,
)
from app.models.problem import (
    CauchyData,
    DifferenceEquation,
    ensure_data,
    ensure_equation,
    in_X0,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SolutionTable:
    """
    Exact values of a solution on the box 0 ≤ x ≤ bound.

    Attributes:
        bound: Upper corner N of the box
        values: numpy object array of Fractions with shape N + I
    """
    bound: MultiIndex
    values: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.bound)

    def value(self, x: Sequence[int]) -> Fraction:
        x = as_index(x)
        if len(x) != self.dim or not is_nonnegative(x) or not leq(x, self.bound):
            raise OutsideWindow(f"point {x} outside the solved box 0..{self.bound}")
        return self.values[x]

    def points(self) -> Iterator[MultiIndex]:
        return box(zero(self.dim), self.bound)

    def items(self) -> Iterator[Tuple[MultiIndex, Fraction]]:
        for x in self.points():
            yield x, self.values[x]

    def equals(self, other: "SolutionTable") -> bool:
        return self.bound == other.bound and bool(np.array_equal(self.values, other.values))

    def scaled(self, a) -> "SolutionTable":
        return SolutionTable(self.bound, self.values * Fraction(a))

    def __add__(self, other: "SolutionTable") -> "SolutionTable":
        if self.bound != other.bound:
            raise InputError(f"cannot add tables over {self.bound} and {other.bound}")
        return SolutionTable(self.bound, self.values + other.values)


def _check_box(eq: DifferenceEquation, N: Sequence[int]) -> MultiIndex:
    N = as_index(N)
    check_dims(N, eq.m)
    if not geq(N, eq.m):
        raise BoxTooSmall(f"box {N} must satisfy N ≥ m = {eq.m}")
    limit = CONFIG.get("limits", {}).get("max_box_cells", 1_000_000)
    cells = box_size(zero(len(N)), N)
    if cells > limit:
        raise BoxTooLarge(f"box {N} has {cells} cells, limit is {limit}")
    return N


def solve_box(eq: DifferenceEquation, data: CauchyData, N: Sequence[int]) -> SolutionTable:
    """
    Solve the Cauchy problem on the box 0 ≤ x ≤ N.

    Args:
        eq: A valid difference equation
        data: Cauchy data on X_0
        N: Upper corner of the box, N ≥ m

    Returns:
        SolutionTable: The unique solution restricted to the box

    Raises:
        InvalidEquation, InvalidData: If the inputs fail validation
        BoxTooSmall: If N ≱ m
    """
    ensure_equation(eq)
    ensure_data(data, eq.m)
    N = _check_box(eq, N)
    m, lead = eq.m, eq.lead
    others = [(a, c) for a, c in eq.coeffs.items() if a != m]

    values = np.empty(tuple(b + 1 for b in N), dtype=object)
    for x in box(zero(len(N)), N):
        if in_X0(x, m):
            values[x] = data.value(x)
        else:
            base = sub(x, m)
            acc = sum((c * values[add(base, a)] for a, c in others), Fraction(0))
            values[x] = -acc / lead
    logger.debug("solved box %s (%d cells)", N, values.size)
    return SolutionTable(N, values)


def residual_points(table: SolutionTable, eq: DifferenceEquation) -> List[MultiIndex]:
    """Points x with x + m inside the box where the equation residual is nonzero."""
    bad = []
    reach = sub(table.bound, eq.m)
    for x in box(zero(table.dim), reach):
        total = sum((c * table.values[add(x, a)] for a, c in eq.coeffs.items()), Fraction(0))
        if total:
            bad.append(x)
    return bad


def green_box(eq: DifferenceEquation, tau0: Sequence[int], N: Sequence[int]) -> SolutionTable:
    """
    The discrete Green's function f_τ0 on the box 0 ≤ x ≤ N.

    Raises:
        Tau0NotInX0: If τ0 is not an initial-data point
    """
    tau0 = as_index(tau0)
    if not in_X0(tau0, eq.m):
        raise Tau0NotInX0(f"τ0 = {tau0} is not in X_0 for m = {eq.m}")
    return solve_box(eq, CauchyData.delta(tau0), N)


def green_decomposition(eq: DifferenceEquation, data: CauchyData, N: Sequence[int]) -> SolutionTable:
    """Σ φ(τ0)·green_box(τ0) over the finite data support inside the box."""
    if not data.is_finite():
        raise InputError("Green decomposition needs finite-support data")
    N = _check_box(eq, N)
    total = SolutionTable(N, np.full(tuple(b + 1 for b in N), Fraction(0), dtype=object))
    for tau0, v in sorted(data.entries.items()):
        if v and leq(tau0, N):
            total = total + green_box(eq, tau0, N).scaled(v)
    return total
