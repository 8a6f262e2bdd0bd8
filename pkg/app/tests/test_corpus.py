"""
Random-corpus tests.

Seeded random problems are verified end to end: the assembled generating
function must match the solver on [0, 8]^n and the four truncated identities
must agree. One-dimensional problems must have a polynomial P·F.
"""

import pytest

from app.core.algebra import LaurentPoly, RationalFn, expand_at_infinity
from app.models.genfun import FORMULA_IDS, assemble_gf, theorem1_series, verify
from app.models.problem import char_poly
from app.models.random_problem import random_problem
from app.tests.conftest import FIB, poly


@pytest.mark.parametrize("seed", range(50))
def test_random_problem_verifies(seed):
    problem, used = random_problem(seed)
    assert used == seed
    eq = problem.equation
    report = verify(eq, problem.data, (8,) * eq.dim)
    assert report.passed, report.format()


@pytest.mark.parametrize("seed", range(100, 110))
def test_random_problem_with_ray_verifies(seed):
    problem, _ = random_problem(seed, dim=2, with_ray=True)
    assert problem.data.rays
    report = verify(problem.equation, problem.data, (8, 8))
    assert report.passed, report.format()


@pytest.mark.parametrize("seed", range(20))
def test_formulas_agree_at_order_ten(seed):
    problem, _ = random_problem(seed, dim=2)
    tables = [theorem1_series(problem.equation, problem.data, i, 10) for i in FORMULA_IDS]
    assert all(t.entries == tables[0].entries for t in tables[1:])


@pytest.mark.parametrize("seed", range(20))
def test_one_dimensional_product_is_polynomial(seed):
    """In one variable P·F is a polynomial."""
    problem, _ = random_problem(seed, dim=1)
    F = assemble_gf(problem.equation, problem.data)
    assert (F * char_poly(problem.equation)).as_polynomial() is not None


def test_fibonacci_expansion(fib_problem):
    F = assemble_gf(fib_problem.equation, fib_problem.data)
    assert F == RationalFn(LaurentPoly.one(1), poly(1, {(2,): 1, (1,): -1, (0,): -1}))
    table = expand_at_infinity(F, 6)
    assert [table.value((x,)) for x in range(7)] == FIB[:7]


def test_random_problem_is_reproducible():
    first, _ = random_problem(7)
    second, _ = random_problem(7)
    assert first.equation == second.equation
    assert first.data == second.data
