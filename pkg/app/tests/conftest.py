"""Shared fixtures for the RecurrentGF test suite."""

from fractions import Fraction
from pathlib import Path

import pytest

from app.cli import load_problem
from app.core.algebra import LaurentPoly, RationalFn

PROBLEMS_DIR = Path(__file__).resolve().parents[2] / "problems"


def poly(dim, terms):
    """Shorthand: poly(2, {(1, 0): 1, (0, 0): -1}) is z1 - 1."""
    return LaurentPoly.from_terms(dim, terms)


def worked_char_poly():
    return poly(2, {(2, 1): 1, (1, 1): -1, (0, 1): -1, (1, 0): -1, (0, 0): 1})


def worked_closed_form():
    return RationalFn(poly(2, {(1, 0): 1, (0, 0): -1}), worked_char_poly())


@pytest.fixture
def problem_path():
    """Path of a bundled problem file by stem."""
    return lambda stem: PROBLEMS_DIR / f"{stem}.json"


@pytest.fixture
def worked_problem():
    return load_problem(PROBLEMS_DIR / "worked_example.json")


@pytest.fixture
def fib_problem():
    return load_problem(PROBLEMS_DIR / "fibonacci.json")


@pytest.fixture
def shift_problem():
    return load_problem(PROBLEMS_DIR / "shift.json")


FIB = [Fraction(v) for v in (0, 1, 1, 2, 3, 5, 8, 13, 21)]
