"""
Seeded random Cauchy problems for RecurrentGF.

This module generates small problems for the verification corpus: random
rational coefficients with a nonzero dominant corner and random finite data
on X_0, optionally with one recurrent ray. The same seed always gives the
same problem.
"""

import random
from fractions import Fraction
from typing import Optional, Tuple

from app.core.lattice import add, box, ones, scale
from app.models.problem import CauchyData, DifferenceEquation, Problem, RaySpec, in_X0


def _rational(rng: random.Random, nonzero: bool = False, size: int = 5) -> Fraction:
    while True:
        value = Fraction(rng.randint(-size, size), rng.randint(1, 4))
        if value or not nonzero:
            return value


def _random_ray(rng: random.Random, m, n: int) -> RaySpec:
    k = rng.randrange(n)
    anchor = tuple(rng.randint(0, m[k] + 1) if j == k else rng.randrange(m[j]) for j in range(n))
    order = rng.randint(1, 2)
    rec = [_rational(rng) for _ in range(order)] + [_rational(rng, nonzero=True)]
    initial = [_rational(rng) for _ in range(order)]
    return RaySpec(anchor, k, tuple(rec), tuple(initial))


def random_problem(
    seed: Optional[int] = None,
    dim: Optional[int] = None,
    max_corner: int = 3,
    with_ray: bool = False,
) -> Tuple[Problem, int]:
    """
    Generate a random valid Cauchy problem.

    Args:
        seed: Random seed for reproducible results
        dim: Dimension n; drawn from 1..3 when omitted
        max_corner: Upper bound for each m_j
        with_ray: Add one recurrent ray along a face line (n ≥ 2 only)

    Returns:
        tuple[Problem, int]: (problem, actual seed used)
    """
    if seed is None:
        seed = random.randint(0, 2**32 - 1)
    rng = random.Random(seed)

    n = dim or rng.randint(1, 3)
    m = tuple(rng.randint(1, max_corner) for _ in range(n))
    coeffs = {m: _rational(rng, nonzero=True)}
    for alpha in box((0,) * n, m):
        if alpha != m and rng.random() < 0.5:
            coeffs[alpha] = _rational(rng, nonzero=True)
    if len(coeffs) < 2:
        coeffs[(0,) * n] = _rational(rng, nonzero=True)
    eq = DifferenceEquation(m, coeffs)

    rays = ()
    if with_ray and n >= 2:
        rays = (_random_ray(rng, m, n),)

    reach = add(m, scale(2, ones(n)))
    support = [x for x in box((0,) * n, reach) if in_X0(x, m)]
    entries = {}
    for x in rng.sample(support, min(len(support), rng.randint(1, 5))):
        if any(r.on_line(x) for r in rays):
            continue
        entries[x] = _rational(rng)
    data = CauchyData(entries, rays)

    name = f"random-{seed}"
    return Problem(eq, data, name=name), seed
