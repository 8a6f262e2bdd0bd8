"""
Property tests for RecurrentGF.

Ring laws of the algebra layer, linearity of expansions at infinity, the
geometry of faces and superposition of solutions, checked with hypothesis.
"""

from fractions import Fraction
from math import prod

import hypothesis.strategies as st
from hypothesis import given, settings

from app.core.algebra import LaurentPoly, RationalFn, expand_at_infinity, ratfn_eq
from app.core.lattice import add, box, hadamard, ones, scale, sub
from app.models.genfun import assemble_gf
from app.models.problem import (
    CauchyData,
    DifferenceEquation,
    boundary_poly,
    char_poly,
    decompose_point,
    faces,
    in_X0,
)
from app.models.random_problem import random_problem
from app.models.solver import green_decomposition, solve_box

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
exponents2 = st.tuples(st.integers(-2, 2), st.integers(-2, 2))
laurent2 = st.dictionaries(exponents2, rationals, max_size=4).map(lambda t: LaurentPoly.from_terms(2, t))
corners = st.integers(1, 4).flatmap(lambda n: st.tuples(*[st.integers(0, 3)] * n))
exponents2_nonneg = st.tuples(st.integers(0, 2), st.integers(0, 2))
poly2 = st.dictionaries(exponents2_nonneg, rationals, max_size=4).map(lambda t: LaurentPoly.from_terms(2, t))
WINDOW_TOP = (4, 4)


def expandable(seed):
    """A denominator with a dominant corner term, from a random equation."""
    return char_poly(random_problem(seed, dim=2)[0].equation)


@settings(deadline=None)
@given(laurent2, laurent2, laurent2)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly.zero(2)


@settings(deadline=None)
@given(laurent2, laurent2)
def test_exact_quotient_inverts_product(a, b):
    if not b.is_zero():
        assert (a * b).exquo(b) == a


@settings(deadline=None)
@given(laurent2, laurent2)
def test_ratfn_division_round_trip(a, b):
    if not a.is_zero() and not b.is_zero():
        f = RationalFn(a, b)
        assert f * RationalFn(b) == RationalFn(a)
        assert (f - f).is_zero()


@settings(max_examples=200, deadline=None)
@given(corners)
def test_faces_partition_the_box(m):
    """Faces are disjoint, cover Π_m and have Π(m_j + 1) points in total."""
    points = [p for f in faces(m) for p in f.points]
    assert len(points) == len(set(points)) == prod(mj + 1 for mj in m)
    assert set(points) == set(box((0,) * len(m), m))
    for f in faces(m):
        for p in f.points:
            assert decompose_point(p, m)[0] == f.J


@settings(max_examples=200, deadline=None)
@given(corners, st.data())
def test_boundary_poly_constant_along_face_rays(m, data):
    """P_{τ+J∘y} = P_τ for every τ ∈ Γ_J and y ≥ 0."""
    coeffs = {a: 1 + sum(a) for a in box((0,) * len(m), m)}
    eq = DifferenceEquation(m, coeffs)
    face = data.draw(st.sampled_from(faces(m)))
    if not face.points:
        return
    tau = data.draw(st.sampled_from(face.points))
    y = tuple(data.draw(st.integers(0, 3)) for _ in m)
    assert boundary_poly(eq, add(tau, hadamard(y, face.J))) == boundary_poly(eq, tau)


@settings(deadline=None)
@given(corners, st.lists(st.integers(0, 6), min_size=4, max_size=4))
def test_decompose_point_round_trip(m, coords):
    x = tuple(coords[: len(m)])
    J, tau, y = decompose_point(x, m)
    assert add(tau, hadamard(y, J)) == x
    assert y == hadamard(y, J)
    assert any(tau in f.points for f in faces(m) if f.J == J)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), rationals)
def test_linearity(seed, a):
    """solve(a·φ) = a·solve(φ) and F(a·φ) = a·F(φ)."""
    problem, _ = random_problem(seed, dim=2)
    eq, data = problem.equation, problem.data
    N = tuple(mj + 2 for mj in eq.m)
    assert solve_box(eq, data.scaled(a), N).equals(solve_box(eq, data, N).scaled(a))
    assert assemble_gf(eq, data.scaled(a)) == assemble_gf(eq, data) * a


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_superposition(seed):
    """Finite data solves as the weighted sum of Green's functions."""
    problem, _ = random_problem(seed)
    eq = problem.equation
    N = tuple(mj + 2 for mj in eq.m)
    assert green_decomposition(eq, problem.data, N).equals(solve_box(eq, problem.data, N))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_expansion_matches_solver(seed):
    problem, _ = random_problem(seed, dim=2)
    eq, data = problem.equation, problem.data
    table = solve_box(eq, data, (5, 5))
    expansion = expand_at_infinity(assemble_gf(eq, data), 5)
    assert all(expansion.value(x) == v for x, v in table.items())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), laurent2, laurent2, rationals, st.integers(0, 3))
def test_expansion_is_linear(seed, a, b, lam, order):
    """The expansion of λ·F + G is λ times that of F plus that of G."""
    P = expandable(seed)
    F, G = RationalFn(a, P), RationalFn(b, P)
    combined = expand_at_infinity(F * lam + G, order, upper=WINDOW_TOP)
    tf = expand_at_infinity(F, order, upper=WINDOW_TOP)
    tg = expand_at_infinity(G, order, upper=WINDOW_TOP)
    for e in combined.window():
        assert combined.coeff(e) == lam * tf.coeff(e) + tg.coeff(e)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), laurent2, poly2, st.integers(0, 3))
def test_expansion_of_product_is_convolution(seed, a, p, order):
    """Multiplying by a polynomial of degree ≤ (2, 2) convolves the coefficients."""
    F = RationalFn(a, expandable(seed))
    product = expand_at_infinity(F * RationalFn(p), order, upper=WINDOW_TOP)
    factor = expand_at_infinity(F, order + 2, upper=WINDOW_TOP)
    for e in product.window():
        want = sum((c * factor.coeff(sub(e, alpha)) for alpha, c in p.terms().items()), Fraction(0))
        assert product.coeff(e) == want


@settings(deadline=None)
@given(laurent2, laurent2, laurent2)
def test_ratfn_eq_ignores_common_factors(a, b, c):
    if not b.is_zero() and not c.is_zero():
        assert ratfn_eq(RationalFn(a, b), RationalFn(a * c, b * c))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_assembly_superposition(seed, data):
    """F(φ1 + φ2) = F(φ1) + F(φ2) for finite data."""
    eq = random_problem(seed, dim=2)[0].equation
    support = [x for x in box((0, 0), add(eq.m, scale(2, ones(2)))) if in_X0(x, eq.m)]
    entries = st.dictionaries(st.sampled_from(support), rationals, max_size=4)
    d1, d2 = CauchyData(data.draw(entries)), CauchyData(data.draw(entries))
    assert ratfn_eq(assemble_gf(eq, d1 + d2), assemble_gf(eq, d1) + assemble_gf(eq, d2))
