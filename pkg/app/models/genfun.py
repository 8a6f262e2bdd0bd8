"""
Generating functions of Cauchy problems.

This module builds the face series Φ_{τ,J} of the initial data, assembles the
generating function F of the solution from

    P(z)·F(z) = Σ_J Σ_{τ∈Γ_J} Φ_{τ,J}(z)·P_τ(z),

gives the closed form of discrete Green's functions, evaluates the four
truncated identities for P·F directly from the data, and cross-checks all of
it against the dynamic-programming oracle.
"""

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.algebra import (
    CoeffTable,
    LaurentPoly,
    RationalFn,
    expand_at_infinity,
    ratfn_eq,
    sum_all,
)
from app.core.errors import InputError, Tau0NotInX0, UnsupportedFaceData
from app.core.lattice import (
    MultiIndex,
    add,
    as_index,
    box,
    geq,
    leq,
    neg,
    not_geq,
    not_leq,
    ones,
    scale,
    sub,
    unit,
    zero,
)
from app.models.problem import (
    CauchyData,
    DifferenceEquation,
    boundary_poly,
    char_poly,
    ensure_data,
    ensure_equation,
    eval_data,
    face_region_contains,
    faces,
    in_X0,
)
from app.models.solver import residual_points, solve_box

logger = logging.getLogger(__name__)

FORMULA_IDS = (1, 2, 3, 4)


@dataclass(frozen=True, eq=False)
class FaceSeries:
    """Φ_{τ,J}: generating function of the data along τ + J∘y, y ≥ 0."""
    tau: MultiIndex
    J: MultiIndex
    gf: RationalFn


def _axis_poly(n: int, k: int, coeffs: Sequence[Fraction]) -> LaurentPoly:
    """Σ c_i t^i with t = 1/z_k."""
    return LaurentPoly.from_terms(n, {scale(-i, unit(n, k)): c for i, c in enumerate(coeffs)})


def _on_face(tau: MultiIndex, J: MultiIndex, m: MultiIndex) -> bool:
    return all((t == mk) if j else (0 <= t < mk) for t, j, mk in zip(tau, J, m))


def _finite_series(data: CauchyData, tau: MultiIndex, J: MultiIndex, m: MultiIndex) -> RationalFn:
    n = len(m)
    candidates = {x for x in data.entries if face_region_contains(x, tau, J) is not None}
    for ray in data.rays:
        k, a = ray.direction, ray.anchor
        if J[k]:
            inside = all(
                a[j] == tau[j] if not J[j] else a[j] >= tau[j]
                for j in range(n) if j != k
            )
            if not inside:
                continue
            start = max(0, tau[k] - a[k])
            end = ray.support_end()
            if end is None:
                raise UnsupportedFaceData(
                    f"face J={J} at τ={tau} carries infinite nonzero data from the ray at {a}"
                )
            # an eventually-zero ray leaves finitely many points on the face
            for y in range(start, end):
                candidates.add(add(a, scale(y, unit(n, k))))
        else:
            point = tuple(tau[j] if j == k else a[j] for j in range(n))
            if ray.index_of(point) is not None and face_region_contains(point, tau, J) is not None:
                candidates.add(point)
    terms = {}
    for x in candidates:
        v = data.value(x)
        if v:
            terms[neg(add(x, ones(n)))] = v
    return RationalFn(LaurentPoly.from_terms(n, terms))


def _line_series(data: CauchyData, tau: MultiIndex, k: int, m: MultiIndex) -> RationalFn:
    n = len(m)
    line_rays = [r for r in data.rays if r.direction == k and r.on_line(tau)]
    if not line_rays:
        return _finite_series(data, tau, unit(n, k), m)
    ray = min(line_rays, key=lambda r: r.anchor[k])
    shift = max(0, tau[k] - ray.anchor[k])
    start = max(0, ray.anchor[k] - tau[k])

    head = [data.value(add(tau, scale(y, unit(n, k)))) for y in range(start)]
    numer, denom = ray.generating_polys()
    seq = RationalFn(_axis_poly(n, k, numer), _axis_poly(n, k, denom))
    # drop the first `shift` values, then delay by `start`
    tail = (seq - _axis_poly(n, k, ray.values(shift))) * LaurentPoly.monomial(
        scale(shift - start, unit(n, k))
    )
    line = tail + _axis_poly(n, k, head)
    return line * LaurentPoly.monomial(neg(add(tau, ones(n))))


def face_series(data: CauchyData, tau: Sequence[int], J: Sequence[int], m: Sequence[int]) -> FaceSeries:
    """
    Build Φ_{τ,J} as an exact rational function.

    A face with no active axis contributes the single term φ(τ)/z^(τ+I). A
    face with one active axis k sums the data along τ + y·e_k; when a ray
    along k covers that line its generating function comes from the ray's
    recurrence (rational by Moivre's theorem) and is shifted to start at τ.
    Faces with two or more active axes must carry finitely many nonzero
    values.

    Raises:
        InputError: If τ is not a point of Γ_J
        UnsupportedFaceData: If a face with ≥ 2 active axes has infinite
            nonzero data
    """
    tau, J, m = as_index(tau), as_index(J), as_index(m)
    if not _on_face(tau, J, m):
        raise InputError(f"τ = {tau} is not a point of the face J = {J} of Π_{m}")
    n = len(m)
    if not in_X0(tau, m):
        # Γ_(1,...,1) = {m}; everything above m lies outside X_0
        return FaceSeries(tau, J, RationalFn.zero(n))
    active = [k for k in range(n) if J[k]]
    if not active:
        value = eval_data(data, tau, m)
        gf = RationalFn.monomial(neg(add(tau, ones(n))), value) if value else RationalFn.zero(n)
    elif len(active) == 1:
        gf = _line_series(data, tau, active[0], m)
    else:
        gf = _finite_series(data, tau, J, m)
    logger.debug("Φ_{%s,%s} = %s", tau, J, gf.format())
    return FaceSeries(tau, J, gf)


def face_decomposition(eq: DifferenceEquation, data: CauchyData) -> List[Tuple[FaceSeries, LaurentPoly]]:
    """Every (Φ_{τ,J}, P_τ) pair over all faces of Π_m."""
    pairs = []
    for face in faces(eq.m):
        for tau in face.points:
            pairs.append((face_series(data, tau, face.J, eq.m), boundary_poly(eq, tau)))
    return pairs


def data_gf(data: CauchyData, m: Sequence[int]) -> RationalFn:
    """Φ = Σ_J Σ_{τ∈Γ_J} Φ_{τ,J}, the generating function of the initial data."""
    m = as_index(m)
    series = [face_series(data, tau, face.J, m).gf for face in faces(m) for tau in face.points]
    return sum_all(series, len(m))


def assemble_gf(eq: DifferenceEquation, data: CauchyData) -> RationalFn:
    """
    The generating function F of the solution, assembled from face series.

    Known factors (face-series denominators and P itself) are divided out
    of both numerator and denominator whenever they divide both exactly.

    Raises:
        InvalidEquation, InvalidData: If the inputs fail validation
        UnsupportedFaceData: As in face_series
    """
    ensure_equation(eq)
    ensure_data(data, eq.m)
    P = char_poly(eq)
    pairs = face_decomposition(eq, data)
    total = sum_all((fs.gf * p_tau for fs, p_tau in pairs), eq.dim)
    F = total / P
    known = {fs.gf.denominator for fs, _ in pairs if not fs.gf.is_zero()}
    known.add(P)
    for factor in sorted(known, key=lambda p: (len(p), p.format()), reverse=True):
        F = F.cancel_factor(factor)
    return F


def green_gf(eq: DifferenceEquation, tau0: Sequence[int]) -> RationalFn:
    """
    Closed form of the Green's function generating function.

    F_τ0(z) = (Σ_{α≰τ0} c_α z^(α-τ0-I)) / P(z)

    Raises:
        Tau0NotInX0: If τ0 is not an initial-data point
    """
    ensure_equation(eq)
    tau0 = as_index(tau0)
    if not in_X0(tau0, eq.m):
        raise Tau0NotInX0(f"τ0 = {tau0} is not in X_0 for m = {eq.m}")
    numerator = boundary_poly(eq, tau0).shift(neg(add(tau0, ones(eq.dim))))
    return RationalFn(numerator, char_poly(eq))


def _accumulate(acc: Dict[MultiIndex, Fraction], e: MultiIndex, v: Fraction, lower: MultiIndex):
    if v and geq(e, lower):
        acc[e] = acc.get(e, Fraction(0)) + v


def theorem1_series(eq: DifferenceEquation, data: CauchyData, formula_id: int, order: int) -> CoeffTable:
    """
    Truncated expansion of P·F computed straight from the data.

    formula 1: Σ_α c_α Σ_{τ≥0, τ≱α} φ(τ) z^(α-τ-I)
    formula 2: Σ_{τ≤m, τ≰0} (Σ_{τ≤α≤m} c_α φ(α-τ)) z^(τ-I)
    formula 3: P·Φ − Σ_{τ∈X_0} (Σ_{0≤α≤τ} c_α z^α) φ(τ) z^(-τ-I)
    formula 4: Σ_{τ∈X_0} P_τ(z) φ(τ) z^(-τ-I)

    Only data points τ ≤ m + d·I can reach the window -(d+1)·I ≤ e ≤ m - I,
    so every infinite sum is cut there.

    Formula 3 expands the data generating function Φ rather than summing
    the data pointwise, so it also checks the face series.

    Raises:
        InputError: If formula_id or order is out of range
        UnsupportedFaceData: Formula 3 only, as in face_series
    """
    ensure_equation(eq)
    ensure_data(data, eq.m)
    if formula_id not in FORMULA_IDS:
        raise InputError(f"formula_id must be one of {FORMULA_IDS}, got {formula_id}")
    if order < 0:
        raise InputError(f"order must be non-negative, got {order}")
    n, m = eq.dim, eq.m
    I = ones(n)
    lower = (-(order + 1),) * n
    reach = add(m, (order,) * n)
    acc: Dict[MultiIndex, Fraction] = {}

    if formula_id == 1:
        for alpha, c in eq.coeffs.items():
            for tau in box(zero(n), add(alpha, (order,) * n)):
                if not_geq(tau, alpha):
                    _accumulate(acc, sub(sub(alpha, tau), I), c * eval_data(data, tau, m), lower)
    elif formula_id == 2:
        for tau in box((-order,) * n, m):
            if leq(tau, zero(n)):
                continue
            inner = sum(
                (c * eval_data(data, sub(alpha, tau), m) for alpha, c in eq.coeffs.items() if leq(tau, alpha)),
                Fraction(0),
            )
            _accumulate(acc, sub(tau, I), inner, lower)
    elif formula_id == 3:
        # P·Φ from the expansion of the data generating function, then the
        # terms with α ≤ τ taken back out
        product = expand_at_infinity(data_gf(data, m) * RationalFn(char_poly(eq)), order, upper=sub(m, I))
        acc.update(product.entries)
        for tau in box(zero(n), reach):
            if not in_X0(tau, m):
                continue
            phi = eval_data(data, tau, m)
            if not phi:
                continue
            for alpha, c in eq.coeffs.items():
                if leq(alpha, tau):
                    _accumulate(acc, sub(sub(alpha, tau), I), -c * phi, lower)
    else:
        for tau in box(zero(n), reach):
            if not in_X0(tau, m):
                continue
            phi = eval_data(data, tau, m)
            if not phi:
                continue
            for alpha, c in eq.coeffs.items():
                if not_leq(alpha, tau):
                    _accumulate(acc, sub(sub(alpha, tau), I), c * phi, lower)

    entries = {e: v for e, v in acc.items() if v}
    return CoeffTable(n, order, sub(m, I), entries)


@dataclass
class CheckResult:
    """Outcome of one verification check."""
    name: str
    passed: bool
    detail: str = ""
    first_failure: Optional[MultiIndex] = None
    max_abs_diff: Optional[Fraction] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
            "first_failure": list(self.first_failure) if self.first_failure is not None else None,
            "max_abs_diff": str(self.max_abs_diff) if self.max_abs_diff is not None else None,
        }


@dataclass
class VerifyReport:
    """All checks run by verify; failures are entries, not exceptions."""
    box: MultiIndex
    gf: Optional[RationalFn] = None
    checks: List[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, names: Optional[Sequence[str]] = None) -> dict:
        return {
            "box": list(self.box),
            "passed": self.passed,
            "gf": self.gf.format(names) if self.gf is not None else None,
            "checks": [c.to_dict() for c in self.checks],
            "elapsed": round(self.elapsed, 4),
        }

    def format(self, names: Optional[Sequence[str]] = None) -> str:
        lines = []
        if self.gf is not None:
            lines.append(f"F = {self.gf.format(names)}")
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"{mark} {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if c.first_failure is not None:
                line += f" (first failing index {c.first_failure})"
            lines.append(line)
        lines.append("verification " + ("passed" if self.passed else "FAILED"))
        return "\n".join(lines)


def _compare_with_table(name: str, expansion: CoeffTable, table) -> CheckResult:
    worst = Fraction(0)
    first = None
    for x, v in table.items():
        diff = abs(expansion.value(x) - v)
        if diff:
            worst = max(worst, diff)
            if first is None:
                first = x
    detail = f"max |difference| = {worst} over box {table.bound}"
    return CheckResult(name, first is None, detail, first, worst)


def _compare_tables(name: str, tables: Dict[str, CoeffTable]) -> CheckResult:
    labels = list(tables)
    ref = tables[labels[0]]
    for label in labels[1:]:
        bad = ref.mismatches(tables[label])
        if bad:
            return CheckResult(name, False, f"{labels[0]} and {label} differ", bad[0])
    return CheckResult(name, True, f"{len(labels)} tables agree ({len(ref.entries)} nonzero terms)")


def verify(
    eq: DifferenceEquation,
    data: CauchyData,
    N: Sequence[int],
    expected: Optional[RationalFn] = None,
) -> VerifyReport:
    """
    Cross-check the generating function against the dynamic-programming oracle.

    Checks, in order:
        oracle: expansion of F equals the solved table on the box
        residual: the solved table satisfies the equation exactly
        face_series: every Φ_{τ,J} expands to the data on its face rays
        four_formulas: the four truncated identities for P·F agree, and
            agree with the expansion of P·F
        assembly_identity: P·F − Σ Φ_{τ,J}·P_τ = 0
        expected_closed_form / expected_oracle: only when a closed form is
            recorded with the problem

    Returns:
        VerifyReport: Structured report; ``passed`` is the overall verdict
    """
    started = time.time()
    N = as_index(N)
    order = max(N)
    report = VerifyReport(N)

    table = solve_box(eq, data, N)
    F = assemble_gf(eq, data)
    report.gf = F
    P = char_poly(eq)

    report.checks.append(_compare_with_table("oracle", expand_at_infinity(F, order), table))

    bad = residual_points(table, eq)
    report.checks.append(CheckResult(
        "residual", not bad, f"{len(bad)} nonzero residual(s)", bad[0] if bad else None
    ))

    pairs = face_decomposition(eq, data)
    face_fail = None
    for fs, _ in pairs:
        if fs.gf.is_zero():
            continue
        prefix = expand_at_infinity(fs.gf, order)
        for x in table.points():
            want = eval_data(data, x, eq.m) if face_region_contains(x, fs.tau, fs.J) is not None else Fraction(0)
            if prefix.value(x) != want:
                face_fail = (fs, x)
                break
        if face_fail:
            break
    if face_fail:
        fs, x = face_fail
        report.checks.append(CheckResult("face_series", False, f"Φ at τ={fs.tau}, J={fs.J} disagrees with the data", x))
    else:
        report.checks.append(CheckResult("face_series", True, f"{len(pairs)} face series match the data"))

    tables = {f"formula {i}": theorem1_series(eq, data, i, order) for i in FORMULA_IDS}
    tables["expansion of P·F"] = expand_at_infinity(F * P, order, upper=sub(eq.m, ones(eq.dim)))
    report.checks.append(_compare_tables("four_formulas", tables))

    identity = F * P - sum_all((fs.gf * p_tau for fs, p_tau in pairs), eq.dim)
    report.checks.append(CheckResult(
        "assembly_identity", ratfn_eq(identity, RationalFn.zero(eq.dim)), "P·F − Σ Φ_{τ,J}·P_τ"
    ))

    if expected is not None:
        report.checks.append(CheckResult(
            "expected_closed_form", ratfn_eq(F, expected), f"recorded F = {expected.format()}"
        ))
        report.checks.append(_compare_with_table("expected_oracle", expand_at_infinity(expected, order), table))

    report.elapsed = time.time() - started
    for c in report.failures:
        logger.warning("verification check %s failed: %s", c.name, c.detail)
    logger.info("verify over box %s: %s in %.3fs", N, "passed" if report.passed else "FAILED", report.elapsed)
    return report
