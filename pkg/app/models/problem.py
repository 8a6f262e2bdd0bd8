"""
Cauchy problems for constant-coefficient difference equations.

This module models the equation Σ c_α f(x+α) = 0 with its dominant corner m,
the initial data φ on X_0 = {τ ≥ 0 : τ ≱ m}, and the faces Γ_J of the
integer box Π_m. Every input is validated here before any computation runs.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Mapping, Optional, Sequence, Tuple

from app.core.algebra import LaurentPoly, RationalFn, Scalar
from app.core.errors import Diagnostic, InputError, InvalidData, InvalidEquation
from app.core.lattice import (
    MultiIndex,
    as_index,
    flags,
    grlex_key,
    hadamard,
    is_nonnegative,
    leq,
    not_geq,
    not_leq,
    sub,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DifferenceEquation:
    """
    The equation Σ_{0≤α≤m} c_α f(x+α) = 0 on x ≥ 0.

    Attributes:
        m: Dominant corner
        coeffs: Map α → c_α; zero coefficients are dropped on construction
    """
    m: MultiIndex
    coeffs: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "m", as_index(self.m))
        object.__setattr__(
            self,
            "coeffs",
            {as_index(a): Fraction(c) for a, c in self.coeffs.items() if Fraction(c) != 0},
        )

    @property
    def dim(self) -> int:
        return len(self.m)

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self.coeffs.get(as_index(alpha), Fraction(0))

    @property
    def lead(self) -> Fraction:
        """The dominant-corner coefficient c_m."""
        return self.coefficient(self.m)


@lru_cache(maxsize=512)
def _recurrent_prefix(rec_coeffs: Tuple[Fraction, ...], initial: Tuple[Fraction, ...], length: int):
    values = list(initial[:length])
    s = len(rec_coeffs) - 1
    lead = rec_coeffs[-1]
    while len(values) < length:
        y = len(values) - s
        acc = sum((rec_coeffs[j] * values[y + j] for j in range(s)), Fraction(0))
        values.append(-acc / lead)
    return tuple(values)


@dataclass(frozen=True)
class RaySpec:
    """
    Recurrent data along the ray {anchor + y·e_k : y ≥ 0}.

    The values a_0, a_1, ... start with ``initial`` (a_0..a_{s-1}) and
    continue by Σ_{j=0..s} d_j·a_{y+j} = 0 with d = ``rec_coeffs``.
    """
    anchor: MultiIndex
    direction: int
    rec_coeffs: Tuple[Fraction, ...]
    initial: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "anchor", as_index(self.anchor))
        object.__setattr__(self, "direction", int(self.direction))
        object.__setattr__(self, "rec_coeffs", tuple(Fraction(c) for c in self.rec_coeffs))
        object.__setattr__(self, "initial", tuple(Fraction(c) for c in self.initial))

    @property
    def order(self) -> int:
        return len(self.rec_coeffs) - 1

    def values(self, count: int) -> Tuple[Fraction, ...]:
        """The first ``count`` values a_0..a_{count-1}."""
        if count <= 0:
            return ()
        return _recurrent_prefix(self.rec_coeffs, self.initial, count)

    def value(self, i: int) -> Fraction:
        # round the prefix length up so repeated lookups share a cache entry
        return self.values(1 << i.bit_length())[i]

    def support_end(self) -> Optional[int]:
        """
        Index t with a_y = 0 for every y ≥ t, or None if the ray never ends.

        With d_0 = ... = d_{t-1} = 0 and d_t ≠ 0 the window a_t..a_{s-1}
        determines every later window invertibly, so the values vanish from
        t on exactly when that window is zero.
        """
        t = next((j for j, d in enumerate(self.rec_coeffs) if d), self.order)
        if any(self.initial[t:]):
            return None
        return t

    def index_of(self, x: Sequence[int]) -> Optional[int]:
        """Ray index y with x = anchor + y·e_k, or None if x is off the ray."""
        x = as_index(x)
        if len(x) != len(self.anchor):
            return None
        k = self.direction
        for j, (a, b) in enumerate(zip(x, self.anchor)):
            if j != k and a != b:
                return None
        y = x[k] - self.anchor[k]
        return y if y >= 0 else None

    def on_line(self, point: Sequence[int]) -> bool:
        """True when ``point`` lies on the full line through the ray."""
        k = self.direction
        return all(a == b for j, (a, b) in enumerate(zip(point, self.anchor)) if j != k)

    def generating_polys(self) -> Tuple[List[Fraction], List[Fraction]]:
        """
        Numerator and denominator coefficient lists of A(t) = Σ a_y t^y.

        The denominator is the reversed recurrence polynomial
        R(t) = d_s + d_{s-1} t + ... + d_0 t^s; the numerator is R times the
        initial prefix, truncated below degree s.
        """
        s = self.order
        reversed_rec = list(reversed(self.rec_coeffs))
        numer = []
        for i in range(s):
            numer.append(sum((reversed_rec[j] * self.initial[i - j] for j in range(i + 1)), Fraction(0)))
        return numer, reversed_rec


@dataclass(frozen=True)
class CauchyData:
    """
    Initial data φ on X_0: explicit entries plus recurrent rays.

    Points covered by neither default to zero.
    """
    entries: Mapping[MultiIndex, Fraction] = field(default_factory=dict)
    rays: Tuple[RaySpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "entries", {as_index(x): Fraction(v) for x, v in self.entries.items()}
        )
        object.__setattr__(self, "rays", tuple(self.rays))

    @classmethod
    def delta(cls, tau0: Sequence[int]) -> "CauchyData":
        """Green's data: 1 at τ0 and 0 elsewhere."""
        return cls({as_index(tau0): Fraction(1)})

    def value(self, x: Sequence[int]) -> Fraction:
        x = as_index(x)
        if x in self.entries:
            return self.entries[x]
        for ray in self.rays:
            y = ray.index_of(x)
            if y is not None:
                return ray.value(y)
        return Fraction(0)

    def is_finite(self) -> bool:
        return not self.rays

    def scaled(self, a: Scalar) -> "CauchyData":
        a = Fraction(a)
        rays = tuple(
            RaySpec(r.anchor, r.direction, r.rec_coeffs, tuple(a * v for v in r.initial))
            for r in self.rays
        )
        return CauchyData({x: a * v for x, v in self.entries.items()}, rays)

    def __add__(self, other: "CauchyData") -> "CauchyData":
        if not (self.is_finite() and other.is_finite()):
            raise InputError("superposition is only supported for finite-support data")
        entries = dict(self.entries)
        for x, v in other.entries.items():
            entries[x] = entries.get(x, Fraction(0)) + v
        return CauchyData(entries)


@dataclass(frozen=True)
class Face:
    """The face Γ_J of Π_m: x_k = m_k where j_k = 1, x_k < m_k where j_k = 0."""
    J: MultiIndex
    points: Tuple[MultiIndex, ...]

    @property
    def active(self) -> Tuple[int, ...]:
        """Axes pinned at m_k."""
        return tuple(k for k, j in enumerate(self.J) if j)


@dataclass
class Problem:
    """A validated Cauchy problem plus optional metadata from a problem file."""
    equation: DifferenceEquation
    data: CauchyData
    expected: Optional[RationalFn] = None
    name: str = ""

    @property
    def dim(self) -> int:
        return self.equation.dim


def validate_equation(eq: DifferenceEquation) -> List[Diagnostic]:
    """
    Check the equation against condition α ≤ m and the dominant corner rules.

    Returns:
        list[Diagnostic]: Empty when the equation is valid, otherwise one
        entry per violation (MissingDominantCorner, ExponentOutOfBox,
        DimensionMismatch, DegenerateEquation)
    """
    found = []
    n = eq.dim
    if n == 0:
        found.append(Diagnostic("DimensionMismatch", "dominant corner m is empty"))
        return found
    if not is_nonnegative(eq.m):
        found.append(Diagnostic("ExponentOutOfBox", f"dominant corner {eq.m} has a negative component"))
    for alpha in sorted(eq.coeffs, key=lambda a: (len(a), a)):
        if len(alpha) != n:
            found.append(Diagnostic("DimensionMismatch", f"exponent {alpha} has dimension {len(alpha)}, expected {n}"))
        elif not is_nonnegative(alpha) or not leq(alpha, eq.m):
            found.append(Diagnostic("ExponentOutOfBox", f"exponent {alpha} is not within 0 ≤ α ≤ {eq.m}"))
    if eq.m not in eq.coeffs:
        found.append(Diagnostic("MissingDominantCorner", f"no nonzero coefficient at the dominant corner {eq.m}"))
    if len(eq.coeffs) < 2:
        found.append(Diagnostic("DegenerateEquation", f"equation has {len(eq.coeffs)} term(s), need at least 2"))
    return found


def ensure_equation(eq: DifferenceEquation) -> DifferenceEquation:
    found = validate_equation(eq)
    if found:
        raise InvalidEquation(diagnostics=found)
    return eq


def char_poly(eq: DifferenceEquation) -> LaurentPoly:
    """The characteristic polynomial P(z) = Σ c_α z^α."""
    return LaurentPoly.from_terms(eq.dim, eq.coeffs)


def in_X0(tau: Sequence[int], m: Sequence[int]) -> bool:
    """τ ∈ X_0: τ ≥ 0 and τ ≱ m."""
    tau, m = as_index(tau), as_index(m)
    return len(tau) == len(m) and is_nonnegative(tau) and not_geq(tau, m)


def faces(m: Sequence[int]) -> List[Face]:
    """
    The 2^n faces Γ_J of Π_m, ordered by J lexicographically.

    Faces are pairwise disjoint and cover Π_m; a face is empty when it pins
    no axis at m_k = 0 but requires x_k < 0.
    """
    m = as_index(m)
    if not is_nonnegative(m):
        raise InputError(f"box corner {m} must be non-negative")
    out = []
    for J in flags(len(m)):
        ranges = [[mk] if jk else range(mk) for jk, mk in zip(J, m)]
        pts = [()]
        for r in ranges:
            pts = [p + (v,) for p in pts for v in r]
        out.append(Face(tuple(J), tuple(sorted(pts, key=grlex_key))))
    return out


def decompose_point(x: Sequence[int], m: Sequence[int]) -> Tuple[MultiIndex, MultiIndex, MultiIndex]:
    """
    Split x ≥ 0 as x = τ + J∘y with τ ∈ Γ_J and y supported on J.

    Returns:
        tuple: (J, τ, y)
    """
    x, m = as_index(x), as_index(m)
    if not is_nonnegative(x):
        raise InputError(f"point {x} must be non-negative")
    J = tuple(1 if xk >= mk else 0 for xk, mk in zip(x, m))
    tau = tuple(min(xk, mk) for xk, mk in zip(x, m))
    return J, tau, sub(x, tau)


def face_region_contains(x: Sequence[int], tau: MultiIndex, J: MultiIndex) -> Optional[MultiIndex]:
    """The y with x = τ + J∘y, or None if x is not on the face ray set of τ."""
    x = as_index(x)
    y = sub(x, tau)
    if not is_nonnegative(y):
        return None
    if hadamard(y, J) != y:
        return None
    return y


def boundary_poly(eq: DifferenceEquation, tau: Sequence[int]) -> LaurentPoly:
    """P_τ(z) = Σ c_α z^α over α ≰ τ; constant along every face ray."""
    tau = as_index(tau)
    return LaurentPoly.from_terms(
        eq.dim, {a: c for a, c in eq.coeffs.items() if not_leq(a, tau)}
    )


def data_lookup(data: CauchyData, x: Sequence[int], m: Sequence[int]) -> Tuple[Fraction, bool]:
    """
    Data value at x together with an X_0 membership flag.

    Outside X_0 the zero extension applies and the flag is False.
    """
    x = as_index(x)
    if not in_X0(x, m):
        return Fraction(0), False
    return data.value(x), True


def eval_data(data: CauchyData, x: Sequence[int], m: Sequence[int]) -> Fraction:
    """φ(x) on X_0, zero elsewhere."""
    return data_lookup(data, x, m)[0]


def _ray_diagnostics(ray: RaySpec, m: MultiIndex, idx: int) -> List[Diagnostic]:
    found = []
    n = len(m)
    where = f"ray {idx} at {ray.anchor}"
    if len(ray.anchor) != n:
        return [Diagnostic("DimensionMismatch", f"{where}: anchor dimension {len(ray.anchor)}, expected {n}")]
    if not 0 <= ray.direction < n:
        found.append(Diagnostic("BadRay", f"{where}: direction {ray.direction} outside 0..{n - 1}"))
    if not ray.rec_coeffs or ray.rec_coeffs[-1] == 0:
        found.append(Diagnostic("BadRay", f"{where}: recurrence needs a nonzero last coefficient"))
    elif len(ray.initial) != ray.order:
        found.append(Diagnostic("BadRay", f"{where}: {len(ray.initial)} initial values for a recurrence of order {ray.order}"))
    if not found:
        deficient = any(ray.anchor[j] < m[j] for j in range(n) if j != ray.direction)
        if not is_nonnegative(ray.anchor) or not deficient:
            found.append(Diagnostic("RayOutsideX0", f"{where}: ray along axis {ray.direction} leaves X_0"))
    return found


def _ray_pair_diagnostics(r1: RaySpec, r2: RaySpec, i1: int, i2: int) -> List[Diagnostic]:
    k, l = r1.direction, r2.direction
    a, b = r1.anchor, r2.anchor
    if k == l:
        if not r1.on_line(b):
            return []
        start = max(a[k], b[k])
        count = max(1, r1.order + r2.order)
        for t in range(start, start + count):
            v1, v2 = r1.value(t - a[k]), r2.value(t - b[k])
            if v1 != v2:
                point = tuple(t if j == k else a[j] for j in range(len(a)))
                return [Diagnostic("InconsistentCoverage", f"rays {i1} and {i2} disagree at {point}: {v1} vs {v2}")]
        return []
    # crossing rays meet in at most one point
    point = tuple(b[j] if j == k else a[j] if j == l else a[j] for j in range(len(a)))
    if any(a[j] != b[j] for j in range(len(a)) if j not in (k, l)):
        return []
    y1, y2 = r1.index_of(point), r2.index_of(point)
    if y1 is None or y2 is None:
        return []
    v1, v2 = r1.value(y1), r2.value(y2)
    if v1 != v2:
        return [Diagnostic("InconsistentCoverage", f"rays {i1} and {i2} disagree at {point}: {v1} vs {v2}")]
    return []


def validate_data(data: CauchyData, m: Sequence[int]) -> List[Diagnostic]:
    """
    Check that every entry and ray lies in X_0 and that overlaps agree.

    Overlaps are checked exhaustively: each entry against every ray covering
    it, each pair of crossing rays at their meeting point, and parallel rays
    on a shared line over enough consecutive values to decide the whole
    infinite overlap.
    """
    m = as_index(m)
    n = len(m)
    found = []
    for x in sorted(data.entries, key=lambda p: (len(p), p)):
        if len(x) != n:
            found.append(Diagnostic("DimensionMismatch", f"entry {x} has dimension {len(x)}, expected {n}"))
        elif not in_X0(x, m):
            found.append(Diagnostic("EntryOutsideX0", f"entry {x} is not in X_0 (τ ≥ 0, τ ≱ {m})"))
    for idx, ray in enumerate(data.rays):
        found.extend(_ray_diagnostics(ray, m, idx))
    if found:
        return found

    for x, v in data.entries.items():
        for idx, ray in enumerate(data.rays):
            y = ray.index_of(x)
            if y is not None and ray.value(y) != v:
                found.append(Diagnostic("InconsistentCoverage", f"entry {x} = {v} but ray {idx} gives {ray.value(y)}"))
    for i1 in range(len(data.rays)):
        for i2 in range(i1 + 1, len(data.rays)):
            found.extend(_ray_pair_diagnostics(data.rays[i1], data.rays[i2], i1, i2))
    return found


def uncovered_lines(data: CauchyData, m: Sequence[int]) -> List[Tuple[MultiIndex, int]]:
    """Face lines τ + y·e_k of X_0 that no ray along axis k covers."""
    out = []
    for face in faces(m):
        if sum(face.J) != 1:
            continue
        k = face.active[0]
        for tau in face.points:
            if not in_X0(tau, m):
                continue
            if not any(r.direction == k and r.on_line(tau) for r in data.rays):
                out.append((tau, k))
    return out


def ensure_data(data: CauchyData, m: Sequence[int]) -> CauchyData:
    found = validate_data(data, m)
    if found:
        raise InvalidData(diagnostics=found)
    lines = uncovered_lines(data, m)
    if lines:
        logger.info(
            "zero-extending %d uncovered X_0 line(s) beyond explicit entries: %s",
            len(lines),
            ", ".join(f"{tau}+y·e{k + 1}" for tau, k in lines[:8]) + (" ..." if len(lines) > 8 else ""),
        )
    return data


def ensure_problem(problem: Problem) -> Problem:
    """Validate equation and data together; raise on the first failing part."""
    ensure_equation(problem.equation)
    ensure_data(problem.data, problem.equation.m)
    return problem
