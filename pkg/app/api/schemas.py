"""
File and request schemas for RecurrentGF.

Problem files, generating-function files and coefficient tables are UTF-8
JSON. Every rational travels as a string "p/q" or "p"; exponent vectors are
integer lists. Term lists are written in descending graded-lexicographic order
and table entries in ascending graded order, so identical inputs give
identical bytes.
"""

import re
from fractions import Fraction
from typing import List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.algebra import CoeffTable, LaurentPoly, RationalFn
from app.core.lattice import grlex_key
from app.models.problem import CauchyData, DifferenceEquation, Problem, RaySpec
from app.models.solver import SolutionTable

RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(v) -> Fraction:
    """Parse "p/q", "p" or an int; anything else (floats included) is rejected."""
    if isinstance(v, bool):
        raise ValueError("rational must be a string 'p/q' or an integer")
    if isinstance(v, int):
        return Fraction(v)
    if not isinstance(v, str) or not RATIONAL_RE.match(v.strip()):
        raise ValueError(f"rational must be a string 'p/q' or 'p', got {v!r}")
    text = v.strip()
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ValueError(f"rational {v!r} has a zero denominator")
    return Fraction(text)


def check_rational(v) -> str:
    """Field validator body: normalize to the canonical string form."""
    return format_rational(parse_rational(v))


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


class Term(BaseModel):
    """One monomial c·z^alpha."""
    alpha: List[int]
    c: str

    @field_validator("c", mode="before")
    @classmethod
    def c_must_be_rational(cls, v):
        return check_rational(v)


def terms_to_poly(dim: int, terms: Sequence[Term]) -> LaurentPoly:
    return LaurentPoly.from_terms(dim, {tuple(t.alpha): parse_rational(t.c) for t in terms})


def poly_to_terms(p: LaurentPoly) -> List[Term]:
    return [Term(alpha=list(e), c=format_rational(c)) for e, c in p.sorted_terms()]


def _no_duplicates(terms: Sequence[Term], what: str):
    seen = set()
    for t in terms:
        key = tuple(t.alpha)
        if key in seen:
            raise ValueError(f"duplicate exponent {list(key)} in {what}")
        seen.add(key)


class EntrySpec(BaseModel):
    """An explicit data value φ(x)."""
    x: List[int]
    value: str

    @field_validator("value", mode="before")
    @classmethod
    def value_must_be_rational(cls, v):
        return check_rational(v)


class RayModel(BaseModel):
    """
    Recurrent data along anchor + y·e_direction.

    Attributes:
        anchor: Starting point of the ray
        direction: Axis index, 0-based
        rec_coeffs: d_0..d_s of Σ d_j a_{y+j} = 0, d_s ≠ 0
        initial: a_0..a_{s-1}
    """
    anchor: List[int]
    direction: int
    rec_coeffs: List[str]
    initial: List[str] = Field(default_factory=list)

    @field_validator("rec_coeffs", "initial", mode="before")
    @classmethod
    def values_must_be_rational(cls, v):
        if not isinstance(v, list):
            raise ValueError("expected a list of rationals")
        return [check_rational(x) for x in v]

    def to_ray(self) -> RaySpec:
        return RaySpec(
            tuple(self.anchor),
            self.direction,
            tuple(parse_rational(c) for c in self.rec_coeffs),
            tuple(parse_rational(c) for c in self.initial),
        )

    @classmethod
    def from_ray(cls, ray: RaySpec) -> "RayModel":
        return cls(
            anchor=list(ray.anchor),
            direction=ray.direction,
            rec_coeffs=[format_rational(c) for c in ray.rec_coeffs],
            initial=[format_rational(c) for c in ray.initial],
        )


class DataSpec(BaseModel):
    entries: List[EntrySpec] = Field(default_factory=list)
    rays: List[RayModel] = Field(default_factory=list)

    @model_validator(mode="after")
    def entries_unique(self):
        seen = set()
        for e in self.entries:
            if tuple(e.x) in seen:
                raise ValueError(f"duplicate data entry at {e.x}")
            seen.add(tuple(e.x))
        return self


class GfFile(BaseModel):
    """A rational function as numerator and denominator term lists."""
    variables: Optional[List[str]] = None
    numerator: List[Term]
    denominator: Optional[List[Term]] = None

    @model_validator(mode="after")
    def consistent_dimension(self):
        _no_duplicates(self.numerator, "numerator")
        _no_duplicates(self.denominator or [], "denominator")
        dims = {len(t.alpha) for t in self.numerator + (self.denominator or [])}
        if self.variables is not None:
            dims.add(len(self.variables))
        if len(dims) > 1:
            raise ValueError(f"terms and variables disagree on the dimension: {sorted(dims)}")
        if not dims:
            raise ValueError("cannot infer the dimension: give variables or at least one term")
        return self

    @property
    def dim(self) -> int:
        if self.variables is not None:
            return len(self.variables)
        return len((self.numerator + (self.denominator or []))[0].alpha)

    def to_ratfn(self) -> RationalFn:
        """
        Raises:
            DivisionByZero: If the denominator list is present but empty or zero
        """
        num = terms_to_poly(self.dim, self.numerator)
        den = terms_to_poly(self.dim, self.denominator) if self.denominator is not None else None
        return RationalFn(num, den)

    @classmethod
    def from_ratfn(cls, f: RationalFn, names: Optional[Sequence[str]] = None) -> "GfFile":
        return cls(
            variables=list(names) if names is not None else None,
            numerator=poly_to_terms(f.numerator),
            denominator=poly_to_terms(f.denominator),
        )


class ProblemFile(BaseModel):
    """A Cauchy problem: equation coefficients, data and an optional closed form."""
    name: str = ""
    dim: int
    m: List[int]
    coeffs: List[Term]
    data: DataSpec = Field(default_factory=DataSpec)
    expected: Optional[GfFile] = None

    @field_validator("dim")
    @classmethod
    def dim_positive(cls, v):
        if v < 1:
            raise ValueError("dim must be at least 1")
        return v

    @model_validator(mode="after")
    def m_matches_dim(self):
        if len(self.m) != self.dim:
            raise ValueError(f"m has {len(self.m)} components but dim is {self.dim}")
        _no_duplicates(self.coeffs, "coeffs")
        if self.expected is not None and self.expected.dim != self.dim:
            raise ValueError(f"expected closed form has dimension {self.expected.dim}, not {self.dim}")
        return self

    def to_problem(self) -> Problem:
        eq = DifferenceEquation(tuple(self.m), {tuple(t.alpha): parse_rational(t.c) for t in self.coeffs})
        data = CauchyData(
            {tuple(e.x): parse_rational(e.value) for e in self.data.entries},
            tuple(r.to_ray() for r in self.data.rays),
        )
        expected = self.expected.to_ratfn() if self.expected is not None else None
        return Problem(eq, data, expected, self.name)

    @classmethod
    def from_problem(cls, problem: Problem) -> "ProblemFile":
        eq, data = problem.equation, problem.data
        coeffs = [
            Term(alpha=list(a), c=format_rational(c))
            for a, c in sorted(eq.coeffs.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)
        ]
        entries = [
            EntrySpec(x=list(x), value=format_rational(v))
            for x, v in sorted(data.entries.items(), key=lambda kv: grlex_key(kv[0]))
        ]
        return cls(
            name=problem.name,
            dim=eq.dim,
            m=list(eq.m),
            coeffs=coeffs,
            data=DataSpec(entries=entries, rays=[RayModel.from_ray(r) for r in data.rays]),
            expected=GfFile.from_ratfn(problem.expected) if problem.expected is not None else None,
        )


class TableEntry(BaseModel):
    x: List[int]
    value: str


class TableFile(BaseModel):
    """
    A coefficient table.

    Solution tables are dense over 0 ≤ x ≤ bound and index by the point x.
    Expansion tables list the nonzero coefficients of z^x inside the window
    -(order+1)·I ≤ x ≤ upper, so f(x) sits at exponent -(x+I).
    """
    kind: Literal["solution", "expansion"]
    dim: int
    bound: Optional[List[int]] = None
    order: Optional[int] = None
    upper: Optional[List[int]] = None
    entries: List[TableEntry] = Field(default_factory=list)

    @classmethod
    def from_solution(cls, table: SolutionTable) -> "TableFile":
        return cls(
            kind="solution",
            dim=table.dim,
            bound=list(table.bound),
            entries=[TableEntry(x=list(x), value=format_rational(v)) for x, v in table.items()],
        )

    @classmethod
    def from_expansion(cls, table: CoeffTable) -> "TableFile":
        entries = [
            TableEntry(x=list(e), value=format_rational(v))
            for e, v in sorted(table.entries.items(), key=lambda kv: grlex_key(kv[0]))
        ]
        return cls(kind="expansion", dim=table.dim, order=table.order, upper=list(table.upper), entries=entries)

    def lookup(self, x: Sequence[int]) -> Fraction:
        """Value stored at x, zero when absent."""
        key = list(x)
        for entry in self.entries:
            if entry.x == key:
                return Fraction(entry.value)
        return Fraction(0)


class SolveRequest(BaseModel):
    problem: ProblemFile
    box: List[int]


class GreenRequest(BaseModel):
    problem: ProblemFile
    tau: List[int]
    short_names: bool = False


class ExpandRequest(BaseModel):
    gf: GfFile
    order: int

    @field_validator("order")
    @classmethod
    def order_non_negative(cls, v):
        if v < 0:
            raise ValueError("order must be non-negative")
        return v


class VerifyRequest(BaseModel):
    problem: ProblemFile
    box: Optional[List[int]] = None
