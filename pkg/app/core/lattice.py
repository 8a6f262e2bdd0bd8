"""
Lattice points of Z^n for RecurrentGF.

A MultiIndex is a plain tuple of ints. Exponent vectors, lattice arguments,
shifts, the dominant corner m and the face flags J all use it. Comparison
helpers implement the componentwise partial order; Python's own tuple
ordering is lexicographic and is only used as a tie-break.
"""

import itertools
from typing import Iterable, Iterator, Sequence, Tuple

from app.core.errors import DimensionMismatch

MultiIndex = Tuple[int, ...]


def as_index(values: Iterable[int]) -> MultiIndex:
    """Coerce any integer sequence into a MultiIndex."""
    return tuple(int(v) for v in values)


def check_dims(*indices: Sequence[int]) -> int:
    """Return the shared length of the given indices or raise."""
    dims = {len(i) for i in indices}
    if len(dims) > 1:
        raise DimensionMismatch(f"dimension mismatch: {sorted(dims)}")
    return dims.pop() if dims else 0


def zero(n: int) -> MultiIndex:
    return (0,) * n


def ones(n: int) -> MultiIndex:
    """The vector I = (1, ..., 1)."""
    return (1,) * n


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def neg(a: MultiIndex) -> MultiIndex:
    return tuple(-x for x in a)


def scale(k: int, a: MultiIndex) -> MultiIndex:
    return tuple(k * x for x in a)


def hadamard(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    """Componentwise product, used for J∘y."""
    return tuple(x * y for x, y in zip(a, b))


def cmin(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(min(x, y) for x, y in zip(a, b))


def cmax(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(max(x, y) for x, y in zip(a, b))


def leq(a: MultiIndex, b: MultiIndex) -> bool:
    """a ≤ b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def geq(a: MultiIndex, b: MultiIndex) -> bool:
    """a ≥ b componentwise."""
    return all(x >= y for x, y in zip(a, b))


def not_leq(a: MultiIndex, b: MultiIndex) -> bool:
    """a ≰ b: some a_j > b_j."""
    return not leq(a, b)


def not_geq(a: MultiIndex, b: MultiIndex) -> bool:
    """a ≱ b: some a_j < b_j."""
    return not geq(a, b)


def is_nonnegative(a: MultiIndex) -> bool:
    return all(x >= 0 for x in a)


def unit(n: int, k: int) -> MultiIndex:
    return tuple(1 if j == k else 0 for j in range(n))


def grlex_key(a: MultiIndex):
    """Sort key for graded lexicographic order."""
    return (sum(a), a)


def box(lo: MultiIndex, hi: MultiIndex) -> Iterator[MultiIndex]:
    """All points lo ≤ x ≤ hi in graded order (empty if lo ≰ hi)."""
    if not leq(lo, hi):
        return iter(())
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return iter(sorted(itertools.product(*ranges), key=grlex_key))


def box_size(lo: MultiIndex, hi: MultiIndex) -> int:
    size = 1
    for a, b in zip(lo, hi):
        size *= max(0, b - a + 1)
    return size


def flags(n: int) -> Iterator[MultiIndex]:
    """All 2^n face flag vectors J in lexicographic order."""
    return itertools.product((0, 1), repeat=n)


def parse_index(text: str) -> MultiIndex:
    """Parse a comma-separated integer list such as ``"10,6"``."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError(f"empty index: {text!r}")
    return tuple(int(p) for p in parts)
