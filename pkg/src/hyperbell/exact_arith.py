"""Exact integer/rational primitives shared by the rest of the package.

Python's ``int`` is the arbitrary-precision integer and ``fractions.Fraction``
the always-reduced rational; this module only adds the combinatorial
building blocks and a couple of checked conversions.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

BigInt = int
BigRat = Fraction

__all__ = [
    "BigInt",
    "BigRat",
    "NonExactDivision",
    "binomial",
    "factorial",
    "pochhammer",
    "kernel_row",
    "exact_div",
    "as_integer",
]


class NonExactDivision(ArithmeticError):
    """A division that must be exact left a remainder."""


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """C(n, k), zero when k > n. Memoized on (n, k)."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs non-negative arguments, got ({n}, {k})")
    return math.comb(n, k)


def factorial(n: int) -> int:
    return math.factorial(n)


def pochhammer(b: int, n: int) -> int:
    """Rising factorial b(b+1)...(b+n-1); 1 for n = 0."""
    if b < 1:
        raise ValueError(f"pochhammer base must be >= 1, got {b}")
    if n < 0:
        raise ValueError(f"pochhammer length must be >= 0, got {n}")
    return math.prod(range(b, b + n))


@lru_cache(maxsize=4096)
def kernel_row(L: int, n: int) -> tuple[int, ...]:
    """The weights C(n,k) * C(n+1,k)**L for k = 0..n.

    Every b_L / S_L recursion step sums against this row, so it is cached
    per (L, n).
    """
    return tuple(binomial(n, k) * binomial(n + 1, k) ** L for k in range(n + 1))


def exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise NonExactDivision(f"{a} is not divisible by {b}")
    return q


def as_integer(q: Fraction | int, what: str = "value") -> int:
    """Return ``q`` as an int, raising NonExactDivision if it is not integral."""
    q = Fraction(q)
    if q.denominator != 1:
        raise NonExactDivision(f"{what} = {q} is not an integer")
    return q.numerator
