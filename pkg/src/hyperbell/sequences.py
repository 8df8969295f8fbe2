"""Recursive and closed-form computation of the extended Bell family.

Notation used throughout: ``L`` is the hypergeometric type (L = 0 gives the
classical numbers), ``b_L(n)`` the extended Bell numbers, ``S_L(n, l)`` the
matching Stirling numbers of the second kind and ``b_L(p, n)`` the restricted
Bell numbers with the first ``p`` non-constant series terms removed.

All tables are memoized per key and only ever grow; a lock per table keeps
concurrent growth consistent.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import as_integer, binomial, exact_div, factorial, kernel_row

__all__ = [
    "BellTable",
    "StirlingTriangle",
    "RestrictedBellTable",
    "HGPolynomial",
    "bell_table",
    "stirling_triangle",
    "restricted_table",
    "extended_bell",
    "extended_bell_alt",
    "bell_closed_small",
    "stirling_ext",
    "hg_polynomial",
    "supra_diagonal",
    "classical_stirling_sum",
    "euler_operator_stirling",
    "restricted_bell",
    "clear_caches",
]


def _check_nonneg(**kw: int) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


class BellTable:
    """b_L(0), b_L(1), ... grown on demand.

    ``form="sum"`` uses b(n+1) = sum_k C(n,k) C(n+1,k)^L b(k);
    ``form="alt"`` uses b(n+1) = sum_k C(n+1,k)^(L+1) (n+1-k) b(k) / (n+1),
    whose division must come out exact.
    """

    def __init__(self, L: int, form: str = "sum"):
        _check_nonneg(L=L)
        if form not in ("sum", "alt"):
            raise ValueError(f"unknown recursion form {form!r}")
        self.L = L
        self.form = form
        self.values: list[int] = [1]
        self._lock = threading.Lock()

    def _next(self) -> int:
        n = len(self.values) - 1
        b = self.values
        if self.form == "sum":
            row = kernel_row(self.L, n)
            return sum(w * b[k] for k, w in enumerate(row))
        total = sum(
            binomial(n + 1, k) ** (self.L + 1) * (n + 1 - k) * b[k] for k in range(n + 1)
        )
        return exact_div(total, n + 1)

    def extend_to(self, n: int) -> None:
        if n < len(self.values):
            return
        with self._lock:
            while len(self.values) <= n:
                self.values.append(self._next())

    def __getitem__(self, n: int) -> int:
        self.extend_to(n)
        return self.values[n]

    def prefix(self, n_max: int) -> list[int]:
        self.extend_to(n_max)
        return self.values[: n_max + 1]


class StirlingTriangle:
    """S_L(n, l) for 0 <= l <= n, filled column by column.

    Column l only depends on column l-1, so columns are stored separately and
    each is extended independently when the triangle grows.
    """

    def __init__(self, L: int):
        _check_nonneg(L=L)
        self.L = L
        self.size = 0
        self._cols: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def extend_to(self, N: int) -> None:
        if N <= self.size:
            return
        with self._lock:
            if N <= self.size:
                return
            cols = self._cols
            cols[0].extend([0] * (N - self.size))
            for l in range(1, N + 1):
                if l >= len(cols):
                    cols.append([0] * l)
                prev, col = cols[l - 1], cols[l]
                # col[m] holds S(m, l); entries for m < l are zero
                for m in range(len(col), N + 1):
                    n = m - 1
                    row = kernel_row(self.L, n)
                    col.append(sum(row[k] * prev[k] for k in range(l - 1, n + 1)))
            self.size = N

    def get(self, n: int, l: int) -> int:
        if l > n:
            return 0
        self.extend_to(n)
        return self._cols[l][n]

    def row(self, n: int) -> list[int]:
        """[S(n,1), ..., S(n,n)]."""
        self.extend_to(n)
        return [self._cols[l][n] for l in range(1, n + 1)]

    @property
    def rows(self) -> list[list[int]]:
        return [self.row(n) for n in range(self.size + 1)]


class RestrictedBellTable:
    """b_L(p, n): b(p, 0) = 1, b(p, 1..p) = 0 and for n >= p

        b(p, n+1) = sum_{k=0}^{n-p} C(n,k) C(n+1,k)^L b(p, k).
    """

    def __init__(self, L: int, p: int):
        _check_nonneg(L=L, p=p)
        self.L = L
        self.p = p
        self.values: list[int] = [1] + [0] * p
        self._lock = threading.Lock()

    def extend_to(self, n: int) -> None:
        if n < len(self.values):
            return
        with self._lock:
            b = self.values
            while len(b) <= n:
                m = len(b) - 1
                row = kernel_row(self.L, m)
                b.append(sum(row[k] * b[k] for k in range(m - self.p + 1)))

    def __getitem__(self, n: int) -> int:
        self.extend_to(n)
        return self.values[n]

    def prefix(self, n_max: int) -> list[int]:
        self.extend_to(n_max)
        return self.values[: n_max + 1]


_registry: dict[tuple, object] = {}
_registry_lock = threading.Lock()


def _cached(key: tuple, factory):
    table = _registry.get(key)
    if table is None:
        with _registry_lock:
            table = _registry.setdefault(key, factory())
    return table


def bell_table(L: int, form: str = "sum") -> BellTable:
    return _cached(("bell", L, form), lambda: BellTable(L, form))


def stirling_triangle(L: int) -> StirlingTriangle:
    return _cached(("stirling", L), lambda: StirlingTriangle(L))


def restricted_table(L: int, p: int) -> RestrictedBellTable:
    return _cached(("restricted", L, p), lambda: RestrictedBellTable(L, p))


def extended_bell(L: int, n: int) -> int:
    """b_L(n); b_0(n) are the ordinary Bell numbers."""
    _check_nonneg(L=L, n=n)
    return bell_table(L)[n]


def extended_bell_alt(L: int, n: int) -> int:
    """b_L(n) through the divided form of the recursion (independent table)."""
    _check_nonneg(L=L, n=n)
    return bell_table(L, "alt")[n]


def bell_closed_small(L: int, n: int) -> int:
    """Closed forms of b_L(2), b_L(3), b_L(4) as functions of L."""
    _check_nonneg(L=L)
    if n == 2:
        return 1 + 2**L
    if n == 3:
        return 1 + 3 * 3**L + 6**L
    if n == 4:
        return 1 + 4 * 4**L + 3 * 6**L + 6 * 12**L + 24**L
    raise ValueError(f"closed form only available for n in (2, 3, 4), got {n}")


def stirling_ext(L: int, n: int, l: int) -> int:
    """S_L(n, l), with S_L(0,0) = 1 and S_L(n,0) = 0 for n > 0."""
    _check_nonneg(L=L, n=n, l=l)
    if l > n:
        return 0
    return stirling_triangle(L).get(n, l)


@dataclass(frozen=True)
class HGPolynomial:
    """sum_{k=1}^{n} S_L(n,k) x^k; ``coeffs[k-1]`` is the x^k coefficient."""

    L: int
    n: int
    coeffs: tuple[int, ...]

    def evaluate(self, x: int | Fraction) -> int | Fraction:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc + c) * x
        return acc


def hg_polynomial(L: int, n: int) -> HGPolynomial:
    _check_nonneg(L=L, n=n)
    if n == 0:
        raise ValueError("hypergeometric polynomials start at n = 1")
    return HGPolynomial(L, n, tuple(stirling_triangle(L).row(n)))


def supra_diagonal(L: int, p: int, n: int) -> int:
    """S_L(n+p, n) from the closed forms for p = 0..3.

    Evaluated in exact rationals; a non-integral result raises
    NonExactDivision.
    """
    _check_nonneg(L=L, n=n)
    if p == 0:
        return factorial(n) ** L
    if p not in (1, 2, 3):
        raise ValueError(f"closed forms exist for p in 0..3, got {p}")
    if n < 1:
        raise ValueError("supra-diagonals with p >= 1 start at n = 1")
    F = Fraction
    if p == 1:
        val = F(n * (n + 1), 2) * F(factorial(n + 1), 2) ** L
    elif p == 2:
        val = (
            F(n * (n + 1) * (n + 2), 3 * 2**3)
            * F(factorial(n + 2), 2) ** L
            * (F(3 * (n - 1), 2**L) + F(4, 3**L))
        )
    else:
        # 1/4^(L-1) written as 4/4^L so that L = 0 stays in rationals
        bracket = (
            n * n * F(3, 8) ** L
            + n * (F(4, 4**L) - F(3 ** (L + 1), 8**L))
            + F(2 + 2 * 3**L, 8**L)
            - F(4, 4**L)
        )
        val = F(n * (n + 1) * (n + 2) * (n + 3), 3 * 2**4) * F(factorial(n + 3), 3) ** L * bracket
    return as_integer(val, f"S_{L}({n + p},{n}) closed form")


def _check_stirling_args(n: int, l: int) -> None:
    _check_nonneg(n=n, l=l)
    if l < 1 or n < l:
        raise ValueError(f"need n >= l >= 1, got n={n}, l={l}")


def classical_stirling_sum(n: int, l: int) -> int:
    """S_0(n, l) from the alternating binomial sum."""
    _check_stirling_args(n, l)
    s = sum((-1) ** k * binomial(l, k) * k**n for k in range(1, l + 1))
    return exact_div((-1) ** l * s, factorial(l))


def euler_operator_stirling(n: int, l: int) -> int:
    """S_0(n, l) by applying (z d/dz)^n to (1 - z)^l - 1 and setting z = 1.

    The polynomial is held as its coefficient list; one application of the
    operator multiplies the z^k coefficient by k.
    """
    _check_stirling_args(n, l)
    coeffs = [(-1) ** k * binomial(l, k) for k in range(l + 1)]
    coeffs[0] -= 1
    for _ in range(n):
        coeffs = [k * a for k, a in enumerate(coeffs)]
    return exact_div((-1) ** l * sum(coeffs), factorial(l))


def restricted_bell(L: int, p: int, n: int) -> int:
    _check_nonneg(L=L, p=p, n=n)
    return restricted_table(L, p)[n]


def clear_caches() -> None:
    """Drop every memoized table (used to time cold computations)."""
    with _registry_lock:
        _registry.clear()
    kernel_row.cache_clear()
