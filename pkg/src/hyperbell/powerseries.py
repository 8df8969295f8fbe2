"""Truncated formal power series with exact rational coefficients.

This is the generating-function route to every sequence in the package and
is kept independent of the recursions in ``sequences``: nothing here calls
into that module.  All results are exact through z^N, where N is the order
the caller chose; nothing beyond z^N is ever read or produced.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exact_arith import factorial, pochhammer

__all__ = [
    "IntegralityViolation",
    "FormalSeries",
    "HypergeomSpec",
    "hypergeom_series",
    "hypergeom_weights",
    "series_mul",
    "series_pow",
    "series_exp",
    "series_log",
    "extract_weighted",
    "hypergeom_exp_sequence",
    "oracle_bell",
    "oracle_stirling",
    "oracle_restricted",
    "oracle_restricted_stirling",
]


class IntegralityViolation(ArithmeticError):
    """A weighted coefficient that should be an integer is not."""

    def __init__(self, index: int, value: Fraction):
        self.index = index
        self.value = value
        super().__init__(f"weighted coefficient at n={index} is {value}, not an integer")


@dataclass(frozen=True)
class FormalSeries:
    """c_0 + c_1 z + ... + c_N z^N (mod z^(N+1))."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        coeffs = tuple(coeffs)
        if any(isinstance(c, float) for c in coeffs):
            raise TypeError("series coefficients must be exact (int or Fraction), not float")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))
        if not self.coeffs:
            raise ValueError("a series needs at least the constant coefficient")

    @classmethod
    def constant(cls, c, order: int) -> "FormalSeries":
        return cls([c] + [0] * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def _same_order(self, other: "FormalSeries") -> None:
        if other.order != self.order:
            raise ValueError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: "FormalSeries") -> "FormalSeries":
        self._same_order(other)
        return FormalSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: "FormalSeries") -> "FormalSeries":
        self._same_order(other)
        return FormalSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __neg__(self) -> "FormalSeries":
        return FormalSeries(-a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, FormalSeries):
            return series_mul(self, other)
        return FormalSeries(a * other for a in self.coeffs)

    __rmul__ = __mul__

    def derivative(self) -> list[Fraction]:
        """Coefficients of f' through z^(N-1)."""
        return [k * c for k, c in enumerate(self.coeffs)][1:]


@dataclass(frozen=True)
class HypergeomSpec:
    """Lower parameters (k_1, ..., k_L) of 0F_L(k_1, ..., k_L; z)."""

    params: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        for k in self.params:
            if not isinstance(k, int) or k < 1:
                raise ValueError(f"hypergeometric parameters must be positive ints, got {self.params}")

    @classmethod
    def ones(cls, L: int) -> "HypergeomSpec":
        return cls((1,) * L)

    @property
    def L(self) -> int:
        return len(self.params)

    def weight(self, n: int) -> int:
        """n! * prod_i (k_i)_n, the reciprocal of the z^n coefficient."""
        return factorial(n) * math.prod(pochhammer(k, n) for k in self.params)


def hypergeom_weights(spec: HypergeomSpec, N: int) -> list[int]:
    return [spec.weight(n) for n in range(N + 1)]


def hypergeom_series(spec: HypergeomSpec, N: int) -> FormalSeries:
    if N < 0:
        raise ValueError("order must be >= 0")
    return FormalSeries(Fraction(1, w) for w in hypergeom_weights(spec, N))


def series_mul(f: FormalSeries, g: FormalSeries) -> FormalSeries:
    """Cauchy product truncated at the common order."""
    f._same_order(g)
    a, b = f.coeffs, g.coeffs
    return FormalSeries(
        sum((a[i] * b[n - i] for i in range(n + 1)), Fraction(0)) for n in range(len(a))
    )


def series_pow(f: FormalSeries, e: int) -> FormalSeries:
    """f**e by repeated squaring of truncated series."""
    if e < 0:
        raise ValueError("negative powers are not supported")
    result = FormalSeries.constant(1, f.order)
    base = f
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def series_exp(f: FormalSeries) -> FormalSeries:
    """exp(f) for f with zero constant term.

    Uses B' = f' B, i.e. n B_n = sum_{m=1}^{n} m f_m B_{n-m}.
    """
    if f[0] != 0:
        raise ValueError(f"exp needs a zero constant term, got {f[0]}")
    N = f.order
    mf = [m * c for m, c in enumerate(f.coeffs)]
    B = [Fraction(1)] + [Fraction(0)] * N
    for n in range(1, N + 1):
        B[n] = sum((mf[m] * B[n - m] for m in range(1, n + 1) if mf[m]), Fraction(0)) / n
    return FormalSeries(B)


def series_log(g: FormalSeries) -> FormalSeries:
    """log(g) for g with constant term 1.

    From g h' = g', i.e. n h_n = n g_n - sum_{m=1}^{n-1} m h_m g_{n-m}.
    """
    if g[0] != 1:
        raise ValueError(f"log needs constant term 1, got {g[0]}")
    N = g.order
    gc = g.coeffs
    h = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        acc = n * gc[n] - sum((m * h[m] * gc[n - m] for m in range(1, n)), Fraction(0))
        h[n] = acc / n
    return FormalSeries(h)


def extract_weighted(series: FormalSeries, weights: Sequence[int]) -> list[int]:
    """[c_n * w_n] for n = 0..N; raises IntegralityViolation on the first non-integer."""
    if len(weights) < len(series):
        raise ValueError(f"need {len(series)} weights, got {len(weights)}")
    out = []
    for n, (c, w) in enumerate(zip(series.coeffs, weights)):
        v = c * w
        if v.denominator != 1:
            raise IntegralityViolation(n, v)
        out.append(v.numerator)
    return out


def _shifted_hypergeom(spec: HypergeomSpec, N: int, p: int) -> FormalSeries:
    """0F_L(z) minus its terms z^0..z^p."""
    F = hypergeom_series(spec, N)
    return FormalSeries([0] * min(p + 1, N + 1) + list(F.coeffs[p + 1 :]))


def hypergeom_exp_sequence(spec: HypergeomSpec, N: int) -> list[int]:
    """Weighted coefficients of exp(0F_L(k; z) - 1), weight n! prod (k_i)_n.

    For spec (1, 2) these are the f_2(n); for the all-ones spec of length L,
    the b_L(n).
    """
    B = series_exp(_shifted_hypergeom(spec, N, 0))
    return extract_weighted(B, hypergeom_weights(spec, N))


def oracle_bell(L: int, N: int) -> list[int]:
    return hypergeom_exp_sequence(HypergeomSpec.ones(L), N)


def oracle_stirling(L: int, l: int, N: int) -> list[int]:
    """S_L(n, l) for n = 0..N from (0F_L(z) - 1)^l / l!."""
    return oracle_restricted_stirling(L, 0, l, N)


def oracle_restricted(L: int, p: int, N: int) -> list[int]:
    """b_L(p, n), n = 0..N, from exp(0F_L(z) - sum_{k<=p} z^k/(k!)^(L+1))."""
    spec = HypergeomSpec.ones(L)
    B = series_exp(_shifted_hypergeom(spec, N, p))
    return extract_weighted(B, hypergeom_weights(spec, N))


def oracle_restricted_stirling(L: int, p: int, l: int, N: int) -> list[int]:
    """S_{L,p}(n, l), n = 0..N: weighted coefficients of g(z)^l / l!.

    g is 0F_L with its first p+1 terms removed and the weight is (n!)^(L+1),
    so p = 0 gives S_L(n, l).
    """
    if l < 0:
        raise ValueError("l must be non-negative")
    spec = HypergeomSpec.ones(L)
    g = _shifted_hypergeom(spec, N, p)
    P = series_pow(g, l) * Fraction(1, factorial(l))
    return extract_weighted(P, hypergeom_weights(spec, N))
