"""Certified numerics: Dobinski's formula and the transcendental identities.

Every quantity is an ``ApproxValue``, a closed rational interval known to
contain the true value.  Infinite sums are cut after ``budget.terms`` terms
and the remainder is bounded rigorously, either from the term ratio or, for
the sequence sums, from a majorant derived from B' = F' B.

Identities are compared in exponentiated form (sum = exp(...)) so that only
exp needs a certified evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .exact_arith import factorial
from .powerseries import HypergeomSpec, hypergeom_exp_sequence
from .sequences import extended_bell

__all__ = [
    "InsufficientPrecision",
    "PrecisionBudget",
    "ApproxValue",
    "IdentityReport",
    "IDENTITIES",
    "eval_hypergeom",
    "exp_interval",
    "dobinski_bell",
    "sequence_sum",
    "check_identity",
]


class InsufficientPrecision(ArithmeticError):
    pass


@dataclass(frozen=True)
class PrecisionBudget:
    """``terms``: partial-sum length; ``tol``: target enclosure width."""

    terms: int = 60
    tol: Fraction = Fraction(1, 10**30)

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("terms must be positive")
        object.__setattr__(self, "tol", Fraction(self.tol))
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    @property
    def bits(self) -> int:
        """Dyadic grid used for outward rounding, far below ``tol``."""
        return max(64, math.ceil(math.log2(1 / self.tol)) + 64)


def _floor_to(q: Fraction, bits: int) -> Fraction:
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits)


def _ceil_to(q: Fraction, bits: int) -> Fraction:
    return Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)


@dataclass(frozen=True)
class ApproxValue:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "ApproxValue") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def outward(self, bits: int) -> "ApproxValue":
        return ApproxValue(_floor_to(self.lo, bits), _ceil_to(self.hi, bits))

    def __add__(self, other):
        if not isinstance(other, ApproxValue):
            other = ApproxValue(other, other)
        return ApproxValue(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other):
        if not isinstance(other, ApproxValue):
            other = ApproxValue(other, other)
        return ApproxValue(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other):
        if not isinstance(other, ApproxValue):
            other = ApproxValue(other, other)
        p = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return ApproxValue(min(p), max(p))

    __radd__ = __add__
    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def _ratio_tail(term: Fraction, ratio: Fraction) -> Fraction:
    """Bound on t + t r + t r^2 + ... for a ratio bound r < 1."""
    if ratio >= 1:
        raise InsufficientPrecision(f"term ratio {ratio} is not below 1")
    return term / (1 - ratio)


def eval_hypergeom(
    spec: HypergeomSpec, shift: int = 0, budget: PrecisionBudget | None = None
) -> ApproxValue:
    """Enclosure of 0F_L(k_1+shift, ..., k_L+shift; 1).

    The term ratio 1/((n+1) prod(k_i+n)) decreases with n, so the remainder
    after n = K-1 is at most t_K / (1 - r_K).  K starts at ``budget.terms`` and
    is pushed up only if r_K is not yet below 1/2.
    """
    budget = budget or PrecisionBudget()
    params = [k + shift for k in spec.params]

    def ratio(n: int) -> Fraction:
        return Fraction(1, (n + 1) * math.prod(k + n for k in params))

    K = budget.terms
    while ratio(K) > Fraction(1, 2):
        K += 1
    total = Fraction(0)
    t = Fraction(1)
    for n in range(K):
        total += t
        t *= ratio(n)
    tail = _ratio_tail(t, ratio(K))
    return ApproxValue(total, total + tail).outward(budget.bits)


def _exp_partial(x: Fraction, K: int) -> tuple[Fraction, Fraction]:
    total = Fraction(0)
    t = Fraction(1)
    for k in range(K):
        total += t
        t = t * x / (k + 1)
    return total, t


def exp_interval(x: ApproxValue, budget: PrecisionBudget | None = None) -> ApproxValue:
    """exp over a non-negative interval by Taylor sums with a factorial tail bound."""
    budget = budget or PrecisionBudget()
    if x.lo < 0:
        raise ValueError("exp_interval is only certified for non-negative arguments")
    x = x.outward(budget.bits)
    K = budget.terms
    while K + 1 <= 2 * x.hi:
        K += 1
    lo, _ = _exp_partial(x.lo, K)
    hi, t = _exp_partial(x.hi, K)
    hi += _ratio_tail(t, x.hi / (K + 1))
    return ApproxValue(lo, hi).outward(budget.bits)


def dobinski_bell(n: int, budget: PrecisionBudget | None = None) -> int:
    """b_0(n) as the integer inside the enclosure of (1/e) sum_k k^n / k!.

    The k-sum starts at max(3n, 20) terms and grows until the certified
    remainder drops below ``budget.tol``; e is enclosed with ``budget.terms``
    terms.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    budget = budget or PrecisionBudget(terms=2 * n + 30, tol=Fraction(1, 100))

    def term(k: int) -> Fraction:
        return Fraction(k**n, factorial(k))

    def ratio(k: int) -> Fraction:
        # t_{k+1}/t_k = (1 + 1/k)^n / (k+1), decreasing in k
        return Fraction((k + 1) ** n, k**n * (k + 1))

    K = max(3 * n, 20)
    while ratio(K) >= Fraction(1, 2) or _ratio_tail(term(K), ratio(K)) >= budget.tol:
        K += 1
    s = sum(term(k) for k in range(K))
    tail = _ratio_tail(term(K), ratio(K))
    e = eval_hypergeom(HypergeomSpec(), 0, budget)
    enc = ApproxValue(s / e.hi, (s + tail) / e.lo)
    lo_int, hi_int = math.ceil(enc.lo), math.floor(enc.hi)
    if enc.width >= Fraction(1, 2) or lo_int != hi_int:
        raise InsufficientPrecision(
            f"Dobinski enclosure {enc} for n={n} does not isolate an integer"
        )
    return lo_int


# -- sequence sums ----------------------------------------------------------


def _g_upper(weights_of: Callable[[int], int], x: Fraction, params: tuple[int, ...]) -> Fraction:
    """Upper bound on G(x) = sum_{m>=1} m x^m / w_m."""
    def ratio(m: int) -> Fraction:
        # t_{m+1}/t_m = x / (m prod(k_i + m)), decreasing in m
        return x / (m * math.prod(k + m for k in params))

    total = Fraction(0)
    m = 1
    t = x / weights_of(1)
    while ratio(m) > Fraction(1, 2):
        total += t
        t *= ratio(m)
        m += 1
    return total + _ratio_tail(t, ratio(m))


def _majorant_tail(coeffs: list[Fraction], spec: HypergeomSpec, moment: int) -> Fraction:
    """Bound on sum_{m>=J} m^moment c_m where c = exp(F - 1) coefficients, J = len(coeffs).

    If c_k <= M x^-k for k < J and G(x) <= J, induction on m c_m =
    sum_j j a_j c_{m-j} gives c_m <= M G x^-m / m for every m >= J.  The best
    x on a quarter grid is used.
    """
    J = len(coeffs)
    best = None
    i = 5
    while True:
        x = Fraction(i, 4)
        G = _g_upper(spec.weight, x, spec.params)
        if G > J:
            break
        xp = Fraction(1)
        M = Fraction(0)
        for c in coeffs:
            M = max(M, c * xp)
            xp *= x
        # xp == x^J now
        geom = 1 / (1 - 1 / x)
        bound = M * G / xp * geom
        if moment == 0:
            bound /= J
        if best is None or bound < best:
            best = bound
        i += 1
    if best is None:
        raise InsufficientPrecision(f"no majorant available with {J} terms")
    return best


def _series_coeffs(spec: HypergeomSpec, count: int) -> list[Fraction]:
    """c_0..c_{count-1} of exp(F - 1); the recursion is used for all-ones specs."""
    N = count - 1
    if all(k == 1 for k in spec.params):
        L = spec.L
        vals = [extended_bell(L, n) for n in range(count)]
    else:
        vals = hypergeom_exp_sequence(spec, N)
    return [Fraction(v, spec.weight(n)) for n, v in enumerate(vals)]


def sequence_sum(spec: HypergeomSpec, form: str, budget: PrecisionBudget) -> ApproxValue:
    """Enclosure of B(1) (``form="first"``) or B'(1) (``form="second"``).

    B(z) = exp(F(z) - 1) = sum c_n z^n, so B(1) = sum c_n and
    B'(1) = sum (n+1) c_{n+1}; both are cut at ``budget.terms`` summands.
    """
    K = budget.terms
    if form == "first":
        c = _series_coeffs(spec, K)
        partial = sum(c)
        tail = _majorant_tail(c, spec, 0)
    elif form == "second":
        c = _series_coeffs(spec, K + 1)
        partial = sum(m * c[m] for m in range(1, K + 1))
        tail = _majorant_tail(c, spec, 1)
    else:
        raise ValueError(f"unknown form {form!r}")
    return ApproxValue(partial, partial + tail).outward(budget.bits)


def _rhs(spec: HypergeomSpec, form: str, budget: PrecisionBudget) -> ApproxValue:
    F1 = eval_hypergeom(spec, 0, budget)
    value = exp_interval(F1 - 1, budget)
    if form == "second":
        # F'(1) = 0F_L(k+1; 1) / prod k_i
        dF = eval_hypergeom(spec, 1, budget) * Fraction(1, math.prod(spec.params))
        value = value * dF
    return value.outward(budget.bits)


@dataclass(frozen=True)
class Identity:
    tag: str
    spec: HypergeomSpec
    form: str
    text: str


IDENTITIES: dict[str, Identity] = {
    ident.tag: ident
    for ident in (
        Identity("L0-first", HypergeomSpec.ones(0), "first",
                 "sum b_0(n)/n! = exp(e - 1)"),
        Identity("L0-second", HypergeomSpec.ones(0), "second",
                 "sum b_0(n+1)/n! = e * exp(e - 1)"),
        Identity("L1-first", HypergeomSpec.ones(1), "first",
                 "sum b_1(n)/(n!)^2 = exp(I_0(2) - 1)"),
        Identity("L1-second", HypergeomSpec.ones(1), "second",
                 "sum b_1(n+1)/((n+1)(n!)^2) = I_1(2) * exp(I_0(2) - 1)"),
        Identity("L2-first", HypergeomSpec.ones(2), "first",
                 "sum b_2(n)/(n!)^3 = exp(0F2(1,1;1) - 1)"),
        Identity("L2-second", HypergeomSpec.ones(2), "second",
                 "sum b_2(n+1)/((n+1)^2 (n!)^3) = 0F2(2,2;1) * exp(0F2(1,1;1) - 1)"),
        Identity("F2-general", HypergeomSpec((1, 2)), "first",
                 "sum f_2(n)/((n+1)(n!)^3) = exp(0F2(1,2;1) - 1)"),
    )
}


@dataclass(frozen=True)
class IdentityReport:
    """``gap`` bounds |lhs - rhs| from above; ``separation`` > 0 proves they differ."""

    tag: str
    lhs: ApproxValue
    rhs: ApproxValue
    overlap: bool
    gap: Fraction
    separation: Fraction
    tol: Fraction = field(default=Fraction(1, 10**30))

    @property
    def width(self) -> Fraction:
        return max(self.lhs.width, self.rhs.width)

    @property
    def within_tol(self) -> bool:
        return self.width <= self.tol

    @property
    def verified(self) -> bool:
        return self.overlap and self.within_tol


def check_identity(tag: str, budget: PrecisionBudget | None = None) -> IdentityReport:
    budget = budget or PrecisionBudget()
    try:
        ident = IDENTITIES[tag]
    except KeyError:
        raise KeyError(f"unknown identity {tag!r}; known: {', '.join(IDENTITIES)}") from None
    lhs = sequence_sum(ident.spec, ident.form, budget)
    rhs = _rhs(ident.spec, ident.form, budget)
    return IdentityReport(
        tag=tag,
        lhs=lhs,
        rhs=rhs,
        overlap=lhs.overlaps(rhs),
        gap=max(lhs.hi, rhs.hi) - min(lhs.lo, rhs.lo),
        separation=max(lhs.lo, rhs.lo) - min(lhs.hi, rhs.hi),
        tol=budget.tol,
    )
