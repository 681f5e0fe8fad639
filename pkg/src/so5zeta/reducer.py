"""Reduction of so(5) Witten zeta values to alternating Euler sums.

The value at nonnegative integers (s1, s2, s3, s4) is

    sum over m, n >= 1 of 1 / (m^s1 n^s2 (m+n)^s3 (m+2n)^s4).

``reduce_so`` rewrites it as a :class:`Combo` of depth <= 2 Euler sums by the
following decision table (first matching row wins):

    ======================  =========================================
    condition               route
    ======================  =========================================
    s4 = 0                  Mordell-Tornheim value MT(s1, s2; s3)
    s3 = 0, s2 > 0          even-index split of n, two signed MT sums
    s2 = 0, s1 > 0          partial fractions in m and m + 2n
    s1 = s2 = s3 = 0        closed form with z(s-1)
    s1 = s2 = 0             partial fractions in -(m+n) and m + 2n
    otherwise (s2, s3 > 0)  partial fractions in n and m + n
    ======================  =========================================

The last row sends s2 or s3 to zero, so recursion terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator, NamedTuple

from .euler_terms import Combo, make_term, stuffle_product
from .exact_arith import bernoulli, binomial, factorial

__all__ = [
    "Divergent",
    "MtArgs",
    "PartialFractionExpansion",
    "PartialFractionTerm",
    "ZetaSoArgs",
    "converges_mt",
    "converges_so",
    "exceptional",
    "partial_fraction2",
    "reduce_mt2",
    "reduce_signed_mt2",
    "reduce_so",
    "reduce_sum_n_m2n",
    "reduce_tail_limit",
    "violated_conditions",
    "witten_c",
]


class Divergent(ValueError):
    """The requested series does not converge."""


class ZetaSoArgs(NamedTuple):
    s1: int
    s2: int
    s3: int
    s4: int

    @property
    def weight(self) -> int:
        return self.s1 + self.s2 + self.s3 + self.s4

    def __str__(self) -> str:
        return f"({self.s1},{self.s2},{self.s3},{self.s4})"


@dataclass(frozen=True)
class MtArgs:
    exponents: tuple[int, ...]
    s: int

    def __post_init__(self):
        if len(self.exponents) < 1:
            raise ValueError("Mordell-Tornheim depth must be >= 1")


def _so_args(args) -> ZetaSoArgs:
    args = ZetaSoArgs(*args)
    if any(not isinstance(v, int) or v < 0 for v in args):
        raise ValueError(f"arguments must be nonnegative integers, got {tuple(args)}")
    return args


def violated_conditions(args) -> list[str]:
    """Names of the convergence inequalities that fail for ``args``."""
    s1, s2, s3, s4 = _so_args(args)
    bad = []
    if not s1 + s3 + s4 > 1:
        bad.append("s1+s3+s4>1")
    if not s2 + s3 + s4 > 1:
        bad.append("s2+s3+s4>1")
    if not s1 + s2 + s3 + s4 > 2:
        bad.append("s1+s2+s3+s4>2")
    return bad


def converges_so(args) -> bool:
    return not violated_conditions(args)


def converges_mt(args: MtArgs | tuple) -> bool:
    """Every nonempty subset of exponents plus s must exceed the subset size."""
    if not isinstance(args, MtArgs):
        *exps, s = args
        args = MtArgs(tuple(exps), s)
    exps = args.exponents
    for size in range(1, len(exps) + 1):
        for subset in combinations(exps, size):
            if args.s + sum(subset) <= size:
                return False
    return True


def exceptional(args) -> bool:
    """True for the patterns s1=s2=s3=0 and s1=s2=s4=0."""
    s1, s2, s3, s4 = _so_args(args)
    return s1 == s2 == 0 and (s3 == 0 or s4 == 0)


# -- two-factor partial fractions ------------------------------------------


@dataclass(frozen=True)
class PartialFractionTerm:
    """coeff / ((x1+x2)^sum_power * x_other^other_power).

    ``eliminated`` is the index (1 or 2) whose factor is absorbed into the
    sum; ``a`` holds the summation indices (a1, a2) with a_eliminated = 0.
    """

    eliminated: int
    a: tuple[int, int]
    coeff: int
    sum_power: int
    other_power: int

    @property
    def other(self) -> int:
        return 3 - self.eliminated


@dataclass(frozen=True)
class PartialFractionExpansion:
    n1: int
    n2: int
    terms: tuple[PartialFractionTerm, ...]

    def __iter__(self) -> Iterator[PartialFractionTerm]:
        return iter(self.terms)

    def evaluate(self, x1, x2) -> Fraction:
        x1, x2 = Fraction(x1), Fraction(x2)
        xs = {1: x1, 2: x2}
        total = Fraction(0)
        for t in self.terms:
            total += Fraction(t.coeff) / ((x1 + x2) ** t.sum_power * xs[t.other] ** t.other_power)
        return total


@lru_cache(maxsize=None)
def partial_fraction2(n1: int, n2: int) -> PartialFractionExpansion:
    """Expand 1/(x1^n1 x2^n2) over powers of x1 + x2.

    The multinomial coefficient (n_j + A_j - 1)! / ((n_j - 1)! a_k!) reduces
    to C(n_j + a_k - 1, a_k) for two factors.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("exponents must be >= 1")
    n = {1: n1, 2: n2}
    terms = []
    for j in (1, 2):
        k = 3 - j
        for ak in range(n[k]):
            m = factorial(n[j] + ak - 1) // (factorial(n[j] - 1) * factorial(ak))
            a = (0, ak) if j == 1 else (ak, 0)
            terms.append(PartialFractionTerm(j, a, m, n[j] + ak, n[k] - ak))
    return PartialFractionExpansion(n1, n2, tuple(terms))


# -- Mordell-Tornheim double sums ------------------------------------------


def _z(*args) -> Combo:
    return Combo.of(make_term(args))


def _nested(outer: int, outer_sign: int, inner: int, inner_sign: int) -> Combo:
    return Combo.of(make_term([(outer, outer_sign), (inner, inner_sign)]))


@lru_cache(maxsize=None)
def reduce_signed_mt2(a: int, b: int, c: int, x: int = 1, y: int = 1) -> Combo:
    """Sum over m, n >= 1 of x^m y^n / (m^a n^b (m+n)^c) for c >= 1.

    With k = m + n the sign x^m y^n becomes y^k (xy)^m, which turns each
    partial-fraction piece into a depth-two sum with outer index k.
    """
    if c < 1:
        raise ValueError("the (m+n) exponent must be >= 1")
    xy = x * y
    if a == 0 and b == 0:
        if x == y:
            # (k-1) x^k / k^c
            return _z((c - 1, x)) - _z((c, x))
        # sum_{m<k} (-1)^m vanishes for odd k and is -1 for even k
        return _z(c) * Fraction(-1, 2**c)
    if a == 0:
        return _nested(c, x, b, xy)
    if b == 0:
        return _nested(c, y, a, xy)
    out = Combo()
    for t in partial_fraction2(a, b):
        if t.other == 1:  # remaining power of m
            out += _nested(c + t.sum_power, y, t.other_power, xy) * t.coeff
        else:  # remaining power of n
            out += _nested(c + t.sum_power, x, t.other_power, xy) * t.coeff
    return out


def reduce_mt2(s1: int, s2: int, s: int) -> Combo:
    """Mordell-Tornheim value MT(s1, s2; s) as Euler sums of depth <= 2."""
    if not converges_mt(MtArgs((s1, s2), s)):
        raise Divergent(f"MT({s1},{s2};{s}) diverges")
    if s == 0:
        # product of two Riemann zeta values; expand via the stuffle product
        return stuffle_product(s1, s2)
    return reduce_signed_mt2(s1, s2, s)


def reduce_sum_n_m2n(u: int, v: int) -> Combo:
    """Sum over m, n of 1/(n^u (m+2n)^v) = 2^(u-1) (z(v,u) + z(v,-u))."""
    if u < 1 or v < 2:
        raise ValueError(f"need u >= 1 and v >= 2, got u={u}, v={v}")
    return (_nested(v, 1, u, 1) + _nested(v, 1, u, -1)) * 2 ** (u - 1)


def reduce_tail_limit(s: int) -> Combo:
    """Limit of the square partial sums of 1/(n^s (m+2n)) - 1/(n^s (m+n))."""
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    half = 2 ** (s - 1)
    return (_z(s + 1) + _nested(s, 1, 1, 1)) * (1 - half) - (
        _nested(s, -1, 1, 1) + _z((s + 1, -1))
    ) * half


# -- the so(5) value --------------------------------------------------------


def _sub(args: tuple[int, int, int, int]) -> Combo:
    assert converges_so(args), f"intermediate tuple {args} diverges"
    return _reduce(ZetaSoArgs(*args))


@lru_cache(maxsize=None)
def _reduce(args: ZetaSoArgs) -> Combo:
    s1, s2, s3, s4 = args

    if s4 == 0:
        return reduce_mt2(s1, s2, s3)

    if s3 == 0 and s2 > 0:
        # only even n contribute after substituting 2n -> n
        return (reduce_signed_mt2(s1, s2, s4) + reduce_signed_mt2(s1, s2, s4, 1, -1)) * 2 ** (
            s2 - 1
        )

    if s2 == 0 and s1 > 0:
        # m and m + 2n add up to 2(m + n)
        out = Combo()
        for t in partial_fraction2(s1, s4):
            scale = Fraction(t.coeff, 2**t.sum_power)
            if t.other == 1:
                out += _nested(s3 + t.sum_power, 1, t.other_power, 1) * scale
            else:
                out += _sub((0, 0, s3 + t.sum_power, t.other_power)) * scale
        return out

    if s1 == s2 == s3 == 0:
        s = s4
        return (_z(s - 1) - _z(s) * (1 + Fraction(1, 2**s))) * Fraction(1, 2)

    if s1 == s2 == 0:
        return _reduce_r_t(s3, s4)

    # s2, s3 > 0: n and m + n add up to m + 2n
    out = Combo()
    for t in partial_fraction2(s2, s3):
        if t.other == 1:
            out += _sub((s1, t.other_power, 0, s4 + t.sum_power)) * t.coeff
        else:
            out += _sub((s1, 0, t.other_power, s4 + t.sum_power)) * t.coeff
    return out


def _reduce_r_t(r: int, t: int) -> Combo:
    # -(m+n) and m + 2n add up to n; the two pieces with a bare linear factor
    # diverge separately and are combined into the square-limit sum.
    out = Combo()
    sign_r = (-1) ** r
    for term in partial_fraction2(r, t):
        if term.other == 1:
            # coeff / (n^p (-(m+n))^q) with q = r - a2
            q, p = term.other_power, term.sum_power
            if q == 1:
                continue
            out += _nested(q, 1, p, 1) * (sign_r * (-1) ** q * term.coeff)
        else:
            q, p = term.other_power, term.sum_power
            if q == 1:
                continue
            out += reduce_sum_n_m2n(p, q) * (sign_r * term.coeff)
    out += reduce_tail_limit(r + t - 1) * (sign_r * binomial(r + t - 2, r - 1))
    return out


def reduce_so(args) -> Combo:
    """Exact Euler-sum expression for the so(5) Witten zeta value at ``args``.

    Every term has weight s1+s2+s3+s4 except in the two exceptional patterns,
    where a single z(w-1) also appears.
    """
    args = _so_args(args)
    bad = violated_conditions(args)
    if bad:
        raise Divergent(f"zeta_so{args} diverges: violates {', '.join(bad)}")
    return _reduce(args)


# -- rational coefficient of the Witten values ------------------------------


def witten_c(m: int) -> Fraction:
    """c(m) with zeta_so(2m, 2m, 2m, 2m) = c(m) * pi^(8m)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    total = Fraction(0)
    for nu in range(m + 1):
        first = Fraction(0)
        for mu in range(2 * m):
            first += (
                (Fraction(2) ** (2 * nu - 1) / 2 ** (2 * m + mu) - (-1) ** mu)
                * binomial(4 * m - mu - 2, 2 * m - 1)
                * binomial(2 * m - 2 * nu + mu, 2 * m - 2 * nu)
            )
        second = Fraction(0)
        for mu in range(2 * m - 2 * nu + 1):
            second += (
                (Fraction(1, 2 ** (2 * m + mu)) + (-1) ** mu)
                * binomial(4 * m - 2 * nu - mu - 1, 2 * m - 1)
                * binomial(2 * m - 1 + mu, 2 * m - 1)
            )
        total += (
            bernoulli(2 * nu) * bernoulli(8 * m - 2 * nu) * binomial(8 * m, 2 * nu) * (first + second)
        )
    return Fraction(2 ** (8 * m - 3), factorial(8 * m)) * total
