"""Exact integer and rational helpers.

Rationals are plain :class:`fractions.Fraction` values; they are always stored
in lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

__all__ = ["BigRational", "bernoulli", "binomial", "factorial", "rising"]

BigRational = Fraction

_bern: list[Fraction] = [Fraction(1)]
_bern_lock = threading.Lock()


def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative n, k; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return math.factorial(n)


def rising(a: int, k: int) -> int:
    """Pochhammer symbol (a)_k = a (a+1) ... (a+k-1)."""
    out = 1
    for i in range(k):
        out *= a + i
    return out


def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with B_1 = -1/2.

    Values come from the recurrence sum_{k<=n} C(n+1, k) B_k = 0 and are
    memoized; concurrent callers may extend the table, each entry is only
    appended once.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n < len(_bern):
        return _bern[n]
    with _bern_lock:
        while len(_bern) <= n:
            m = len(_bern)
            if m > 1 and m % 2 == 1:
                _bern.append(Fraction(0))
                continue
            s = sum(math.comb(m + 1, k) * _bern[k] for k in range(m) if _bern[k])
            _bern.append(-s / (m + 1))
    return _bern[n]
