"""High-precision evaluation with explicit absolute error bounds.

Euler sums are summed directly up to a cutoff ``N``; everything beyond is
handled by asymptotic expansions of the shifted sums

    S_+(a, n) = sum_{j>=0} (n+j)^-a           (Euler-Maclaurin)
    S_-(a, n) = sum_{j>=0} (-1)^j (n+j)^-a    (Boole summation)

whose remainder after any correction term is bounded in magnitude by that
term, because n^-a is completely monotone.

The raw so(5) double series is evaluated along a different route: the inner
sum over m is done exactly by partial fractions in m (Hurwitz zeta values and
harmonic numbers), and only the outer sum over n is truncated, with its tail
expanded in powers of 1/n and log(n)/n.
"""

from __future__ import annotations

import json
import logging
import math
import os
import threading
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator

import mpmath
from mpmath import mp, mpf

from .euler_terms import Combo, DivergentTerm, EulerTerm, SignedArg, make_term
from .exact_arith import bernoulli, binomial, rising
from .reducer import Divergent, ZetaSoArgs, violated_conditions

__all__ = [
    "ConstantCache",
    "EvalConfig",
    "PrecisionReal",
    "TargetUnreachable",
    "eval_combo",
    "eval_depth1",
    "eval_so_direct",
    "eval_term",
    "numeric_equal",
    "pi",
]

log = logging.getLogger(__name__)


class TargetUnreachable(RuntimeError):
    """The requested accuracy needs a cutoff beyond the configured budget."""


class _NeedLargerCutoff(Exception):
    pass


# -- values with error bounds ----------------------------------------------


def _bits(dps: int) -> int:
    return int(dps * 3.3219280948873626) + 8


@dataclass(frozen=True)
class PrecisionReal:
    """``value`` with the guarantee that the true number is within ``err``.

    ``prec`` is the binary working precision used for arithmetic on the
    value; each operation adds a rounding allowance to ``err``.
    """

    value: mpf
    err: mpf
    prec: int = field(default=113, compare=False)

    @classmethod
    def exact(cls, x, prec: int = 113) -> "PrecisionReal":
        with mp.workprec(prec):
            if isinstance(x, Fraction):
                v = mpf(x.numerator) / x.denominator
                e = abs(v) * mpf(2) ** (1 - prec) if x.denominator != 1 else mpf(0)
            else:
                v = mpf(x)
                e = mpf(0)
        return cls(v, e, prec)

    def _coerce(self, other) -> "PrecisionReal":
        if isinstance(other, PrecisionReal):
            return other
        return PrecisionReal.exact(other if isinstance(other, Fraction) else Fraction(other), self.prec)

    def _rounded(self, v: mpf, err: mpf, prec: int) -> "PrecisionReal":
        return PrecisionReal(v, err + abs(v) * mpf(2) ** (1 - prec), prec)

    def __add__(self, other) -> "PrecisionReal":
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        with mp.workprec(prec):
            return self._rounded(self.value + other.value, self.err + other.err, prec)

    __radd__ = __add__

    def __neg__(self) -> "PrecisionReal":
        # unary minus on an mpf rounds to the global precision
        with mp.workprec(self.prec):
            return PrecisionReal(-self.value, self.err, self.prec)

    def __sub__(self, other) -> "PrecisionReal":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "PrecisionReal":
        return self._coerce(other) - self

    def __mul__(self, other) -> "PrecisionReal":
        other = self._coerce(other)
        prec = max(self.prec, other.prec)
        with mp.workprec(prec):
            err = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
            return self._rounded(self.value * other.value, err, prec)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PrecisionReal":
        out = PrecisionReal.exact(1, self.prec)
        for _ in range(k):
            out = out * self
        return out

    def contains(self, x) -> bool:
        with mp.workprec(self.prec + 20):
            return abs(mpf(x) - self.value) <= self.err

    def decimal(self, digits: int) -> str:
        """``value`` rounded half-even to ``digits`` places after the point."""
        with mp.workprec(self.prec + 20):
            text = mpmath.nstr(self.value, digits + 25, min_fixed=-math.inf, max_fixed=math.inf)
        with localcontext() as ctx:
            ctx.prec = digits + len(text) + 10
            q = Decimal(text).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
        return f"{q:f}"

    def format(self, digits: int) -> str:
        return f"{self.decimal(digits)} +/- {float(self.err):.1e}"

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:
        return f"PrecisionReal({mpmath.nstr(self.value, 20)}, err={float(self.err):.2e})"


def numeric_equal(a: PrecisionReal, b: PrecisionReal) -> bool:
    """True iff the two enclosures overlap."""
    prec = max(a.prec, b.prec)
    with mp.workprec(prec):
        return abs(a.value - b.value) <= a.err + b.err


@dataclass(frozen=True)
class EvalConfig:
    """Accuracy request for an evaluation.

    ``digits`` is the target absolute accuracy 10^-digits; arithmetic runs at
    ``digits + guard`` decimal places.  ``cutoff`` fixes the direct-summation
    length (chosen automatically when None), ``max_cutoff`` is the budget for
    automatic enlargement.
    """

    digits: int = 30
    guard: int = 15
    cutoff: int | None = None
    max_cutoff: int = 4000

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.guard < 10:
            raise ValueError("guard digits must be >= 10")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    @property
    def prec(self) -> int:
        return _bits(self.dps)

    def initial_cutoff(self) -> int:
        return self.cutoff or max(12, self.digits // 2 + 6)


# -- asymptotic pieces -----------------------------------------------------


@lru_cache(maxsize=None)
def _correction(a: int, sign: int, j: int) -> tuple[Fraction, int]:
    """j-th correction term (coefficient, exponent) of S_sign(a, n)."""
    if sign > 0:
        return bernoulli(2 * j) / math.factorial(2 * j) * rising(a, 2 * j - 1), a + 2 * j - 1
    k = 2 * j - 1
    return (2 ** (k + 1) - 1) * bernoulli(k + 1) / math.factorial(k + 1) * rising(a, k), a + k


def _leading(a: int, sign: int) -> list[tuple[Fraction, int]]:
    if sign > 0:
        return [(Fraction(1, a - 1), a - 1), (Fraction(1, 2), a)]
    return [(Fraction(1, 2), a)]


def _expansion(a: int, sign: int, N: int, tol: mpf, extra: int = 0) -> tuple[list, mpf, int]:
    """Truncated expansion of S_sign(a, n) valid for every n >= N.

    Returns (terms, K, E): terms are (coefficient, exponent) pairs and the
    remainder is at most K n^-E.  Truncation happens once
    K N^-(E+extra) <= tol; ``extra`` lets callers account for a further sum.
    """
    terms = list(_leading(a, sign))
    Nm = mpf(N)
    prev = None
    for j in range(1, 400):
        c, e = _correction(a, sign, j)
        terms.append((c, e))
        size = abs(mpf(c.numerator) / c.denominator) * Nm ** (-(e + extra))
        if size <= tol:
            return terms, abs(mpf(c.numerator) / c.denominator), e
        if prev is not None and size > prev and j > 3:
            raise _NeedLargerCutoff
        prev = size
    raise _NeedLargerCutoff


def _frac(c: Fraction) -> mpf:
    return mpf(c.numerator) / c.denominator


def _tail1(e: int, sign: int, N: int, tol: mpf) -> tuple[mpf, mpf]:
    """sum_{k>=N} sign^k k^-e with error bound (working precision is ambient)."""
    terms, K, E = _expansion(e, sign, N, tol)
    Nm = mpf(N)
    val = mpf(0)
    for c, ex in terms:
        val += _frac(c) * Nm ** (-ex)
    if sign < 0 and N % 2:
        val = -val
    return val, K * Nm ** (-E)


def _power_tail_bound(K: mpf, E: int, N: int) -> mpf:
    """Upper bound of sum_{n>=N} K n^-E for E > 1."""
    Nm = mpf(N)
    return K * (Nm ** (-E) + Nm ** (1 - E) / (E - 1))


def _slack(value: mpf, dps: int, ops: int) -> mpf:
    return (abs(value) + 1) * ops * mpf(10) ** (-dps)


def _admissible(arg: SignedArg):
    if arg.exponent == 1 and arg.sign == 1:
        raise DivergentTerm("z(1) diverges")


def _depth1_raw(e: int, sign: int, N: int, tol: mpf) -> tuple[mpf, mpf]:
    head = mpf(0)
    for k in range(1, N):
        t = mpf(k) ** (-e)
        head += -t if (sign < 0 and k % 2) else t
    tail, err = _tail1(e, sign, N, tol)
    return head + tail, err


def _depth2_raw(a: int, x: int, b: int, y: int, N: int, tol: mpf) -> tuple[mpf, mpf]:
    # Part A: inner index n < N, outer k >= n+1, split at k = N.
    inner_abs = mpf(0)
    inner = mpf(0)
    finite = mpf(0)
    for k in range(1, N):
        kt = mpf(k) ** (-a)
        if x < 0 and k % 2:
            kt = -kt
        finite += kt * inner
        nt = mpf(k) ** (-b)
        inner_abs += nt
        inner += -nt if (y < 0 and k % 2) else nt
    outer_tail, outer_err = _tail1(a, x, N, tol / (inner_abs + 1))
    val = finite + outer_tail * inner
    err = outer_err * inner_abs

    # Part B: n >= N; sum_{k>n} x^k k^-a = x^n (S_x(a, n) - n^-a).
    xy = x * y
    terms, K, E = _expansion(a, x, N, tol / 4, extra=b - 1)
    terms.append((Fraction(-1), a))
    err += _power_tail_bound(K, b + E, N)
    share = tol / (2 * len(terms))
    for c, ex in terms:
        cm = _frac(c)
        tv, te = _tail1(b + ex, xy, N, share / (abs(cm) + 1))
        val += cm * tv
        err += abs(cm) * te
    return val, err


def _eval_raw(term: EulerTerm, cfg: EvalConfig, N: int) -> tuple[mpf, mpf]:
    tol = mpf(10) ** (-cfg.digits) / 10
    if term.depth == 1:
        (s,) = term.args
        _admissible(s)
        return _depth1_raw(s.exponent, s.sign, N, tol)
    outer, inner = term.args
    _admissible(outer)
    return _depth2_raw(outer.exponent, outer.sign, inner.exponent, inner.sign, N, tol)


@lru_cache(maxsize=4096)
def _eval_term_cached(term: EulerTerm, cfg: EvalConfig) -> PrecisionReal:
    N = cfg.initial_cutoff()
    with mp.workdps(cfg.dps):
        while True:
            try:
                val, err = _eval_raw(term, cfg, N)
                break
            except _NeedLargerCutoff:
                if N * 2 > cfg.max_cutoff:
                    raise TargetUnreachable(f"{term.key} at {cfg.digits} digits") from None
                N *= 2
        err += _slack(val, cfg.dps, 4 * N + 400)
        return PrecisionReal(+val, err, cfg.prec)


def eval_term(term: EulerTerm, cfg: EvalConfig | None = None) -> PrecisionReal:
    """Value of an Euler sum of depth 1 or 2 with error at most 10^-digits."""
    return _eval_term_cached(term, cfg or EvalConfig())


def eval_depth1(arg: SignedArg | tuple | int, cfg: EvalConfig | None = None) -> PrecisionReal:
    return eval_term(make_term([arg]), cfg)


# -- constant cache --------------------------------------------------------

CACHE_VERSION = 1
CACHE_ENV = "SO5ZETA_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(Path.home(), ".cache")
    return Path(base) / "so5zeta"


class ConstantCache:
    """Versioned JSON store of evaluated Euler sums keyed by (term, digits).

    A missing, corrupt or foreign-version file is treated as empty.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path else default_cache_dir() / "constants.json"
        self._lock = threading.Lock()
        self._entries: dict[str, dict] = {}
        self._dirty = False
        self._load()

    def _load(self):
        try:
            data = json.loads(self.path.read_text())
            if data.get("version") != CACHE_VERSION or not isinstance(data.get("entries"), dict):
                raise ValueError("version mismatch")
            for k, v in data["entries"].items():
                mpf(v["value"]), mpf(v["err"])
            self._entries = data["entries"]
        except FileNotFoundError:
            self._entries = {}
        except Exception as exc:  # noqa: BLE001 - any damage means a cold start
            log.warning("ignoring constant cache %s: %s", self.path, exc)
            self._entries = {}

    @staticmethod
    def _key(term: EulerTerm, digits: int) -> str:
        return f"{term.key}|{digits}"

    def get(self, term: EulerTerm, cfg: EvalConfig) -> PrecisionReal | None:
        entry = self._entries.get(self._key(term, cfg.digits))
        if entry is None:
            return None
        with mp.workdps(cfg.dps):
            value = mpf(entry["value"])
            # allowance for the decimal rendering of the stored value
            err = mpf(entry["err"]) + abs(value) * mpf(10) ** (-(cfg.dps + 3))
            return PrecisionReal(value, err, cfg.prec)

    def put(self, term: EulerTerm, cfg: EvalConfig, x: PrecisionReal):
        with mp.workprec(x.prec):
            entry = {
                "value": mpmath.nstr(x.value, cfg.dps + 5, strip_zeros=False),
                "err": mpmath.nstr(x.err, 8),
            }
        with self._lock:
            self._entries[self._key(term, cfg.digits)] = entry
            self._dirty = True

    def __len__(self) -> int:
        return len(self._entries)

    def save(self):
        if not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(".tmp")
        with self._lock:
            payload = {"version": CACHE_VERSION, "entries": dict(sorted(self._entries.items()))}
            tmp.write_text(json.dumps(payload, indent=0))
            os.replace(tmp, self.path)
            self._dirty = False


def eval_combo(c: Combo, cfg: EvalConfig | None = None, cache: ConstantCache | None = None) -> PrecisionReal:
    """Sum of coefficient * term value with the error bounds added up."""
    cfg = cfg or EvalConfig()
    total = PrecisionReal.exact(0, cfg.prec)
    for term, coeff in c.items():
        x = cache.get(term, cfg) if cache is not None else None
        if x is None:
            x = eval_term(term, cfg)
            if cache is not None:
                cache.put(term, cfg, x)
        total = total + x * coeff
    return total


def pi(digits: int = 30) -> PrecisionReal:
    cfg = EvalConfig(digits)
    with mp.workdps(cfg.dps):
        v = +mp.pi
    return PrecisionReal(v, abs(v) * mpf(2) ** (1 - cfg.prec), cfg.prec)


# -- direct evaluation of the double series --------------------------------


def _series_coeffs(d: Fraction, e: int, order: int) -> list[Fraction]:
    """Taylor coefficients in u of (d + u)^-e up to u^order."""
    return [Fraction((-1) ** k * binomial(e + k - 1, k)) / d ** (e + k) for k in range(order + 1)]


@lru_cache(maxsize=None)
def _inner_partial_fractions(s1: int, s3: int, s4: int) -> dict[int, list[Fraction]]:
    """m^-s1 (m+1)^-s3 (m+2)^-s4 = sum_p sum_j c[p][j-1] (m+p)^-j, p in {0,1,2}."""
    exps = {0: s1, 1: s3, 2: s4}
    out = {}
    for p, e in exps.items():
        if e == 0:
            continue
        series = [Fraction(1)] + [Fraction(0)] * (e - 1)
        for q, eq in exps.items():
            if q == p or eq == 0:
                continue
            factor = _series_coeffs(Fraction(q - p), eq, e - 1)
            series = [sum(series[i] * factor[k - i] for i in range(k + 1)) for k in range(e)]
        # c_{p,j} is the coefficient of u^(e-j)
        out[p] = [series[e - j] for j in range(1, e + 1)]
    return out


def _direct_raw(args: ZetaSoArgs, N: int, tol: mpf) -> tuple[mpf, mpf]:
    s1, s2, s3, s4 = args
    wi = s1 + s3 + s4  # degree of the inner rational function
    pf = _inner_partial_fractions(s1, s3, s4)
    jmax = max(s1, s3, s4)
    zeta_j = {j: mpmath.zeta(j) for j in range(2, jmax + 1)}
    c = {p: [_frac(v) for v in coeffs] for p, coeffs in pf.items()}

    def coef(p: int, j: int) -> mpf:
        return c[p][j - 1] if p in c and j <= len(c[p]) else mpf(0)

    # head: exact inner sums for n < N
    h1 = {j: mpf(0) for j in range(1, jmax + 1)}  # H_n^(j)
    h2 = {j: mpf(0) for j in range(1, jmax + 1)}  # H_{2n}^(j)
    head = mpf(0)
    for n in range(1, N):
        for j in h1:
            h1[j] += mpf(n) ** (-j)
            h2[j] += mpf(2 * n - 1) ** (-j) + mpf(2 * n) ** (-j)
        nm = mpf(n)
        F = -(coef(1, 1) * h1[1] + coef(2, 1) * h2[1]) * nm ** (1 - wi)
        for j in range(2, jmax + 1):
            F += (
                coef(0, j) * zeta_j[j]
                + coef(1, j) * (zeta_j[j] - h1[j])
                + coef(2, j) * (zeta_j[j] - h2[j])
            ) * nm ** (j - wi)
        head += F * nm ** (-s2)

    # tail: n >= N, expand n^-s2 F(n) in n^-k and n^-k log n
    powers: dict[int, mpf] = {}
    logs: dict[int, mpf] = {}
    bound = mpf(0)

    def add(k: int, v: mpf):
        powers[k] = powers.get(k, mpf(0)) + v

    share = tol / (4 * (3 * jmax + 2))
    for j in range(2, jmax + 1):
        shift = j - wi - s2  # G contains n^shift * (...)
        add(-shift, coef(0, j) * zeta_j[j])
        for p, scale in ((1, 1), (2, 2)):
            cj = coef(p, j)
            if cj == 0:
                continue
            # zeta(j, scale*n + 1) = S_+(j, scale*n) - (scale*n)^-j
            # truncation is checked at scale*N; rescale so the bound summed from N meets share
            tol_j = share / abs(cj) * mpf(scale) ** (shift + 1)
            terms, K, E = _expansion(j, 1, scale * N, tol_j, extra=-shift - 1)
            terms = terms + [(Fraction(-1), j)]
            for cc, ex in terms:
                add(ex - shift, cj * _frac(cc) * mpf(scale) ** (-ex))
            bound += _power_tail_bound(abs(cj) * K * mpf(scale) ** (-E), E - shift, N)

    # harmonic numbers: H_x = log x + gamma + 1/(2x) - sum_k B_2k / (2k x^2k)
    shift = 1 - wi - s2
    for p, scale in ((1, 1), (2, 2)):
        cj = -coef(p, 1)
        if cj == 0:
            continue
        logs[-shift] = logs.get(-shift, mpf(0)) + cj
        add(-shift, cj * (mp.euler + mp.log(scale)))
        add(1 - shift, cj / (2 * scale))
        prev = None
        for k in range(1, 400):
            ck = _frac(bernoulli(2 * k)) / (2 * k) * mpf(scale) ** (-2 * k)
            add(2 * k - shift, -cj * ck)
            size = abs(cj * ck) * mpf(N) ** (-2 * k - (-shift) + 1)
            if size <= share:
                bound += _power_tail_bound(abs(cj * ck), 2 * k - shift, N)
                break
            if prev is not None and size > prev and k > 3:
                raise _NeedLargerCutoff
            prev = size
        else:
            raise _NeedLargerCutoff

    tail = mpf(0)
    for k, v in powers.items():
        if v == 0:
            continue
        if k <= 1:
            raise AssertionError(f"non-summable tail power n^-{k}")
        tail += v * mpmath.zeta(k, N)
    for k, v in logs.items():
        if v == 0:
            continue
        tail -= v * mpmath.zeta(k, N, 1)
    return head + tail, bound


def eval_so_direct(args, target_err: float = 1e-8, cutoff: int | None = None,
                   max_cutoff: int = 4000) -> PrecisionReal:
    """Evaluate the so(5) double series itself, independent of ``reduce_so``."""
    args = ZetaSoArgs(*args)
    bad = violated_conditions(args)
    if bad:
        raise Divergent(f"zeta_so{args} diverges: violates {', '.join(bad)}")
    digits = max(1, math.ceil(-math.log10(target_err)))
    dps = digits + 15
    N = cutoff or min(max(10, digits // 2 + 6), max_cutoff)
    with mp.workdps(dps):
        tol = mpf(target_err) / 4
        while True:
            try:
                val, err = _direct_raw(args, N, tol)
                break
            except _NeedLargerCutoff:
                if N * 2 > max_cutoff:
                    raise TargetUnreachable(f"zeta_so{args} at {target_err:g}") from None
                N *= 2
        err += _slack(val, dps, 40 * N + 400)
        if err > target_err:
            raise TargetUnreachable(f"zeta_so{args}: bound {float(err):.2e} exceeds {target_err:g}")
        return PrecisionReal(+val, err, _bits(dps))
