"""Alternating Euler sums of depth one and two, and rational combinations of them.

A term ``z(s1, s2)`` stands for the nested sum over ``m1 > m2 >= 1`` of
``x1^m1 x2^m2 / (m1^s1 m2^s2)``; the first argument belongs to the outer
(largest) index.  A negative sign is written with a ``b`` prefix in text
(``z(b1,2)``) and with an overline in LaTeX.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "BadDepth",
    "Combo",
    "DivergentTerm",
    "EulerTerm",
    "SignedArg",
    "combo_add",
    "combo_scale",
    "depth_of",
    "make_term",
    "parse_combo",
    "parse_term",
    "stuffle_product",
    "weight_of",
]


class DivergentTerm(ValueError):
    """The leading argument is (1, +1), so the series diverges."""


class BadDepth(ValueError):
    """Only depth one and depth two sums are represented."""


@dataclass(frozen=True, order=True)
class SignedArg:
    exponent: int
    sign: int = 1

    def __post_init__(self):
        if not isinstance(self.exponent, int) or self.exponent < 1:
            raise ValueError(f"exponent must be an integer >= 1, got {self.exponent!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    def __mul__(self, other: "SignedArg") -> "SignedArg":
        # index-wise merge used on the stuffle diagonal
        return SignedArg(self.exponent + other.exponent, self.sign * other.sign)

    @property
    def text(self) -> str:
        return f"b{self.exponent}" if self.sign < 0 else str(self.exponent)

    @property
    def latex(self) -> str:
        return rf"\overline{{{self.exponent}}}" if self.sign < 0 else str(self.exponent)


ArgLike = Union[SignedArg, int, tuple]


def _as_arg(a: ArgLike) -> SignedArg:
    if isinstance(a, SignedArg):
        return a
    if isinstance(a, int):
        return SignedArg(abs(a), -1 if a < 0 else 1)
    return SignedArg(*a)


@dataclass(frozen=True)
class EulerTerm:
    args: tuple[SignedArg, ...]

    def __post_init__(self):
        if len(self.args) not in (1, 2):
            raise BadDepth(f"depth must be 1 or 2, got {len(self.args)}")
        lead = self.args[0]
        if lead.exponent == 1 and lead.sign == 1:
            raise DivergentTerm(f"{self.key} has leading argument (1, +1)")

    @property
    def weight(self) -> int:
        return sum(a.exponent for a in self.args)

    @property
    def depth(self) -> int:
        return len(self.args)

    @property
    def key(self) -> str:
        return "z(" + ",".join(a.text for a in self.args) + ")"

    @property
    def latex(self) -> str:
        return r"\zeta(" + ",".join(a.latex for a in self.args) + ")"

    def sort_key(self) -> tuple:
        return (self.weight, self.depth, tuple((a.exponent, a.sign < 0) for a in self.args))

    def __lt__(self, other: "EulerTerm") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return self.key

    def __repr__(self) -> str:
        return f"EulerTerm({self.key})"


def make_term(args: Iterable[ArgLike]) -> EulerTerm:
    """Build a canonical term.

    Arguments may be :class:`SignedArg`, ``(exponent, sign)`` pairs, or signed
    integers where a negative value means a negative sign (``-1`` is 1-bar).
    """
    return EulerTerm(tuple(_as_arg(a) for a in args))


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class Combo(Mapping[EulerTerm, Fraction]):
    """Finite rational linear combination of Euler terms.

    Immutable; zero coefficients are never stored and iteration follows the
    canonical term order.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, items: Mapping[EulerTerm, object] | Iterable = ()):
        acc: dict[EulerTerm, Fraction] = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for term, c in pairs:
            acc[term] = acc.get(term, Fraction(0)) + _coerce(c)
        self._items = {t: acc[t] for t in sorted(acc) if acc[t] != 0}
        self._hash = None

    @classmethod
    def of(cls, term: EulerTerm | Iterable[ArgLike], coeff=1) -> "Combo":
        if not isinstance(term, EulerTerm):
            term = make_term(term)
        return cls({term: coeff})

    def __getitem__(self, term: EulerTerm) -> Fraction:
        return self._items[term]

    def __iter__(self) -> Iterator[EulerTerm]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, Combo):
            return self._items == other._items
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._items.items()))
        return self._hash

    def __add__(self, other: "Combo") -> "Combo":
        if not isinstance(other, Combo):
            return NotImplemented
        return Combo(list(self._items.items()) + list(other._items.items()))

    def __neg__(self) -> "Combo":
        return Combo({t: -c for t, c in self._items.items()})

    def __sub__(self, other: "Combo") -> "Combo":
        if not isinstance(other, Combo):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> "Combo":
        c = _coerce(c)
        if c == 0:
            return Combo()
        return Combo({t: c * v for t, v in self._items.items()})

    __rmul__ = __mul__

    @property
    def weights(self) -> set[int]:
        return {t.weight for t in self._items}

    @property
    def max_depth(self) -> int:
        return max((t.depth for t in self._items), default=0)

    def is_homogeneous(self) -> bool:
        return len(self.weights) <= 1

    # rendering

    def to_text(self) -> str:
        if not self._items:
            return "0"
        parts = []
        for i, (t, c) in enumerate(self._items.items()):
            mag = abs(c)
            body = t.key if mag == 1 else f"{mag}*{t.key}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_latex(self) -> str:
        if not self._items:
            return "0"
        parts = []
        for i, (t, c) in enumerate(self._items.items()):
            mag = abs(c)
            if mag == 1:
                coef = ""
            elif mag.denominator == 1:
                coef = str(mag.numerator)
            else:
                coef = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
            body = coef + t.latex
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json_obj(self) -> list[dict]:
        return [
            {"term": t.key, "num": str(c.numerator), "den": str(c.denominator)}
            for t, c in self._items.items()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: list[dict]) -> "Combo":
        return cls((parse_term(e["term"]), Fraction(int(e["num"]), int(e["den"]))) for e in obj)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Combo({self.to_text()})"


def combo_add(a: Combo, b: Combo) -> Combo:
    return a + b


def combo_scale(c, a: Combo) -> Combo:
    return a * c


def stuffle_product(a: ArgLike, b: ArgLike) -> Combo:
    """Expand z(a) * z(b) over the index sets m > n, n > m and m = n."""
    a, b = _as_arg(a), _as_arg(b)
    for factor in (a, b):
        make_term([factor])  # each factor must converge on its own
    return Combo([(make_term([a, b]), 1), (make_term([b, a]), 1), (make_term([a * b]), 1)])


def weight_of(x: EulerTerm | Combo):
    if isinstance(x, EulerTerm):
        return x.weight
    return x.weights


def depth_of(term: EulerTerm) -> int:
    return term.depth


_TERM_RE = re.compile(r"^\s*z\(\s*(b?\d+)\s*(?:,\s*(b?\d+)\s*)?\)\s*$")
_SUMMAND_RE = re.compile(r"([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?(z\([^)]*\))")


def _parse_arg(tok: str) -> SignedArg:
    if tok.startswith("b"):
        return SignedArg(int(tok[1:]), -1)
    return SignedArg(int(tok))


def parse_term(text: str) -> EulerTerm:
    """Inverse of :attr:`EulerTerm.key`."""
    m = _TERM_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse term {text!r}")
    return make_term([_parse_arg(g) for g in m.groups() if g is not None])


def parse_combo(text: str) -> Combo:
    """Parse the plain text rendering, e.g. ``3/2*z(b1,2) + 1/16*z(3)``."""
    stripped = text.strip()
    if stripped == "0":
        return Combo()
    pos, pairs = 0, []
    compact = stripped
    while pos < len(compact):
        m = _SUMMAND_RE.match(compact, pos)
        if not m or (pairs and not m.group(1)):
            raise ValueError(f"cannot parse combination {text!r} near position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        pairs.append((parse_term(m.group(3)), sign * coeff))
        pos = m.end()
        while pos < len(compact) and compact[pos] == " ":
            pos += 1
    if not pairs:
        raise ValueError(f"empty combination {text!r}")
    return Combo(pairs)
