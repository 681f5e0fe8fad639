"""Exact reduction and high-precision evaluation of so(5) Witten zeta values."""

from .euler_terms import Combo, EulerTerm, SignedArg, make_term, stuffle_product
from .exact_arith import bernoulli, binomial, factorial
from .numeric import EvalConfig, PrecisionReal, eval_combo, eval_so_direct, eval_term
from .reducer import ZetaSoArgs, converges_mt, converges_so, reduce_mt2, reduce_so, witten_c

__all__ = [
    "Combo",
    "EulerTerm",
    "EvalConfig",
    "PrecisionReal",
    "SignedArg",
    "ZetaSoArgs",
    "bernoulli",
    "binomial",
    "converges_mt",
    "converges_so",
    "eval_combo",
    "eval_so_direct",
    "eval_term",
    "factorial",
    "make_term",
    "reduce_mt2",
    "reduce_so",
    "stuffle_product",
    "witten_c",
]

__version__ = "0.1.0"
