import itertools
import math
import random
from fractions import Fraction

import mpmath
import pytest

from so5zeta.cli import tuples_of_weight, verify_row
from so5zeta.euler_terms import Combo, make_term, parse_combo
from so5zeta.numeric import EvalConfig, eval_combo, eval_so_direct, numeric_equal, pi
from so5zeta.reducer import (
    Divergent,
    converges_mt,
    converges_so,
    exceptional,
    partial_fraction2,
    reduce_mt2,
    reduce_signed_mt2,
    reduce_so,
    reduce_sum_n_m2n,
    reduce_tail_limit,
    violated_conditions,
    witten_c,
)

CFG = EvalConfig(20)


def z(*args):
    return Combo.of(make_term(args))


def value(c, digits=20):
    return eval_combo(c, EvalConfig(digits))


@pytest.mark.parametrize(
    "args,ok",
    [((1, 0, 0, 2), True), ((2, 0, 0, 0), False), ((0, 0, 2, 0), False), ((0, 0, 0, 3), True), ((1, 1, 1, 0), True)],
)
def test_converges_so(args, ok):
    assert converges_so(args) is ok


def test_violated_names():
    assert violated_conditions((2, 0, 0, 0)) == ["s2+s3+s4>1", "s1+s2+s3+s4>2"]
    with pytest.raises(ValueError):
        converges_so((1, -1, 2, 2))


@pytest.mark.parametrize("args,ok", [((2, 2, 2), True), ((0, 0, 2), False), ((1, 1, 1), True), ((1, 0, 1), False)])
def test_converges_mt(args, ok):
    assert converges_mt(args) is ok


def test_exceptional():
    assert exceptional((0, 0, 0, 3)) and exceptional((0, 0, 3, 0)) and exceptional((0, 0, 5, 0))
    assert not exceptional((0, 0, 2, 2))
    assert not exceptional((1, 0, 0, 2))


def test_partial_fraction_examples():
    assert partial_fraction2(1, 1).evaluate(1, 1) == 1
    pf = partial_fraction2(2, 1)
    parts = sorted(Fraction(t.coeff) / (3**t.sum_power * (1 if t.other == 1 else 2) ** t.other_power) for t in pf)
    assert parts == sorted([Fraction(1, 18), Fraction(1, 3), Fraction(1, 9)])
    assert pf.evaluate(1, 2) == Fraction(1, 2)


def test_partial_fraction_identity_random():
    rng = random.Random(2024)
    for n1, n2 in itertools.product(range(1, 7), repeat=2):
        pf = partial_fraction2(n1, n2)
        for _ in range(100):
            x1 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            x2 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50))
            if x1 + x2 == 0:
                continue
            assert pf.evaluate(x1, x2) == 1 / (x1**n1 * x2**n2)


def test_mt_examples():
    assert reduce_mt2(0, 0, 4) == z(3) - z(4)
    assert reduce_mt2(0, 3, 4) == z(4, 3)
    mt222 = value(reduce_mt2(2, 2, 2), 25)
    target = Fraction(8, 105) * (pi(25) ** 6 * Fraction(1, 216))
    assert numeric_equal(mt222, target)
    with pytest.raises(Divergent):
        reduce_mt2(0, 0, 2)


def test_mt_stuffle_case():
    assert reduce_mt2(2, 3, 0) == parse_combo("z(5) + z(2,3) + z(3,2)")


def test_mt_symmetry():
    for a, b, c in itertools.product(range(0, 5), range(0, 5), range(1, 4)):
        if not converges_mt((a, b, c)):
            continue
        assert numeric_equal(value(reduce_mt2(a, b, c)), value(reduce_mt2(b, a, c)))


def test_signed_mt_against_summation():
    # x = -1 on m: sum (-1)^m / (m n (m+n)^2), checked against a direct double sum
    c = reduce_signed_mt2(1, 1, 2, -1, 1)
    with mpmath.workdps(20):
        brute = mpmath.nsum(lambda m, n: (-1) ** int(m) / (m * n * (m + n) ** 2), [1, mpmath.inf], [1, mpmath.inf])
    assert abs(float(value(c).value) - float(brute)) < 1e-9


def test_sum_n_m2n_examples():
    assert reduce_sum_n_m2n(1, 2) == parse_combo("z(2,1) + z(2,b1)")
    assert reduce_sum_n_m2n(2, 3) == parse_combo("2*z(3,2) + 2*z(3,b2)")


def test_tail_limit_examples():
    assert reduce_tail_limit(2) == parse_combo("-z(3) - 2*z(b3) - z(2,1) - 2*z(b2,1)")
    assert reduce_tail_limit(3) == parse_combo("-3*z(4) - 4*z(b4) - 3*z(3,1) - 4*z(b3,1)")


def test_tail_limit_square_partial_sums():
    # S(N) = L + (a log N + b) / N; fit L from three cutoffs
    cutoffs = [10_000, 30_000, 100_000]
    harmonic = [0.0]
    for k in range(1, 3 * cutoffs[-1] + 1):
        harmonic.append(harmonic[-1] + 1.0 / k)
    sums = [
        math.fsum(((harmonic[N + 2 * n] - harmonic[2 * n]) - (harmonic[N + n] - harmonic[n])) / n**2 for n in range(1, N + 1))
        for N in cutoffs
    ]
    A = mpmath.matrix([[1, math.log(N) / N, 1 / N] for N in cutoffs])
    limit = mpmath.lu_solve(A, mpmath.matrix(sums))[0]
    assert abs(limit - value(reduce_tail_limit(2)).value) < 1e-7


@pytest.mark.parametrize("s", range(3, 9))
def test_exceptional_closed_forms(s):
    assert reduce_so((0, 0, s, 0)) == z(s - 1) - z(s)
    assert reduce_so((0, 0, 0, s)) == (z(s - 1) - z(s) * (1 + Fraction(1, 2**s))) * Fraction(1, 2)


def test_reduce_examples():
    assert reduce_so((0, 0, 0, 3)).to_text() == "1/2*z(2) - 9/16*z(3)"
    assert numeric_equal(value(reduce_so((1, 0, 0, 2)), 15), value(parse_combo("3/2*z(b1,2) + 1/16*z(3)"), 15))
    assert numeric_equal(value(reduce_so((0, 1, 1, 1))), value(z(3) * Fraction(3, 4)))
    v = value(reduce_so((2, 1, 1, 2)))
    assert numeric_equal(v, pi(20) ** 6 * Fraction(1, 12960))


def test_divergent_input():
    with pytest.raises(Divergent, match="s2\\+s3\\+s4>1"):
        reduce_so((2, 0, 0, 0))


def test_structure_invariants():
    for w in range(3, 10):
        for args in tuples_of_weight(w):
            c = reduce_so(args)
            assert c.max_depth <= 2
            for t in c:
                assert not (t.args[0].exponent == 1 and t.args[0].sign == 1)
            off = [t for t in c if t.weight != w]
            if exceptional(args):
                assert len(off) == 1 and off[0].depth == 1 and off[0].weight == w - 1
            else:
                assert not off


def test_deterministic_output():
    a = [reduce_so(t).to_text() for t in tuples_of_weight(6)]
    b = [reduce_so(t).to_text() for t in tuples_of_weight(6)]
    assert a == b


def test_master_property_up_to_weight_7():
    rows = [verify_row(t, 1e-8, 20) for w in range(3, 8) for t in tuples_of_weight(w)]
    assert len(rows) == 12 + 27 + 48 + 76 + 112
    assert all(r.status == "pass" for r in rows), [r.args for r in rows if r.status != "pass"]


def test_direct_independent_spot_checks():
    for args in [(1, 1, 1, 1), (0, 1, 0, 3), (2, 0, 3, 1)]:
        assert numeric_equal(value(reduce_so(args)), eval_so_direct(args, 1e-10))


def test_witten_c_values():
    f = math.factorial
    assert witten_c(1) == Fraction(2 * 3, 5 * f(9)) == Fraction(1, 302400)
    assert witten_c(2) == Fraction(2**5 * 479, 5 * f(17))
    assert witten_c(3) == Fraction(2**7 * 5 * 43 * 19309, 3**2 * 7 * 13 * f(23))
    with pytest.raises(ValueError):
        witten_c(0)


def test_witten_consistency():
    direct = eval_so_direct((2, 2, 2, 2), 1e-10)
    assert abs(float(direct.value) - float((pi(20) ** 8 * witten_c(1)).value)) < 1e-8
