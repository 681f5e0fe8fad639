"""Reference closed forms of low-weight so(5) Witten zeta values.

Euler-sum parts use the plain text syntax of ``parse_combo``; powers of
zeta(2) are kept as separate rational coefficients.
"""

from fractions import Fraction
from math import factorial

WEIGHT3 = {
    (1, 0, 0, 2): "3/2*z(b1,2) + 1/16*z(3)",
    (0, 0, 1, 2): "-1/2*z(3) + 3*z(b1,2)",
    (0, 1, 0, 2): "5/4*z(3) - 3*z(b1,2)",
    (1, 0, 2, 0): "z(3)",
    (0, 1, 2, 0): "z(3)",
    (0, 1, 1, 1): "3/4*z(3)",
    (1, 1, 1, 0): "2*z(3)",
    (1, 0, 1, 1): "5/8*z(3)",
    (0, 0, 2, 1): "1/4*z(3)",
    (1, 1, 0, 1): "11/8*z(3)",
}

WEIGHT4 = {
    (0, 0, 2, 2): "3/8*z(4) - 4*z(b3,1)",
    (2, 1, 0, 1): "7/8*z(4) - z(b3,1)",
    (0, 1, 2, 1): "1/2*z(4) - 4*z(b3,1)",
    (0, 2, 0, 2): "1/8*z(4) + 4*z(b3,1)",
    (0, 2, 1, 1): "1/4*z(4) + 4*z(b3,1)",
    (1, 2, 0, 1): "3/4*z(4) + 2*z(b3,1)",
    (1, 0, 1, 2): "3/16*z(4) - z(b3,1)",
    (2, 0, 1, 1): "3/8*z(4) + z(b3,1)",
    (1, 1, 0, 2): "5/16*z(4) - z(b3,1)",
    (1, 1, 1, 1): "1/2*z(4) - 2*z(b3,1)",
    (0, 1, 0, 3): "17/24*z(4) - 7/3*z(b1,3)",
    (0, 0, 3, 1): "-1/4*z(4) + 4*z(b3,1)",
    (0, 0, 1, 3): "-7/12*z(4) + 7/3*z(b1,3)",
    (1, 0, 2, 1): "2*z(b3,1)",
    (1, 0, 3, 0): "1/4*z(4)",
    (0, 1, 3, 0): "1/4*z(4)",
    (0, 1, 1, 2): "1/8*z(4)",
    (2, 0, 2, 0): "3/4*z(4)",
    (0, 2, 2, 0): "3/4*z(4)",
    (2, 2, 0, 0): "5/2*z(4)",
    (2, 1, 1, 0): "5/4*z(4)",
    (1, 2, 1, 0): "5/4*z(4)",
    (2, 0, 0, 2): "9/32*z(4)",
    (1, 0, 0, 3): "-19/96*z(4) + 7/6*z(b1,3) - 1/2*z(b3,1)",
    (1, 1, 2, 0): "1/2*z(4)",
}

# weight six: (coefficient of zeta(2)^3, Euler-sum part, printed decimal)
WEIGHT6 = {
    (0, 2, 2, 2): (Fraction(1, 105), "0", "0.04238929428"),
    (2, 0, 2, 2): (Fraction(1, 210), "3/8*z(3,3) - 2/3*z(b3,3)", "0.03772580207"),
    (2, 2, 0, 2): (Fraction(4, 105), "-3/8*z(3,3) + 2/3*z(b3,3)", "0.15302602205"),
    (2, 2, 2, 0): (Fraction(8, 105), "0", "0.3391143543"),
    (1, 2, 2, 1): (Fraction(1, 30), "-3/4*z(3,3) + 4/3*z(b3,3)", "0.1153002199792"),
    (2, 1, 1, 2): (Fraction(1, 60), "0", "0.07418126500"),
    (1, 1, 2, 2): (Fraction(1, 84), "-3/8*z(3,3) + 2/3*z(b3,3)", "0.0364554628649"),
    (1, 2, 1, 2): (Fraction(3, 140), "-3/8*z(3,3) + 2/3*z(b3,3)", "0.0788447571142"),
    (2, 1, 2, 1): (Fraction(3, 140), "3/8*z(3,3) - 2/3*z(b3,3)", "0.1119070670077"),
    (2, 2, 1, 1): (Fraction(23, 420), "-3/8*z(3,3) + 2/3*z(b3,3)", "0.2272072869870"),
}

# m -> (c(m) as printed, printed decimal of c(m) pi^(8m), coefficient of zeta(2)^(4m))
WITTEN = {
    1: (Fraction(2 * 3, 5 * factorial(9)), "0.031377417381", Fraction(3, 700)),
    2: (Fraction(2**5 * 479, 5 * factorial(17)), "0.0007759700", Fraction(4311, 297797500)),
    3: (
        Fraction(2**7 * 5 * 43 * 19309, 3**2 * 7 * 13 * factorial(23)),
        "0.00002144010",
        Fraction(2490861, 45593675752625),
    ),
    4: (
        Fraction(2**8 * 13 * 241 * 64009163, 5 * 17 * factorial(31)),
        "0.000000595384",
        Fraction(138835874547, 670007833199392187500),
    ),
}
