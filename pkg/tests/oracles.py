"""Independent brute-force oracles used across the test suite.

Everything here is deliberately naive: exhaustive enumeration and symbolic
series expansion, sharing no code path with the library implementations
they check.
"""

from fractions import Fraction
from itertools import product


def all_code_values(terms):
    """Map value -> list of digit tuples over every {-1,0,1}^K assignment."""
    out = {}
    for digits in product((-1, 0, 1), repeat=len(terms)):
        v = sum(d * q for d, q in zip(digits, terms))
        out.setdefault(v, []).append(digits)
    return out


def positive_code_sum(terms, bound, u_values, skip_first_index=False):
    """Sum u[value] * 2**-(nonzero count) over positive-top codes, value <= bound.

    Enumerates all 3**K digit strings directly.
    """
    total = Fraction(0) if isinstance(u_values[1], Fraction) else 0.0
    for digits in product((-1, 0, 1), repeat=len(terms)):
        nz = [d for d in digits if d]
        if not nz:
            continue
        top = next(d for d in reversed(digits) if d)
        if top != 1:
            continue
        if skip_first_index and digits[0] != 0:
            continue
        v = sum(d * q for d, q in zip(digits, terms))
        if not 1 <= v <= bound:
            continue
        total += u_values[v] * Fraction(1, 2 ** len(nz)) \
            if isinstance(u_values[1], Fraction) \
            else float(u_values[v]) / 2 ** len(nz)
    return total


def renewal_series_oracle(masses, count):
    """First ``count`` renewal values via symbolic inversion of 1 - f(s).

    ``masses`` lists f_1, f_2, ... as Fractions; the expansion of
    1/(1 - sum f_n s^n) is done with sympy, independently of the
    convolution recursion under test.
    """
    import sympy

    s = sympy.symbols("s")
    f = sum(sympy.Rational(m.numerator, m.denominator) * s ** (n + 1)
            for n, m in enumerate(masses))
    series = sympy.series(1 / (1 - f), s, 0, count + 1).removeO()
    poly = sympy.Poly(series, s)
    return [Fraction(int(poly.coeff_monomial(s ** n).p),
                     int(poly.coeff_monomial(s ** n).q))
            if poly.coeff_monomial(s ** n) != 0 else Fraction(0)
            for n in range(count + 1)]
