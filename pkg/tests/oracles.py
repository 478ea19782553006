"""Independent oracles shared by several test modules."""

from fractions import Fraction

import sympy


def sigma_density_oracle(xo, qo):
    """``x / sigma(e^x)`` as rows ``[x^i] -> [q^d]`` built from the product formula."""
    x, q = sympy.symbols("x q")

    def trunc(expr):
        expr = sympy.expand(expr)
        poly = sympy.Poly(expr, x, q)
        return sum(c * x ** i * q ** d for (i, d), c in poly.terms() if i <= xo + 1 and d <= qo)

    def taylor(f):
        return sum(sympy.diff(f, x, i).subs(x, 0) / sympy.factorial(i) * x ** i for i in range(xo + 2))

    ep, em = taylor(sympy.exp(x)), taylor(sympy.exp(-x))
    # sigma / x truncated, then inverted as a power series
    sig = sympy.expand(taylor(sympy.exp(x / 2) - sympy.exp(-x / 2)) / x)
    for k in range(1, qo + 1):
        inv_sq = sum((n + 1) * q ** (k * n) for n in range(qo // k + 1))
        sig = trunc(sig * (1 - q ** k * ep) * (1 - q ** k * em) * inv_sq)
    # invert 1 + rest by the geometric series
    rest = sympy.expand(sig - 1)
    inv, power = sympy.Integer(1), sympy.Integer(1)
    for _ in range(xo + qo + 1):
        power = trunc(-power * rest)
        inv += power
    poly = sympy.Poly(sympy.expand(inv), x, q)
    table = [[Fraction(0)] * (qo + 1) for _ in range(xo + 1)]
    for (i, d), c in poly.terms():
        if i <= xo and d <= qo:
            table[i][d] = Fraction(int(c.p), int(c.q))
    return table
