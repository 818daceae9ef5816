"""Independent sympy oracles: symbolic differentiation and integration."""

from fractions import Fraction

import sympy as sp


def symbols(n):
    xs = sp.symbols(f"x1:{n + 1}")
    return xs, sp.Symbol("t")


def to_sympy(p):
    xs, t = symbols(p.n)
    expr = sp.Integer(0)
    for mono, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator) * t**mono.m
        for xi, a in zip(xs, mono.alpha):
            term *= xi**a
        expr += term
    return expr


def to_fraction(value):
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def box_integral(expr, n, r):
    xs, t = symbols(n)
    r = sp.Rational(r.numerator, r.denominator) if isinstance(r, Fraction) else sp.Rational(r)
    out = expr
    for xi in xs:
        out = sp.integrate(out, (xi, -r, r))
    return to_fraction(sp.integrate(out, (t, -r**2, 0)))


def rp_ratio(p, r):
    xs, t = symbols(p.n)
    u = to_sympy(p)
    r = Fraction(r)
    grad = sum(sp.diff(u, xi) ** 2 for xi in xs)
    ut = sp.diff(u, t) ** 2
    inner = r / 10
    num = r**2 * box_integral(sp.expand(grad), p.n, inner) + r**4 * box_integral(sp.expand(ut), p.n, inner)
    return num / box_integral(sp.expand(u**2), p.n, r)
