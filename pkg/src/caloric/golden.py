"""Pinned regression values (computed with an independent symbolic integrator)."""

from fractions import Fraction

from .constructors import caloric_extension
from .ratpoly import Poly


def _x(n, i):
    return Poly.x(n, i)


def inhomogeneous_samples() -> list[tuple[str, Poly]]:
    """Caloric polynomials mixing several parabolic degrees."""
    x = _x(1, 1)
    t = Poly.t(1)
    x1, x2 = _x(2, 1), _x(2, 2)
    y1, y2, y3 = _x(3, 1), _x(3, 2), _x(3, 3)
    return [
        ("n1_quadratic_plus_linear", x * x + t.scale(2) + x),
        ("n1_cubic_quartic", caloric_extension(x**3) + caloric_extension(x**4) + 1),
        ("n2_mixed", caloric_extension(x1 * x1) + caloric_extension(x1 * x2**3) + x2),
        ("n2_sextic", caloric_extension(x1**4 * x2**2) + 3),
        ("n3_mixed", caloric_extension(y1 * y2 * y3) + caloric_extension(y3 * y3) + 1),
        ("n3_sextic", caloric_extension(y1**2 * y2**2 * y3**2) + y1),
    ]


# max over r in {1, 2, 4, ..., 1024} of the reverse-Poincare ratio
RP_INHOMOGENEOUS_MAX: dict[str, Fraction] = {
    "n1_quadratic_plus_linear": Fraction(315621451, 68157465000),
    "n1_cubic_quartic": Fraction(10497933, 1790750000000),
    "n2_mixed": Fraction(263221291, 1145000000000),
    "n2_sextic": Fraction(2405093, 106900000000000000),
    "n3_mixed": Fraction(1083609, 15400000000),
    "n3_sextic": Fraction(11812505880469, 3835700000000000000),
}

# min/max of dim P_d(R^n) / d^n over 1 <= d <= 20
ENVELOPE_BAND: dict[int, tuple[Fraction, Fraction]] = {
    1: (Fraction(21, 20), Fraction(2)),
    2: (Fraction(231, 400), Fraction(3)),
    3: (Fraction(1771, 8000), Fraction(4)),
}
