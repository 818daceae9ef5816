"""Exact sparse polynomials in x_1..x_n and t with the parabolic grading.

Coefficients are :class:`fractions.Fraction`; ``t`` counts as degree two.
Polys are immutable and kept in canonical form (no zero coefficients), so
structural equality is mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

Rational = Fraction


class Monomial(NamedTuple):
    alpha: tuple[int, ...]
    m: int = 0

    @property
    def spatial_degree(self) -> int:
        return sum(self.alpha)

    @property
    def parabolic_degree(self) -> int:
        return sum(self.alpha) + 2 * self.m


def monomial_key(mono: Monomial) -> tuple:
    """Graded-lex sort key: parabolic degree, then alpha descending, then m."""
    return (mono.parabolic_degree, tuple(-a for a in mono.alpha), mono.m)


class _ZeroDegree:
    """Degree marker of the zero polynomial; compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self


ZERO_DEGREE = _ZeroDegree()


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or an integer. Decimals and floats are rejected."""
    if isinstance(text, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot read a rational from {type(text).__name__}")
    s = text.strip()
    if any(ch in s for ch in ".eE") or s.lower() in ("inf", "nan"):
        raise ValueError(f"not an exact rational: {text!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


class Poly:
    """Polynomial in ``n`` spatial variables and time over the rationals."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for mono, coef in items:
            if not isinstance(mono, Monomial):
                mono = Monomial(tuple(mono[0]), mono[1])
            if len(mono.alpha) != n:
                raise ValueError(f"exponent vector {mono.alpha} does not have length {n}")
            if mono.m < 0 or min(mono.alpha, default=0) < 0:
                raise ValueError(f"negative exponent in {mono}")
            acc[mono] = acc.get(mono, 0) + Fraction(coef)
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Poly":
        # terms already canonical: Monomial keys, nonzero Fraction values
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c=1) -> "Poly":
        c = Fraction(c)
        return cls._raw(n, {Monomial((0,) * n, 0): c} if c else {})

    @classmethod
    def x(cls, n: int, i: int) -> "Poly":
        """The coordinate x_i (1-based)."""
        _check_axis(n, i)
        alpha = [0] * n
        alpha[i - 1] = 1
        return cls._raw(n, {Monomial(tuple(alpha), 0): Fraction(1)})

    @classmethod
    def t(cls, n: int) -> "Poly":
        return cls._raw(n, {Monomial((0,) * n, 1): Fraction(1)})

    @classmethod
    def monomial(cls, mono: Monomial, coef=1) -> "Poly":
        return cls(len(mono.alpha), {mono: coef})

    # basic protocol -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (graded-lex) order."""
        return sorted(self._terms.items(), key=lambda kv: monomial_key(kv[0]))

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.n}, {to_string(self)!r})"

    def __str__(self):
        return to_string(self)

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for mono, c in other._terms.items():
            v = out.get(mono, 0) + c
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Poly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for (a1, m1), c1 in self._terms.items():
            for (a2, m2), c2 in other._terms.items():
                mono = Monomial(tuple(i + j for i, j in zip(a1, a2)), m1 + m2)
                out[mono] = out.get(mono, 0) + c1 * c2
        return Poly._raw(self.n, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.n)
        return Poly._raw(self.n, {k: v * c for k, v in self._terms.items()})

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        out = Poly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out


def _check_axis(n: int, i: int) -> None:
    if not isinstance(i, int) or not 1 <= i <= n:
        raise ValueError(f"axis {i} out of range 1..{n}")


def poly_arith(a: Poly, b, op: str, c=None) -> Poly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``c`` is the scalar)."""
    if op == "scale":
        return a.scale(c if c is not None else b)
    if not isinstance(b, Poly):
        raise TypeError("second operand must be a Poly")
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: n={a.n} vs n={b.n}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


# differential operators ---------------------------------------------------


def partial_x(p: Poly, i: int) -> Poly:
    """Formal derivative in x_i, 1-based."""
    _check_axis(p.n, i)
    k = i - 1
    out = {}
    for (alpha, m), c in p._terms.items():
        a = alpha[k]
        if a:
            beta = alpha[:k] + (a - 1,) + alpha[k + 1:]
            out[Monomial(beta, m)] = c * a
    return Poly._raw(p.n, out)


def partial_t(p: Poly) -> Poly:
    out = {}
    for (alpha, m), c in p._terms.items():
        if m:
            out[Monomial(alpha, m - 1)] = c * m
    return Poly._raw(p.n, out)


def gradient(p: Poly) -> list[Poly]:
    return [partial_x(p, i) for i in range(1, p.n + 1)]


def laplacian(p: Poly) -> Poly:
    out: dict[Monomial, Fraction] = {}
    for (alpha, m), c in p._terms.items():
        for k, a in enumerate(alpha):
            if a >= 2:
                mono = Monomial(alpha[:k] + (a - 2,) + alpha[k + 1:], m)
                out[mono] = out.get(mono, 0) + c * (a * (a - 1))
    return Poly._raw(p.n, {k: v for k, v in out.items() if v})


def heat_op(p: Poly) -> Poly:
    """The heat operator: d/dt p minus the Laplacian of p."""
    return partial_t(p) - laplacian(p)


def radial_multiply(p: Poly) -> Poly:
    """Multiply by |x|^2 = x_1^2 + ... + x_n^2."""
    out: dict[Monomial, Fraction] = {}
    for (alpha, m), c in p._terms.items():
        for k in range(p.n):
            mono = Monomial(alpha[:k] + (alpha[k] + 2,) + alpha[k + 1:], m)
            out[mono] = out.get(mono, 0) + c
    return Poly._raw(p.n, {k: v for k, v in out.items() if v})


def euler_operator(p: Poly) -> Poly:
    """sum_i x_i * d/dx_i p; equals k*p on spatially homogeneous degree-k p."""
    out = {}
    for (alpha, m), c in p._terms.items():
        s = sum(alpha)
        if s:
            out[Monomial(alpha, m)] = c * s
    return Poly._raw(p.n, out)


# grading ------------------------------------------------------------------


def parabolic_degree(p: Poly):
    """Max of |alpha| + 2m over the terms; ``ZERO_DEGREE`` for the zero poly."""
    if not p._terms:
        return ZERO_DEGREE
    return max(mono.parabolic_degree for mono in p._terms)


def spatial_degree(p: Poly):
    if not p._terms:
        return ZERO_DEGREE
    return max(sum(mono.alpha) for mono in p._terms)


def t_degree(p: Poly):
    if not p._terms:
        return ZERO_DEGREE
    return max(mono.m for mono in p._terms)


def homogeneous_component(p: Poly, q: int) -> Poly:
    if q < 0:
        raise ValueError("degree must be nonnegative")
    return Poly._raw(p.n, {k: v for k, v in p._terms.items() if k.parabolic_degree == q})


def homogeneous_layers(p: Poly) -> dict[int, Poly]:
    layers: dict[int, dict] = {}
    for mono, c in p._terms.items():
        layers.setdefault(mono.parabolic_degree, {})[mono] = c
    return {q: Poly._raw(p.n, t) for q, t in sorted(layers.items())}


def is_parabolically_homogeneous(p: Poly) -> bool:
    return len({mono.parabolic_degree for mono in p._terms}) <= 1


def is_spatially_homogeneous(p: Poly) -> bool:
    """True for pure-x polys (no t) with a single spatial degree."""
    if any(mono.m for mono in p._terms):
        return False
    return len({sum(mono.alpha) for mono in p._terms}) <= 1


def t_coefficient(p: Poly, j: int) -> Poly:
    """The spatial poly multiplying t^j."""
    zero_m = {Monomial(k.alpha, 0): v for k, v in p._terms.items() if k.m == j}
    return Poly._raw(p.n, zero_m)


# evaluation and substitution ----------------------------------------------


def evaluate(p: Poly, x: Sequence, t=0) -> Fraction:
    if len(x) != p.n:
        raise ValueError(f"point has {len(x)} coordinates, expected {p.n}")
    xs = [Fraction(v) for v in x]
    t = Fraction(t)
    total = Fraction(0)
    for (alpha, m), c in p._terms.items():
        term = c * t**m
        for xi, a in zip(xs, alpha):
            if a:
                term *= xi**a
        total += term
    return total


def substitute_t(p: Poly, value) -> Poly:
    """Set t = value, leaving a poly in x only."""
    value = Fraction(value)
    out: dict[Monomial, Fraction] = {}
    for (alpha, m), c in p._terms.items():
        mono = Monomial(alpha, 0)
        out[mono] = out.get(mono, 0) + c * value**m
    return Poly._raw(p.n, {k: v for k, v in out.items() if v})


def shift(p: Poly, axis: int, delta) -> Poly:
    """Translate a variable: x_axis -> x_axis + delta, or t -> t + delta for axis 0."""
    delta = Fraction(delta)
    if axis != 0:
        _check_axis(p.n, axis)
    out: dict[Monomial, Fraction] = {}
    for (alpha, m), c in p._terms.items():
        e = m if axis == 0 else alpha[axis - 1]
        for j in range(e + 1):
            coef = c * comb(e, j) * delta ** (e - j)
            if axis == 0:
                mono = Monomial(alpha, j)
            else:
                mono = Monomial(alpha[: axis - 1] + (j,) + alpha[axis:], m)
            out[mono] = out.get(mono, 0) + coef
    return Poly._raw(p.n, {k: v for k, v in out.items() if v})


# box-cylinder integration -------------------------------------------------


class BoxCylinder(NamedTuple):
    """The region [-r, r]^n x [-r^2, 0]."""

    r: Fraction

    @classmethod
    def of(cls, r) -> "BoxCylinder":
        r = parse_rational(r) if isinstance(r, str) else Fraction(r)
        if r <= 0:
            raise ValueError("box-cylinder half-width must be positive")
        return cls(r)


def _space_moment(a: int, r: Fraction) -> Fraction:
    # integral of x^a over [-r, r]
    if a % 2:
        return Fraction(0)
    return 2 * r ** (a + 1) / (a + 1)


def _time_moment(m: int, r: Fraction) -> Fraction:
    # integral of t^m over [-r^2, 0]
    return (-1) ** m * r ** (2 * m + 2) / (m + 1)


def integrate_box_cylinder(p: Poly, Q) -> Fraction:
    if not isinstance(Q, BoxCylinder):
        Q = BoxCylinder.of(Q)
    r = Q.r
    if r <= 0:
        raise ValueError("box-cylinder half-width must be positive")
    cache: dict[int, Fraction] = {}
    total = Fraction(0)
    for (alpha, m), c in p._terms.items():
        if any(a % 2 for a in alpha):
            continue
        val = c * _time_moment(m, r)
        for a in alpha:
            if a not in cache:
                cache[a] = _space_moment(a, r)
            val *= cache[a]
        total += val
    return total


# text and JSON ------------------------------------------------------------

_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _mono_string(mono: Monomial) -> str:
    parts = []
    n = len(mono.alpha)
    for i, a in enumerate(mono.alpha, start=1):
        if not a:
            continue
        name = "x" if n == 1 else f"x{i}"
        parts.append(name if a == 1 else f"{name}^{a}")
    if mono.m:
        parts.append("t" if mono.m == 1 else f"t^{mono.m}")
    return "*".join(parts)


def to_string(p: Poly) -> str:
    if not p._terms:
        return "0"
    out = []
    for mono, c in p.items():
        body = _mono_string(mono)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not body:
            txt = str(mag)
        elif mag == 1:
            txt = body
        else:
            txt = f"{mag}*{body}"
        out.append((sign, txt))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, txt in out[1:]:
        s += f" {sign} {txt}"
    return s


def monomial_to_json(mono: Monomial) -> dict:
    return {"alpha": list(mono.alpha), "m": mono.m}


def monomial_from_json(obj: Mapping) -> Monomial:
    alpha = obj["alpha"]
    m = obj.get("m", 0)
    if not all(isinstance(a, int) and not isinstance(a, bool) and a >= 0 for a in alpha):
        raise ValueError(f"bad exponent vector {alpha!r}")
    if not isinstance(m, int) or isinstance(m, bool) or m < 0:
        raise ValueError(f"bad time exponent {m!r}")
    return Monomial(tuple(alpha), m)


def poly_to_json(p: Poly) -> dict:
    return {
        "n": p.n,
        "terms": [
            {"alpha": list(mono.alpha), "m": mono.m, "coef": format_rational(c)}
            for mono, c in p.items()
        ],
    }


def poly_from_json(obj: Mapping) -> Poly:
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"bad dimension {n!r}")
    terms = []
    for term in obj.get("terms", []):
        mono = monomial_from_json(term)
        terms.append((mono, parse_rational(term["coef"])))
    return Poly(n, terms)
