from fractions import Fraction

from hypothesis import strategies as st

from caloric.ratpoly import Monomial, Poly

# filled by test_acceptance, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def X(n, i):
    return Poly.x(n, i)


def T(n):
    return Poly.t(n)


rationals = st.builds(
    Fraction, st.integers(min_value=-50, max_value=50), st.integers(min_value=1, max_value=12)
)


@st.composite
def polys(draw, n=None, max_exp=3, max_m=2, max_terms=6):
    if n is None:
        n = draw(st.integers(min_value=1, max_value=3))
    mono = st.builds(
        Monomial,
        st.tuples(*[st.integers(min_value=0, max_value=max_exp)] * n),
        st.integers(min_value=0, max_value=max_m),
    )
    terms = draw(st.lists(st.tuples(mono, rationals), max_size=max_terms))
    return Poly(n, terms)


@st.composite
def homogeneous_polys(draw, n=None, max_degree=6):
    """Parabolically homogeneous polys of a drawn degree."""
    from caloric.spaces import basis_parabolic

    if n is None:
        n = draw(st.integers(min_value=1, max_value=3))
    q = draw(st.integers(min_value=0, max_value=max_degree))
    monos = basis_parabolic(n, q).monomials
    coefs = draw(st.lists(rationals, min_size=len(monos), max_size=len(monos)))
    return Poly(n, list(zip(monos, coefs))), q
