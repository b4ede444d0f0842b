from fractions import Fraction

import sympy
from hypothesis import settings, strategies as st

from kulikov.exact_poly import MultiPoly

settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

X = sympy.symbols("X1 X2 X3")


def to_sympy(p: MultiPoly, syms=X):
    """Independent oracle representation of a MultiPoly."""
    out = sympy.Integer(0)
    for e, c in p.terms:
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            term *= s ** k
        out += term
    return sympy.expand(out)


def from_sympy(expr, syms=X) -> MultiPoly:
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return MultiPoly(len(syms), {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, nvars=3, max_degree=3, max_terms=5, coeffs=small_fractions):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars)))
        if sum(e) <= max_degree:
            terms[e] = draw(coeffs)
    return MultiPoly(nvars, terms)


@st.composite
def forms(draw, degree, coeffs=st.integers(-4, 4)):
    return MultiPoly(3, {(a, b, degree - a - b): draw(coeffs)
                         for a in range(degree + 1) for b in range(degree + 1 - a)})
