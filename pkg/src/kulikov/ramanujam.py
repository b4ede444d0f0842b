"""An explicit Ramanujam configuration: a cuspidal cubic and a conic with contact order 5.

The cubic Y^2 Z = X^3 is parametrized by t -> (t^2 : t^3 : 1), cusp at t = 0.
A conic through the smooth point t = 1 with contact order 5 there is a
kernel vector of the linear conditions p(1) = p'(1) = ... = p''''(1) = 0 on
p(t) = conic(t^2, t^3, 1). The sixth intersection is the remaining root of p.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import upoly
from .exact_poly import MultiPoly
from .parsing import parse_polynomial
from .plane_curves import PlaneCurve, ProjPoint

CUSPIDAL_CUBIC_TEXT = "X2^2*X3 - X1^3"
CONIC_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


@dataclass(frozen=True)
class RamanujamFixture:
    cubic: PlaneCurve
    conic: PlaneCurve
    contact_point: ProjPoint  # contact order 5
    transverse_point: ProjPoint  # the P that gets blown up
    cusp: ProjPoint


def _nullspace_vector(rows: list[list[Fraction]]) -> list[Fraction]:
    """A nonzero kernel vector of a matrix whose kernel is one-dimensional."""
    m = [list(r) for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    if len(free) != 1:
        raise ValueError(f"kernel has dimension {len(free)}, expected 1")
    vec = [Fraction(0)] * ncols
    vec[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -m[i][free[0]]
    return vec


def _restrict_monomial(e: tuple) -> tuple:
    # X^a Y^b Z^c at (t^2, t^3, 1) is t^(2a + 3b)
    return upoly.make([0] * (2 * e[0] + 3 * e[1]) + [1])


def contact_conic(t0: Fraction = Fraction(1), order: int = 5) -> tuple[MultiPoly, Fraction]:
    """Conic meeting the cuspidal cubic at parameter t0 with the given contact order.

    Returns the conic form and the parameter of the remaining intersection.
    """
    rows = []
    for k in range(order):
        row = []
        for e in CONIC_MONOMIALS:
            p = _restrict_monomial(e)
            for _ in range(k):
                p = upoly.derivative(p)
            row.append(upoly.evaluate(p, t0))
        rows.append(row)
    coeffs = _nullspace_vector(rows)
    den = lcm(*(c.denominator for c in coeffs))
    conic = MultiPoly(3, {e: c * den for e, c in zip(CONIC_MONOMIALS, coeffs)})
    restricted: tuple = ()
    for e, c in zip(CONIC_MONOMIALS, coeffs):
        restricted = upoly.add(restricted, upoly.scale(_restrict_monomial(e), c))
    linear = upoly.make([-t0, 1])
    rest = restricted
    for _ in range(order):
        rest = upoly.exact_div(rest, linear)
    if upoly.degree(rest) != 6 - order:
        raise ValueError("unexpected degree of the residual intersection")
    roots = upoly.rational_roots(upoly.monic(rest))
    return conic, roots[0] if roots else None


def ramanujam_fixture() -> RamanujamFixture:
    cubic = PlaneCurve.from_poly(parse_polynomial(CUSPIDAL_CUBIC_TEXT))
    form, s = contact_conic()
    conic = PlaneCurve.from_poly(form)
    return RamanujamFixture(
        cubic=cubic,
        conic=conic,
        contact_point=ProjPoint((1, 1, 1)),
        transverse_point=ProjPoint((s * s, s ** 3, 1)),
        cusp=ProjPoint((0, 0, 1)),
    )
