import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from conftest import X, forms, to_sympy
from kulikov.exact_poly import MultiPoly
from kulikov.parsing import parse_polynomial as pp
from kulikov.plane_curves import (CommonComponentError, ConjugateClass, Irreducibility,
                                  PlaneCurve, ProjPoint, binary_quadratic_discriminant,
                                  common_zeros, contains, intersection_cycle,
                                  intersection_multiplicity, irreducibility_check, is_node,
                                  is_smooth_curve, multiplicity_at, singular_points,
                                  tangent_cone)

R_TEXT = "X1^2*X2 + X1^2*X3 + X2^2*X1 + X2^2*X3 + X3^2*X1 + X3^2*X2 - 6*X1*X2*X3"
P = ProjPoint((1, 1, 1))


def curve(text):
    return PlaneCurve.from_poly(pp(text))


def test_projpoint_normalization():
    assert ProjPoint((2, -4, 6)).coords == (1, -2, 3)
    assert ProjPoint((0, -3, 3)) == ProjPoint((0, 1, -1))
    with pytest.raises(ValueError):
        ProjPoint((0, 0, 0))
    assert str(ProjPoint((1, 1, 1))) == "(1:1:1)"


def test_curve_validation():
    with pytest.raises(ValueError):
        curve("X1^2 + X2")
    with pytest.raises(ValueError):
        curve("(X1 - X2)^2")
    with pytest.raises(ValueError):
        curve("3")


def test_r_has_a_node_at_p():
    R = curve(R_TEXT)
    assert contains(R, P)
    assert multiplicity_at(R, P) == 2
    cone = tangent_cone(R, P)
    assert cone.degree == 2
    assert binary_quadratic_discriminant(cone.poly) != 0
    assert is_node(R, P)
    assert not is_smooth_curve(R)
    pts, classes = singular_points(R)
    assert pts == [P] and classes == []


def test_cusp_is_not_a_node():
    C = curve("X2^2*X3 - X1^3")
    O = ProjPoint((0, 0, 1))
    assert multiplicity_at(C, O) == 2
    assert binary_quadratic_discriminant(tangent_cone(C, O).poly) == 0
    assert not is_node(C, O)
    assert singular_points(C) == ([O], [])


def test_multiplicity_off_curve_is_zero():
    assert multiplicity_at(curve("X1 - X2"), ProjPoint((1, 0, 0))) == 0


@pytest.mark.parametrize("text, expected", [
    (R_TEXT, Irreducibility.VERIFIED),
    ("3*X1^2 - X1*X2 - X1*X3 - X2*X3", Irreducibility.VERIFIED),
    ("X1 + 2*X2 - X3", Irreducibility.VERIFIED),
    ("X1*X2", Irreducibility.REDUCIBLE),
    ("X2^2*X3 - X1^3", Irreducibility.VERIFIED),
    ("X2^2*X3 - X1^3 - X1^2*X3", Irreducibility.VERIFIED),
    ("X3*(X2*X3 - X1^2)", Irreducibility.REDUCIBLE),
    ("X1*X2*(X1 + X2)", Irreducibility.REDUCIBLE),
    ("X1^3 + X2^3 + X3^3", Irreducibility.VERIFIED),
])
def test_irreducibility(text, expected):
    assert irreducibility_check(curve(text)) is expected


def test_conic_pair_intersection():
    q1 = curve("3*X1^2 - X1*X2 - X1*X3 - X2*X3")
    q2 = curve("3*X2^2 - X1*X2 - X1*X3 - X2*X3")
    cyc = intersection_cycle(q1, q2)
    assert cyc.total == 4
    assert dict(cyc.entries) == {ProjPoint((0, 0, 1)): 3, P: 1}
    # oracle: sympy finds the same two affine solutions in the chart X3 = 1
    sols = sympy.solve([to_sympy(q1.poly).subs(X[2], 1), to_sympy(q2.poly).subs(X[2], 1)], X[:2], dict=True)
    assert {(s[X[0]], s[X[1]]) for s in sols} == {(0, 0), (1, 1)}


def test_lines():
    cyc = intersection_cycle(curve("X1 - X2"), curve("X1 + X3"))
    assert cyc.entries == ((ProjPoint((1, 1, -1)), 1),)
    with pytest.raises(CommonComponentError):
        intersection_cycle(curve("X1 - X2"), curve("2*X1 - 2*X2"))


def test_shared_component():
    with pytest.raises(CommonComponentError):
        intersection_cycle(curve("X1*X2"), curve("X1*(X2 + X3)"))


def test_irrational_points_come_as_classes():
    cyc = intersection_cycle(curve("X1^2 - 2*X3^2"), curve("X2"))
    assert cyc.total == 2
    (loc, m), = cyc.entries
    assert isinstance(loc, ConjugateClass) and loc.size == 2 and m == 1


def test_tangency_and_inflection():
    parabola, tangent = curve("X2*X3 - X1^2"), curve("X2")
    assert intersection_cycle(parabola, tangent).entries == ((ProjPoint((0, 0, 1)), 2),)
    cubic, flex = curve("X2*X3^2 - X1^3"), curve("X2")
    assert intersection_cycle(cubic, flex).entries == ((ProjPoint((0, 0, 1)), 3),)


def test_fulton_examples():
    O = ProjPoint((0, 0, 1))
    assert intersection_multiplicity(curve("X2*X3 - X1^2"), curve("X2"), O) == 2
    assert intersection_multiplicity(curve("X2^2*X3 - X1^3"), curve("X2"), O) == 3
    assert intersection_multiplicity(curve("X2^2*X3 - X1^3"), curve("X1"), O) == 2
    assert intersection_multiplicity(curve("X1 - X2"), curve("X1 + X3"), O) == 0
    # two cusps with the same tangent
    assert intersection_multiplicity(curve("X2^2*X3 - X1^3"), curve("X2^2*X3 + X1^3"), O) == 6


def test_cycle_is_seed_independent():
    f, g = curve(R_TEXT), curve("X1^2 + X2^2 - 2*X3^2")
    cycles = {intersection_cycle(f, g, seed).entries for seed in (0, 1, 2, 99)}
    totals = {sum(m * (loc.size if isinstance(loc, ConjugateClass) else 1) for loc, m in c) for c in cycles}
    assert totals == {6}
    rational = {tuple((loc, m) for loc, m in c if isinstance(loc, ProjPoint)) for c in cycles}
    assert len(rational) == 1


def test_common_zeros_of_three_forms():
    # the first two forms must be coprime
    pts, classes = common_zeros([pp("X1*X2"), pp("X2*X3 + X1*X3"), pp("X1*X3")])
    assert sorted(pts) == sorted(ProjPoint(p) for p in [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert classes == []
    with pytest.raises(CommonComponentError):
        common_zeros([pp("X1*X2"), pp("X2*X3"), pp("X1*X3")])


# -- property suites


def _curve_or_none(f):
    try:
        return PlaneCurve.from_poly(f)
    except ValueError:
        return None


pairs = st.tuples(st.integers(1, 3), st.integers(1, 3)).flatmap(
    lambda d: st.tuples(forms(d[0]), forms(d[1])))


@settings(max_examples=100)
@given(pairs, st.integers(0, 2 ** 20))
def test_bezout_on_random_pairs(pair, seed):
    f, g = (_curve_or_none(x) for x in pair)
    assume(f is not None and g is not None)
    try:
        cyc = intersection_cycle(f, g, seed)
    except CommonComponentError:
        assume(False)
    assert cyc.total == f.degree * g.degree


@st.composite
def curves_through_point(draw, max_degree=3):
    """Two curves with prescribed multiplicities at a random rational point."""
    A = draw(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
    M = sympy.Matrix(3, 3, A)
    assume(M.det() != 0)
    out = []
    for _ in range(2):
        d = draw(st.integers(1, max_degree))
        m = draw(st.integers(1, d))
        # multiplicity >= m at (0:0:1): drop monomials X1^a X2^b X3^c with a + b < m
        terms = {(a, b, d - a - b): draw(st.integers(-3, 3))
                 for a in range(d + 1) for b in range(d + 1 - a) if a + b >= m}
        out.append(MultiPoly(3, terms))
    images = [sum((MultiPoly.var(3, j).scale(int(M[i, j])) for j in range(3)), MultiPoly.zero(3))
              for i in range(3)]
    p = M.inv() * sympy.Matrix([0, 0, 1])
    point = ProjPoint(tuple(sympy.Rational(x) for x in p))
    return out[0].substitute(images), out[1].substitute(images), point


def _transverse(f, g, p):
    if multiplicity_at(f, p) != 1 or multiplicity_at(g, p) != 1:
        return False
    a, b = tangent_cone(f, p).poly, tangent_cone(g, p).poly
    return a.coeff((1, 0)) * b.coeff((0, 1)) != a.coeff((0, 1)) * b.coeff((1, 0))


def _rational(x):
    from fractions import Fraction
    return Fraction(int(x.p), int(x.q))


@settings(max_examples=100)
@given(curves_through_point(), st.integers(0, 1000))
def test_fulton_agrees_with_cycle(data, seed):
    f0, g0, point = data
    f, g = _curve_or_none(f0), _curve_or_none(g0)
    assume(f is not None and g is not None)
    try:
        cyc = intersection_cycle(f, g, seed)
    except CommonComponentError:
        assume(False)
    assert cyc.total == f.degree * g.degree
    assert cyc.multiplicity_at(point) >= 1
    for loc, m in cyc.entries:
        if isinstance(loc, ProjPoint):
            assert intersection_multiplicity(f, g, loc) == m
            assert intersection_multiplicity(g, f, loc) == m
            assert (m == 1) == _transverse(f, g, loc)


@settings(max_examples=50)
@given(curves_through_point(max_degree=2), st.lists(st.integers(-2, 2), min_size=9, max_size=9))
def test_multiplicity_invariant_under_coordinate_change(data, entries):
    f0, g0, point = data
    M = sympy.Matrix(3, 3, entries)
    assume(M.det() != 0)
    f, g = _curve_or_none(f0), _curve_or_none(g0)
    assume(f is not None and g is not None)
    try:
        before = intersection_multiplicity(f, g, point)
    except CommonComponentError:
        assume(False)
    images = [sum((MultiPoly.var(3, j).scale(int(M[i, j])) for j in range(3)), MultiPoly.zero(3))
              for i in range(3)]
    # the pulled-back curves pass through M^-1 * point
    q = M.inv() * sympy.Matrix([sympy.Rational(c) for c in point.coords])
    moved = ProjPoint(tuple(_rational(sympy.Rational(x)) for x in q))
    after = intersection_multiplicity(f0.substitute(images), g0.substitute(images), moved)
    assert after == before
