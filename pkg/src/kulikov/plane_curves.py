"""Points and curves of the projective plane over Q.

Intersections are never solved explicitly over the algebraic closure. Two
curves are put in general position by a random integer change of
coordinates (a *shear*), the second coordinate is eliminated with a
resultant, and each squarefree factor h of the resulting univariate
polynomial stands for a Galois-stable set of intersection points. A gcd of
the two equations over Q[t]/(h), splitting h whenever a zero divisor shows
up, certifies that every projection line carries a single point and yields
its second coordinate as a polynomial in t modulo h. Other forms are then
tested on a whole class with one univariate gcd.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd, lcm
from typing import Sequence

from . import upoly
from .exact_poly import HomogeneousForm, MultiPoly, divides, resultant
from .seeding import rng_for

MAX_SHEARS = 32


class CommonComponentError(ValueError):
    """Two curves share a component, so their intersection is not finite."""


class NoShearFound(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class ProjPoint:
    coords: tuple

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        if len(c) != 3:
            raise ValueError("a plane point has 3 coordinates")
        if not any(c):
            raise ValueError("(0:0:0) is not a projective point")
        den = lcm(*(x.denominator for x in c))
        ints = [int(x * den) for x in c]
        g = 0
        for x in ints:
            g = gcd(g, x)
        first = next(x for x in ints if x)
        if first < 0:
            g = -g
        object.__setattr__(self, "coords", tuple(x // g for x in ints))

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "({}:{}:{})".format(*self.coords)


@dataclass(frozen=True)
class ConjugateClass:
    """The points A @ (t, y(t), 1) for t a root of ``factor``."""

    factor: tuple  # monic squarefree UPoly in t
    shear: tuple
    y: tuple  # UPoly reduced modulo factor

    @property
    def size(self) -> int:
        return upoly.degree(self.factor)


class Irreducibility(str, enum.Enum):
    VERIFIED = "Verified"
    ASSERTED = "Asserted"
    REDUCIBLE = "Reducible"


@dataclass(frozen=True)
class PlaneCurve:
    form: HomogeneousForm
    irreducibility: Irreducibility

    @property
    def degree(self) -> int:
        return self.form.degree

    @property
    def poly(self) -> MultiPoly:
        return self.form.poly

    @classmethod
    def from_poly(cls, poly: MultiPoly) -> "PlaneCurve":
        if poly.nvars != 3:
            raise ValueError("plane curves are given by forms in 3 variables")
        form = HomogeneousForm(poly)
        if form.degree < 1:
            raise ValueError("a curve needs a form of positive degree")
        if not is_squarefree_form(poly):
            raise ValueError(f"form {poly} has a repeated factor")
        return cls(form, _irreducibility(poly))


@dataclass(frozen=True)
class IntersectionCycle:
    entries: tuple  # ((ProjPoint | ConjugateClass, multiplicity), ...)
    total: int

    def multiplicity_at(self, p: ProjPoint) -> int:
        return next((m for loc, m in self.entries if loc == p), 0)

    def points(self) -> list[ProjPoint]:
        return [loc for loc, _ in self.entries if isinstance(loc, ProjPoint)]


# -- local coordinates


def _local_images(p: ProjPoint) -> list[MultiPoly]:
    k = max(i for i in range(3) if p.coords[i])
    u, v = MultiPoly.gens(2)
    others = [i for i in range(3) if i != k]
    images = [None] * 3
    images[k] = MultiPoly.constant(2, p.coords[k])
    images[others[0]] = u + p.coords[others[0]]
    images[others[1]] = v + p.coords[others[1]]
    return images


def local_equation(form: MultiPoly, p: ProjPoint) -> MultiPoly:
    """Dehomogenize in the chart of the last nonzero coordinate of p and move p to the origin."""
    return form.substitute(_local_images(p))


def _as_form(c) -> MultiPoly:
    if isinstance(c, PlaneCurve):
        return c.poly
    if isinstance(c, HomogeneousForm):
        return c.poly
    return c


def contains(c: PlaneCurve, p: ProjPoint) -> bool:
    return _as_form(c).evaluate(p.coords) == 0


def multiplicity_at(c: PlaneCurve, p: ProjPoint) -> int:
    f = local_equation(_as_form(c), p)
    return f.min_degree() if f.coeff((0, 0)) == 0 else 0


def tangent_cone(c: PlaneCurve, p: ProjPoint) -> HomogeneousForm:
    f = local_equation(_as_form(c), p)
    if f.coeff((0, 0)) != 0:
        raise ValueError(f"{p} is not on the curve")
    return HomogeneousForm(f.homogeneous_part(f.min_degree()))


def binary_quadratic_discriminant(q: MultiPoly) -> Fraction:
    a, b, c = q.coeff((2, 0)), q.coeff((1, 1)), q.coeff((0, 2))
    return b * b - 4 * a * c


def is_node(c: PlaneCurve, p: ProjPoint) -> bool:
    cone = tangent_cone(c, p)
    return cone.degree == 2 and binary_quadratic_discriminant(cone.poly) != 0


def tangent_direction_is_branch(line_part: MultiPoly, cone: MultiPoly) -> bool:
    """Whether the local line a*u + b*v = 0 is a factor of the binary tangent cone."""
    a, b = line_part.coeff((1, 0)), line_part.coeff((0, 1))
    return cone.evaluate((-b, a)) == 0


# -- projection machinery


def _random_shear(rng) -> tuple:
    while True:
        a = tuple(tuple(rng.randint(-4, 4) for _ in range(3)) for _ in range(3))
        d = (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
             - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
             + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))
        if d:
            return a


def _affine_pullback(form: MultiPoly, shear: tuple) -> MultiPoly:
    # form(A @ (t, y, 1)) as a polynomial in (t, y)
    t, y = MultiPoly.gens(2)
    images = [t * row[0] + y * row[1] + row[2] for row in shear]
    return form.substitute(images)


def _point_from(shear: tuple, t0: Fraction, y0: Fraction) -> ProjPoint:
    return ProjPoint(tuple(row[0] * t0 + row[1] * y0 + row[2] for row in shear))


def _reduce_y(poly2: MultiPoly, h: tuple) -> list:
    """Coefficients in y (index = power) of a (t, y) polynomial, each reduced mod h."""
    coeffs = [()] * (max(poly2.degree_in(1), 0) + 1)
    for (a, b), c in poly2.terms:
        coeffs[b] = upoly.add(coeffs[b], upoly.make([0] * a + [c]))
    return _strip([upoly.rem(c, h) for c in coeffs])


def _strip(p: list) -> list:
    while p and not p[-1]:
        p = p[:-1]
    return p


def _ypoly_rem(a: list, b: list, h: tuple) -> list:
    inv = upoly.inverse_mod(b[-1], h)
    a = list(a)
    while len(a) >= len(b):
        c = upoly.rem(upoly.mul(a[-1], inv), h)
        shift = len(a) - len(b)
        for j, bj in enumerate(b):
            a[shift + j] = upoly.rem(upoly.sub(a[shift + j], upoly.mul(c, bj)), h)
        a = _strip(a)
    return a


def _split_on(lead: tuple, h: tuple):
    g = upoly.gcd_(lead, h)
    if 0 < upoly.degree(g) < upoly.degree(h):
        return g, upoly.exact_div(h, g)
    return None


def _ygcd(a: list, b: list, h: tuple) -> list:
    """gcd of two polynomials in y over Q[t]/(h), h squarefree.

    Returns [(h_i, G_i)] with h = prod h_i and G_i monic over Q[t]/(h_i).
    """
    a = [upoly.rem(c, h) for c in a]
    b = [upoly.rem(c, h) for c in b]
    while True:
        b = _strip(b)
        if not b:
            a = _strip(a)
            split = _split_on(a[-1], h)
            if split:
                return _ygcd(a, [], split[0]) + _ygcd(a, [], split[1])
            inv = upoly.inverse_mod(a[-1], h)
            return [(h, [upoly.rem(upoly.mul(c, inv), h) for c in a])]
        split = _split_on(b[-1], h)
        if split:
            return _ygcd(a, b, split[0]) + _ygcd(a, b, split[1])
        a, b = b, _ypoly_rem(a, b, h)


def _single_root(G: list, h: tuple):
    """If monic G equals (y - y0)^k modulo h, return y0; otherwise None."""
    k = len(G) - 1
    y0 = upoly.scale(G[k - 1], Fraction(-1, k))
    power = [upoly.make([1])]
    for _ in range(k):
        power.append(upoly.rem(upoly.mul(power[-1], upoly.scale(y0, -1)), h))
    for j in range(k + 1):
        expected = upoly.scale(power[k - j], comb(k, j))
        if upoly.rem(upoly.sub(G[j], expected), h):
            return None
    return upoly.rem(y0, h)


@dataclass(frozen=True)
class Projection:
    shear: tuple
    factors: tuple  # ((h, multiplicity, y mod h), ...), h monic squarefree
    eliminant: tuple = field(repr=False)

    def restrict(self, form: MultiPoly, h: tuple, y: tuple) -> tuple:
        """form(A @ (t, y(t), 1)) mod h; its roots shared with h are the class points on form."""
        g = _reduce_y(_affine_pullback(form, self.shear), h)
        acc: tuple = ()
        for c in reversed(g):
            acc = upoly.rem(upoly.add(upoly.mul(acc, y), c), h)
        return acc

    def split(self, h: tuple, y: tuple) -> tuple[list[ProjPoint], ConjugateClass | None]:
        """Rational points over the roots of h, plus the remaining class."""
        pts = []
        rest = h
        for t0 in upoly.rational_roots(h):
            pts.append(_point_from(self.shear, t0, upoly.evaluate(y, t0)))
            rest = upoly.exact_div(rest, upoly.make([-t0, 1]))
        cls = None
        if upoly.degree(rest) > 0:
            rest = upoly.monic(rest)
            cls = ConjugateClass(rest, self.shear, upoly.rem(y, rest))
        return pts, cls


def project(f: MultiPoly, g: MultiPoly, seed: int = 0) -> Projection:
    """Find a shear under which eliminating the second coordinate separates V(f, g)."""
    df, dg = f.total_degree(), g.total_degree()
    for attempt in range(MAX_SHEARS):
        A = _random_shear(rng_for(seed, "shear", attempt))
        centre = tuple(row[1] for row in A)
        if f.evaluate(centre) == 0 or g.evaluate(centre) == 0:
            continue
        fa, ga = _affine_pullback(f, A), _affine_pullback(g, A)
        H = resultant(fa, ga, 1)
        if H.is_zero():
            raise CommonComponentError("curves share a component")
        eliminant = H.to_univariate(0)
        if upoly.degree(eliminant) != df * dg:
            continue  # some intersection point sits on the line at infinity
        factors = []
        for h, mult in upoly.squarefree(eliminant):
            for hi, G in _ygcd(_reduce_y(fa, h), _reduce_y(ga, h), h):
                y0 = _single_root(G, hi)
                if y0 is None:
                    break
                factors.append((hi, mult, y0))
            else:
                continue
            break
        else:
            return Projection(A, tuple(factors), eliminant)
    raise NoShearFound(f"no separating shear within {MAX_SHEARS} attempts")


def intersection_cycle(f: PlaneCurve, g: PlaneCurve, seed: int = 0) -> IntersectionCycle:
    F, G = _as_form(f), _as_form(g)
    proj = project(F, G, seed)
    pts: list = []
    classes: list = []
    for h, mult, y in proj.factors:
        rational, cls = proj.split(h, y)
        pts.extend((p, mult) for p in rational)
        if cls is not None:
            classes.append((cls, mult))
    pts.sort(key=lambda t: t[0].coords)
    entries = tuple(pts + classes)
    total = sum(m for _, m in pts) + sum(m * c.size for c, m in classes)
    if total != F.total_degree() * G.total_degree():
        raise AssertionError("intersection count violates Bezout")
    return IntersectionCycle(entries, total)


def common_zeros(forms: Sequence[MultiPoly], seed: int = 0) -> tuple[list[ProjPoint], list[ConjugateClass]]:
    """Common projective zeros of the forms; the first two must share no component."""
    proj = project(forms[0], forms[1], seed)
    pts: list[ProjPoint] = []
    classes: list[ConjugateClass] = []
    for h, _, y in proj.factors:
        g = h
        for q in forms[2:]:
            g = upoly.gcd_(g, proj.restrict(q, h, y))
            if upoly.degree(g) == 0:
                break
        if upoly.degree(g) > 0:
            p, c = proj.split(g, upoly.rem(y, g))
            pts.extend(p)
            if c is not None:
                classes.append(c)
    pts.sort(key=lambda p: p.coords)
    return pts, classes


# -- singularities and irreducibility

_POLAR_CENTRES = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 2, 3),
                  (1, -1, 2), (2, 3, -1), (3, -2, 5), (1, 5, -7)]


def _polar_centre(F: MultiPoly) -> tuple:
    for w in _POLAR_CENTRES:
        if F.evaluate(w) != 0:
            return w
    k = 2
    while True:  # a nonzero form cannot vanish on all of these
        w = (1, k, k * k)
        if F.evaluate(w) != 0:
            return w
        k += 1


def is_squarefree_form(F: MultiPoly) -> bool:
    if F.total_degree() <= 1:
        return True
    # make the Y-leading coefficient a nonzero constant, then gcd(F, dF/dY) = 1 iff Res_Y != 0
    a, b = next((a, b) for a, b in ((0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (2, 3),
                                    (3, 2), (5, 7), (7, 3), (11, 5))
                if F.evaluate((a, 1, b)) != 0)
    X, Y, Z = MultiPoly.gens(3)
    Fs = F.substitute([X + Y * a, Y, Z + Y * b])
    return not resultant(Fs, Fs.partial(1), 1).is_zero()


def singular_points(c: PlaneCurve, seed: int = 0) -> tuple[list[ProjPoint], list[ConjugateClass]]:
    F = _as_form(c)
    if F.total_degree() <= 1:
        return [], []
    w = _polar_centre(F)
    partials = [F.partial(i) for i in range(3)]
    polar = sum((p.scale(wi) for p, wi in zip(partials, w) if wi), MultiPoly.zero(3))
    return common_zeros([F, polar, *partials], seed)


def is_smooth_curve(c: PlaneCurve) -> bool:
    pts, classes = singular_points(c)
    return not pts and not classes


def conic_matrix(F: MultiPoly) -> list[list[Fraction]]:
    m = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            m[i][j] = F.coeff(tuple(e)) if i == j else F.coeff(tuple(e)) / 2
    return m


def _det3(m) -> Fraction:
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _irreducibility(F: MultiPoly) -> Irreducibility:
    d = F.total_degree()
    if d == 1:
        return Irreducibility.VERIFIED
    if d == 2:
        return Irreducibility.VERIFIED if _det3(conic_matrix(F)) != 0 else Irreducibility.REDUCIBLE
    if d >= 4:
        return Irreducibility.ASSERTED
    if not is_squarefree_form(F):
        return Irreducibility.REDUCIBLE
    # A cubic is reducible over the algebraic closure iff it contains a line. Reducible
    # cubics have >= 2 singular points, or one that is a triple point or a tacnode
    # whose tangent line is a component; irreducible ones have <= 1, a node or a cusp.
    pts, classes = singular_points(F)
    count = len(pts) + sum(cl.size for cl in classes)
    if count == 0:
        return Irreducibility.VERIFIED
    if count >= 2:
        return Irreducibility.REDUCIBLE
    p = pts[0]
    cone = tangent_cone(F, p).poly
    if cone.total_degree() == 3:
        return Irreducibility.REDUCIBLE
    if binary_quadratic_discriminant(cone) != 0:
        return Irreducibility.VERIFIED
    a, b = cone.coeff((2, 0)), cone.coeff((1, 1))
    alpha, beta = (Fraction(1), b / (2 * a)) if a else (Fraction(0), Fraction(1))
    return Irreducibility.REDUCIBLE if divides(_line_form(p, alpha, beta), F) else Irreducibility.VERIFIED


def _line_form(p: ProjPoint, alpha, beta) -> MultiPoly:
    """Projective form of the local line alpha*u + beta*v = 0 at p."""
    k = max(i for i in range(3) if p.coords[i])
    i, j = [x for x in range(3) if x != k]
    X = MultiPoly.gens(3)
    pk = Fraction(p.coords[k])
    u = X[i] - X[k].scale(p.coords[i] / pk)
    v = X[j] - X[k].scale(p.coords[j] / pk)
    return u.scale(alpha) + v.scale(beta)


def irreducibility_check(c: PlaneCurve) -> Irreducibility:
    return _irreducibility(_as_form(c))


# -- local intersection numbers


def intersection_multiplicity(f: PlaneCurve, g: PlaneCurve, p: ProjPoint) -> int:
    """Local intersection number at a rational point, by Fulton's reduction algorithm."""
    F, G = _as_form(f), _as_form(g)
    a, b = local_equation(F, p), local_equation(G, p)
    cap = F.total_degree() * G.total_degree()
    return _fulton(a, b, cap)


def _order_at_zero(p: tuple) -> int:
    return next(i for i, c in enumerate(p) if c)


def _fulton(f: MultiPoly, g: MultiPoly, cap: int) -> int:
    u, v = MultiPoly.gens(2)
    total = 0
    while True:
        if f.is_zero() or g.is_zero():
            raise CommonComponentError("curves share a component through the point")
        if f.coeff((0, 0)) != 0 or g.coeff((0, 0)) != 0:
            return total
        fr = upoly.make([f.coeff((k, 0)) for k in range(max(f.degree_in(0), 0) + 1)])
        gr = upoly.make([g.coeff((k, 0)) for k in range(max(g.degree_in(0), 0) + 1)])
        if not fr and not gr:
            raise CommonComponentError("curves share a component through the point")
        if not fr or not gr:
            if not fr:
                f, g, fr, gr = g, f, gr, fr
            # g = v * g1: I(f, g) = I(f, v) + I(f, g1)
            total += _order_at_zero(fr)
            g = _divide_by_v(g)
        else:
            if upoly.degree(fr) > upoly.degree(gr):
                f, g, fr, gr = g, f, gr, fr
            shift = upoly.degree(gr) - upoly.degree(fr)
            g = g.scale(upoly.lc(fr)) - (f * u ** shift).scale(upoly.lc(gr))
        if total > cap:
            raise CommonComponentError("local intersection exceeds the Bezout bound")


def _divide_by_v(g: MultiPoly) -> MultiPoly:
    return MultiPoly(2, [((a, b - 1), c) for (a, b), c in g.terms])
