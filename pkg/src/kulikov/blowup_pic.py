"""Divisor classes on the plane blown up at one point, and the S(C1, C2, P) classifier.

Pic of the blow-up is free on the pulled-back line class L and the exceptional
class E, with L.L = 1, L.E = 0, E.E = -1. A curve of degree d with
multiplicity m at the centre has strict transform d*L - m*E.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact_poly import smith_normal_form
from .plane_curves import (Irreducibility, PlaneCurve, ProjPoint, contains,
                           multiplicity_at)


class InvalidSurfaceSpec(ValueError):
    pass


class ClassificationMismatch(AssertionError):
    """The closed-form affineness test disagreed with the intersection-theoretic one."""


@dataclass(frozen=True)
class DivisorClass:
    l: int
    e: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.l + other.l, self.e + other.e)

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.l, k * self.e)


LINE = DivisorClass(1, 0)
EXCEPTIONAL = DivisorClass(0, 1)


@dataclass(frozen=True)
class SurfaceSpec:
    """Degrees and multiplicities at P of the two boundary curves; rows (d1, m1), (d2, m2)."""

    d1: int
    m1: int
    d2: int
    m2: int

    def __post_init__(self):
        for d, m in ((self.d1, self.m1), (self.d2, self.m2)):
            if d < 1:
                raise InvalidSurfaceSpec(f"degree must be positive, got {d}")
            if m < 0:
                raise InvalidSurfaceSpec(f"multiplicity must be nonnegative, got {m}")
            if m > d:
                raise InvalidSurfaceSpec(f"multiplicity {m} exceeds degree {d}")
            if d >= 2 and m > d - 1:
                raise InvalidSurfaceSpec(f"an irreducible curve of degree {d} has multiplicity < {d}")
        if self.m1 + self.m2 < 1:
            raise InvalidSurfaceSpec("P must lie on one of the curves")

    @property
    def matrix(self) -> tuple:
        return ((self.d1, self.m1), (self.d2, self.m2))

    def as_tuple(self) -> tuple:
        return (self.d1, self.m1, self.d2, self.m2)


@dataclass(frozen=True)
class ClassificationReport:
    spec: SurfaceSpec
    determinant: int
    affine: bool
    factorial: bool
    picard_invariants: tuple
    self_intersection_sum: int

    @property
    def picard_trivial(self) -> bool:
        return all(x == 1 for x in self.picard_invariants)


def strict_transform_class(d: int, m: int) -> DivisorClass:
    if m > d:
        raise ValueError(f"multiplicity {m} exceeds degree {d}")
    return DivisorClass(d, -m)


def pair(a: DivisorClass, b: DivisorClass) -> int:
    return a.l * b.l - a.e * b.e


def boundary_class(s: SurfaceSpec) -> DivisorClass:
    return strict_transform_class(s.d1, s.m1) + strict_transform_class(s.d2, s.m2)


def boundary_self_intersection(s: SurfaceSpec) -> int:
    return (s.d1 + s.d2) ** 2 - (s.m1 + s.m2) ** 2


def determinant(s: SurfaceSpec) -> int:
    return s.d1 * s.m2 - s.d2 * s.m1


def is_affine(s: SurfaceSpec) -> bool:
    return not (s.d1 == s.d2 == s.m1 == s.m2 == 1)


def nakai_affine_test(s: SurfaceSpec) -> bool:
    """Ampleness of the boundary divisor D, hence affineness of its complement.

    Needs D.D > 0, D.E > 0 and D.C > 0 for every other irreducible curve C,
    whose class is d*L - m*E with 0 <= m <= d and m <= d - 1 once d >= 2.
    D.C = d*(d1 + d2) - m*(m1 + m2) and m1 + m2 <= d1 + d2, so
    D.C >= d*(d1 + d2 - m1 - m2) >= (d1 + d2) - (m1 + m2): the line
    through P, (d, m) = (1, 1), is the worst case.
    """
    D = boundary_class(s)
    if pair(D, D) <= 0:
        return False
    if pair(D, EXCEPTIONAL) <= 0:
        return False
    return pair(D, strict_transform_class(1, 1)) > 0


def picard_group(s: SurfaceSpec) -> tuple:
    """Invariant factors of Z^2 modulo the boundary classes; 0 marks a free summand."""
    rows = ((s.d1, -s.m1), (s.d2, -s.m2))
    _, D, _ = smith_normal_form(rows)
    return (D[0][0], D[1][1])


def is_factorial(s: SurfaceSpec) -> bool:
    return is_affine(s) and abs(determinant(s)) == 1


def spec_from_curves(c1: PlaneCurve, c2: PlaneCurve, p: ProjPoint) -> SurfaceSpec:
    for c in (c1, c2):
        if c.irreducibility is Irreducibility.REDUCIBLE:
            raise InvalidSurfaceSpec(f"curve {c.poly} is reducible")
    if not (contains(c1, p) or contains(c2, p)):
        raise InvalidSurfaceSpec(f"{p} lies on neither curve")
    return SurfaceSpec(c1.degree, multiplicity_at(c1, p), c2.degree, multiplicity_at(c2, p))


def classify(s: SurfaceSpec) -> ClassificationReport:
    affine = is_affine(s)
    if affine != nakai_affine_test(s):
        raise ClassificationMismatch(f"affineness tests disagree on {s}")
    report = ClassificationReport(
        spec=s,
        determinant=determinant(s),
        affine=affine,
        factorial=is_factorial(s),
        picard_invariants=picard_group(s),
        self_intersection_sum=boundary_self_intersection(s),
    )
    if report.factorial and not report.affine:
        raise ClassificationMismatch("factorial surface reported as not affine")
    return report
