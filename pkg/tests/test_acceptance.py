"""Acceptance criteria, one test each; every test reports a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v` or `python tests/test_acceptance.py`.
"""
import random
import sys
import time
from fractions import Fraction
from math import gcd

import pytest

from kulikov.blowup_pic import SurfaceSpec, classify, is_affine, nakai_affine_test, spec_from_curves
from kulikov.cli import main as cli_main
from kulikov.exact_poly import MultiPoly, jacobian_det3, mat2_det, mat2_mul, smith_normal_form
from kulikov.kulikov_verify import (P, ChartMap, NetOfConics, base_locus, chart_jacobian_factorization, degree_census,
                                    fiber, pick_generic_conic, ramification_cubic, rational_point_on_cubic,
                                    standard_net, verify_all)
from kulikov.parsing import format_polynomial, parse_polynomial
from kulikov.plane_curves import (CommonComponentError, ConjugateClass, PlaneCurve, ProjPoint,
                                  binary_quadratic_discriminant, intersection_cycle,
                                  intersection_multiplicity, multiplicity_at, tangent_cone)
from kulikov.ramanujam import ramanujam_fixture

NET = standard_net()
R = ramification_cubic()
R_TEXT = "X1^2*X2 + X1^2*X3 + X2^2*X1 + X2^2*X3 + X3^2*X1 + X3^2*X2 - 6*X1*X2*X3"

_reporter = None


@pytest.fixture(autouse=True)
def _grab_reporter(request):
    global _reporter
    _reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    yield


def report(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    if _reporter is not None:
        _reporter.write_line(line)
    else:
        print(line)
    assert ok, line


def test_criterion_01_ramification_identity():
    t = time.perf_counter()
    J = jacobian_det3(*NET.polys)
    ok = J == R.scale(-36) and J.evaluate((1, 1, 0)) == -72
    elapsed = time.perf_counter() - t
    report(1, "jacobian(q1, q2, q3) = -36 * R, J(1,1,0) = -72", ok and elapsed < 1, f"{elapsed:.3f} s")


def test_criterion_02_base_locus():
    locus = base_locus(NET)
    witnesses = [NET.polys[0].evaluate(x) for x in ((1, 1, -1), (1, -1, 1), (1, -1, -1))]
    report(2, "base locus is exactly {(1:1:1)}", locus == [P] and witnesses == [4, 4, 4],
           f"witnesses {witnesses}")


def test_criterion_03_node():
    cone = tangent_cone(R, P)
    disc = binary_quadratic_discriminant(cone.poly)
    report(3, "R has a node at P", multiplicity_at(R, P) == 2 and cone.degree == 2 and disc != 0,
           f"discriminant {disc}")


def test_criterion_04_generic_conic():
    seeds = [0, 1, 2, 3, 42, 1234]
    details, ok = [], True
    for seed in seeds:
        gc = pick_generic_conic(NET, seed)
        cyc = intersection_cycle(gc.conic, R, seed)
        rest = [(loc, m) for loc, m in cyc.entries if loc != P]
        residual = sum(loc.size if isinstance(loc, ConjugateClass) else 1 for loc, _ in rest)
        ok &= (gc.passed and gc.draws <= 1000 and cyc.total == 6 and cyc.multiplicity_at(P) == 2
               and residual == 4 and all(m == 1 for _, m in rest))
        details.append(f"{seed}:{gc.lam}")
    report(4, f"generic conic found and certified for {len(seeds)} seeds", ok, ", ".join(details))


def test_criterion_05_charts():
    reps = [chart_jacobian_factorization(ChartMap.of(c), NET) for c in ("U", "V")]
    ok = all(r.exceptional_exponent == 0 and r.residual_matches_r_tilde and r.constant for r in reps)
    report(5, "both blow-up charts unramified off the strict transform of R", ok,
           ", ".join(f"{r.chart_id}: residual = {r.constant} * R~" for r in reps))


def test_criterion_06_census():
    t = time.perf_counter()
    census = degree_census(NET, 50, 42)
    counted = all(f.distinct_points == 3 and f.reduced and f.base_point_multiplicity == 1
                  for _, f, _ in census.samples)
    x = rational_point_on_cubic(R, (1, 2))
    branch = fiber(NET, NET.image(x.coords))
    elapsed = time.perf_counter() - t
    ok = (census.passed and counted and len(census.samples) == 50 and x != P
          and R.evaluate(x.coords) == 0 and not branch.reduced and elapsed < 60)
    report(6, "50 samples give 3 reduced preimages; a point of R gives a non-reduced fiber", ok,
           f"histogram {census.histogram}, fiber over image of {x}: {branch.multiplicity_pattern}, "
           f"{elapsed:.1f} s")


def _valid_specs(max_degree):
    for d1 in range(1, max_degree + 1):
        for d2 in range(1, max_degree + 1):
            for m1 in range(0, d1 if d1 > 1 else 2):
                for m2 in range(0, d2 if d2 > 1 else 2):
                    if m1 + m2 >= 1:
                        yield SurfaceSpec(d1, m1, d2, m2)


def test_criterion_07_classifier():
    a = classify(SurfaceSpec(3, 2, 2, 1))
    b = classify(SurfaceSpec(1, 1, 1, 1))
    c = classify(SurfaceSpec(1, 1, 1, 0))
    d = classify(SurfaceSpec(2, 1, 2, 1))
    table = (a.affine and a.factorial and a.determinant == -1 and a.picard_trivial
             and not b.affine
             and c.affine and c.factorial
             and d.affine and not d.factorial and d.picard_invariants == (1, 0))
    specs = list(_valid_specs(8))
    scan = all(is_affine(s) == nakai_affine_test(s)
               and (abs(classify(s).determinant) == 1) == classify(s).picard_trivial for s in specs)
    report(7, "classifier table and exhaustive scan", table and scan, f"{len(specs)} specs with d <= 8")


def test_criterion_08_ramanujam():
    fx = ramanujam_fixture()
    cyc = intersection_cycle(fx.cubic, fx.conic)
    spec = spec_from_curves(fx.cubic, fx.conic, fx.transverse_point)
    rep = classify(spec)
    ok = (cyc.total == 6 and dict(cyc.entries) == {fx.contact_point: 5, fx.transverse_point: 1}
          and multiplicity_at(fx.cubic, fx.cusp) == 2
          and spec.as_tuple() == (3, 1, 2, 1) and rep.affine and rep.factorial)
    report(8, "cuspidal cubic with a 5-fold contact conic classifies as factorial", ok,
           f"conic {format_polynomial(fx.conic.poly)}, P = {fx.transverse_point}")


def _random_form(rng, d, point_mult, transform):
    terms = {(a, b, d - a - b): rng.randint(-3, 3)
             for a in range(d + 1) for b in range(d + 1 - a) if a + b >= point_mult}
    return MultiPoly(3, terms).substitute(transform)


def test_criterion_09_fulton_oracle():
    rng = random.Random(20261016)
    X = MultiPoly.gens(3)
    pairs = compared = 0
    ok = True
    while pairs < 120:
        A = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        if mat3_det(A) == 0:
            continue
        images = [sum((X[j].scale(A[i][j]) for j in range(3)), MultiPoly.zero(3)) for i in range(3)]
        f0 = _random_form(rng, rng.randint(1, 3), rng.randint(0, 2), images)
        g0 = _random_form(rng, rng.randint(1, 3), rng.randint(1, 2), images)
        try:
            f, g = PlaneCurve.from_poly(f0), PlaneCurve.from_poly(g0)
            cyc = intersection_cycle(f, g, pairs)
        except (ValueError, CommonComponentError):
            continue
        pairs += 1
        ok &= cyc.total == f.degree * g.degree
        for loc, m in cyc.entries:
            if isinstance(loc, ProjPoint):
                compared += 1
                ok &= intersection_multiplicity(f, g, loc) == m
    report(9, "Fulton multiplicities agree with the resultant cycle; Bezout holds", ok and compared >= 100,
           f"{pairs} pairs, {compared} rational points compared")


def mat3_det(A):
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def _snf_ok(m):
    U, D, V = smith_normal_form(m)
    return (mat2_mul(mat2_mul(U, m), V) == D and abs(mat2_det(U)) == 1 and abs(mat2_det(V)) == 1
            and D[0][1] == D[1][0] == 0 and D[0][0] >= 0 and D[1][1] >= 0
            and D[0][0] == gcd(*m[0], *m[1]) and D[0][0] * D[1][1] == abs(mat2_det(m)))


def _random_poly(rng):
    terms = {}
    for _ in range(rng.randint(0, 8)):
        d = rng.randint(0, 5)
        a = rng.randint(0, d)
        b = rng.randint(0, d - a)
        terms[(a, b, d - a - b)] = Fraction(rng.randint(-20, 20), rng.choice([1, 1, 2, 3, 7]))
    return MultiPoly(3, terms)


def test_criterion_10_infrastructure(capsys):
    rng = random.Random(10)
    snf = all(_snf_ok(tuple(tuple(rng.randint(-60, 60) for _ in range(2)) for _ in range(2)))
              for _ in range(1000))
    polys = [_random_poly(rng) for _ in range(1000)]
    round_trip = all(parse_polynomial(format_polynomial(p)) == p for p in polys)

    outputs = []
    for _ in range(2):
        cli_main(["fiber-census", "--seed", "11", "--samples", "4"])
        outputs.append(capsys.readouterr().out)
    identical = outputs[0] == outputs[1] and outputs[0] != ""

    tampered_net = [parse_polynomial("4*X1^2 - X1*X2 - X1*X3 - X2*X3"), *NET.polys[1:]]
    controls = {
        "net 3 -> 4": (verify_all(42, 3, net=NetOfConics.from_polys(tampered_net)), "base_locus"),
        "R smooth at P": (verify_all(42, 3, r_form=parse_polynomial(R_TEXT + " + (X1 - X3)*X3^2")), "node_at_P"),
        "R + (X1 - X3)^3": (verify_all(42, 3, r_form=parse_polynomial(R_TEXT + " + (X1 - X3)^3")),
                            "chart_unramifiedness_U"),
        "reducible conic": (verify_all(42, 3, conic_lambda=(1, -1, 0)), "conic_genericity"),
    }
    negatives = all(not cert.check(name).passed for cert, name in controls.values())
    report(10, "SNF, parser round trip, byte-identical reruns, negative controls",
           snf and round_trip and identical and negatives,
           f"snf={snf}, round_trip={round_trip}, identical={identical}, controls={negatives}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
