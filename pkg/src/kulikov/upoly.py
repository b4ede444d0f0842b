"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions, index = power, with no trailing zeros.
The empty tuple is the zero polynomial.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

UPoly = tuple  # tuple[Fraction, ...]


def make(coeffs: Sequence) -> UPoly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: UPoly) -> int:
    return len(p) - 1


def lc(p: UPoly) -> Fraction:
    return p[-1]


def add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return make([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    return make([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return make(out)


def scale(a: UPoly, c) -> UPoly:
    return make([x * c for x in a])


def monic(p: UPoly) -> UPoly:
    if not p:
        return p
    c = p[-1]
    return tuple(x / c for x in p)


def divmod_(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    inv = 1 / b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = rem[k + len(b) - 1] * inv
        q[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] -= c * y
    return make(q), make(rem[: len(b) - 1])


def rem(a: UPoly, b: UPoly) -> UPoly:
    return divmod_(a, b)[1]


def exact_div(a: UPoly, b: UPoly) -> UPoly:
    q, r = divmod_(a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


def derivative(p: UPoly) -> UPoly:
    return make([i * p[i] for i in range(1, len(p))])


def evaluate(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose(p: UPoly, q: UPoly) -> UPoly:
    acc: UPoly = ()
    for c in reversed(p):
        acc = add(mul(acc, q), make([c]))
    return acc


def _primitive_int(p: UPoly) -> list[int]:
    den = lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _prem(a: list[int], b: list[int]) -> list[int]:
    # pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b, integer coefficients
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and any(r):
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, y in enumerate(b):
            r[shift + j] -= lr * y
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def gcd_(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd via the primitive-part PRS on integer images."""
    if not a:
        return monic(b)
    if not b:
        return monic(a)
    x, y = _primitive_int(a), _primitive_int(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem(x, y)
        if not r:
            break
        x, y = y, _primitive_int(make(r))
    return monic(make(y))


def squarefree(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm; monic squarefree pairwise-coprime factors, nonconstant only."""
    if not p:
        raise ValueError("squarefree decomposition of zero")
    out: list[tuple[UPoly, int]] = []
    dp = derivative(p)
    a = gcd_(p, dp)
    b = exact_div(p, a)
    c = exact_div(dp, a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = gcd_(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        if degree(a) > 0:
            out.append((monic(a), i))
        i += 1
    return out


def _sturm_chain(p: UPoly) -> list[UPoly]:
    chain = [p, derivative(p)]
    while chain[-1] and degree(chain[-1]) > 0:
        r = rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(scale(r, -1))
    return chain


def _sign_changes(chain: list[UPoly], x) -> int:
    signs = [s for s in (evaluate(q, x) for q in chain) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def rational_roots(p: UPoly) -> list[Fraction]:
    """All rational roots of a squarefree p, ascending.

    Works on the monic integer transform g(y) = lc^(n-1) p(y / lc), whose
    rational roots are integers; integer roots are located by Sturm bisection.
    """
    if degree(p) < 1:
        return []
    ints = _primitive_int(p)
    n = len(ints) - 1
    a = ints[-1]
    g = [ints[k] * a ** (n - 1 - k) for k in range(n)] + [1]
    gq = make(g)
    bound = 1 + max(abs(c) for c in g[:-1])
    chain = _sturm_chain(gq)
    found: list[int] = []

    # count roots in (lo, hi] is V(lo) - V(hi) for squarefree input
    def search(lo: int, hi: int, vlo: int, vhi: int) -> None:
        if vlo - vhi == 0:
            return
        if hi - lo == 1:
            if evaluate(gq, hi) == 0:
                found.append(hi)
            return
        mid = (lo + hi) // 2
        vmid = _sign_changes(chain, mid)
        search(lo, mid, vlo, vmid)
        search(mid, hi, vmid, vhi)

    lo, hi = -bound - 1, bound
    search(lo, hi, _sign_changes(chain, lo), _sign_changes(chain, hi))
    return sorted(Fraction(y, a) for y in found)


def inverse_mod(a: UPoly, h: UPoly) -> UPoly:
    """Inverse of a modulo h; raises if gcd(a, h) is not constant."""
    r0, r1 = h, rem(a, h)
    s0, s1 = (), make([1])
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
    if degree(r0) != 0:
        raise ZeroDivisionError("not invertible modulo h")
    return rem(scale(s0, 1 / r0[0]), h)
