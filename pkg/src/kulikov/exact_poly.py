"""Exact multivariate polynomials over Q and the elimination primitives built on them."""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import upoly

Exponent = tuple  # tuple[int, ...]


def _grlex_key(e: Exponent):
    return (sum(e), e)


class MultiPoly:
    """Immutable polynomial in ``nvars`` variables with rational coefficients.

    Terms are kept sorted in graded lexicographic order (X1 > X2 > ...), so two
    equal polynomials have identical ``terms`` tuples.
    """

    __slots__ = ("nvars", "terms", "_lookup", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable = ()):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for e, c in items:
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "nvars", nvars)
        ordered = tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                               key=lambda t: _grlex_key(t[0]), reverse=True))
        object.__setattr__(self, "terms", ordered)
        object.__setattr__(self, "_lookup", dict(ordered))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors
    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, nvars: int) -> tuple["MultiPoly", ...]:
        return tuple(cls.var(nvars, i) for i in range(nvars))

    # -- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e: Exponent) -> Fraction:
        return self._lookup.get(tuple(e), Fraction(0))

    def total_degree(self) -> int:
        """Degree of the leading term; -1 for zero."""
        return sum(self.terms[0][0]) if self.terms else -1

    def min_degree(self) -> int:
        return min(sum(e) for e, _ in self.terms) if self.terms else -1

    def degree_in(self, i: int) -> int:
        return max((e[i] for e, _ in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e, _ in self.terms for i, x in enumerate(e) if x}

    def leading_term(self) -> tuple[Exponent, Fraction]:
        return self.terms[0]

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, [(e, c) for e, c in self.terms if sum(e) == d])

    def content_int(self) -> tuple[Fraction, "MultiPoly"]:
        """Split into (rational content, primitive integer polynomial with positive leading coefficient)."""
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for _, c in self.terms:
            den = den * c.denominator // gcd(den, c.denominator)
        g = 0
        for _, c in self.terms:
            g = gcd(g, int(c * den))
        if self.terms[0][1] < 0:
            g = -g
        content = Fraction(g, den)
        return content, self.scale(1 / content)

    # -- arithmetic
    def _check(self, other: "MultiPoly") -> None:
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._lookup)
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return MultiPoly(self.nvars, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, [(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        return MultiPoly(self.nvars, [(e, x * c) for e, x in self.terms])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, self.terms)))
        return self._hash

    def __repr__(self):
        from .parsing import format_polynomial
        return f"MultiPoly({format_polynomial(self)!r})"

    def __str__(self):
        from .parsing import format_polynomial
        return format_polynomial(self)

    # -- calculus and evaluation
    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms:
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def partial(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        out = []
        for e, c in self.terms:
            if e[i]:
                f = list(e)
                f[i] -= 1
                out.append((tuple(f), c * e[i]))
        return MultiPoly(self.nvars, out)

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        n = images[0].nvars
        if any(g.nvars != n for g in images):
            raise ValueError("images disagree on variable count")
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.constant(n, 1)} for _ in images]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        acc = MultiPoly.zero(n)
        for e, c in self.terms:
            t = MultiPoly.constant(n, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            acc = acc + t
        return acc

    # -- views in one variable
    def coefficients_in(self, i: int) -> dict[int, "MultiPoly"]:
        """Map k -> coefficient of x_i^k (still a poly in all nvars, with x_i absent)."""
        buckets: dict[int, list] = {}
        for e, c in self.terms:
            f = list(e)
            k = f[i]
            f[i] = 0
            buckets.setdefault(k, []).append((tuple(f), c))
        return {k: MultiPoly(self.nvars, v) for k, v in buckets.items()}

    def to_univariate(self, i: int | None = None) -> upoly.UPoly:
        vs = self.variables()
        if i is None:
            i = min(vs) if vs else 0
        if vs - {i}:
            raise ValueError("polynomial is not univariate")
        d = self.degree_in(i)
        coeffs = [Fraction(0)] * (d + 1)
        for e, c in self.terms:
            coeffs[e[i]] = c
        return upoly.make(coeffs)

    @classmethod
    def from_univariate(cls, p: Sequence, nvars: int = 1, i: int = 0) -> "MultiPoly":
        out = []
        for k, c in enumerate(p):
            e = [0] * nvars
            e[i] = k
            out.append((tuple(e), c))
        return cls(nvars, out)

    def drop_var(self, i: int) -> "MultiPoly":
        """Remove a variable that does not occur."""
        if self.degree_in(i) > 0:
            raise ValueError(f"variable {i} occurs")
        return MultiPoly(self.nvars - 1, [(e[:i] + e[i + 1:], c) for e, c in self.terms])


def arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def evaluate(p: MultiPoly, point: Sequence) -> Fraction:
    return p.evaluate(point)


def partial_derivative(p: MultiPoly, var_index: int) -> MultiPoly:
    return p.partial(var_index)


def substitute(p: MultiPoly, images: Sequence[MultiPoly]) -> MultiPoly:
    return p.substitute(images)


def divide(a: MultiPoly, b: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """Division by a single divisor in grlex order: a = q*b + r, no term of r divisible by lt(b)."""
    a._check(b)
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    lt_e, lt_c = b.leading_term()
    q: dict[Exponent, Fraction] = {}
    r: dict[Exponent, Fraction] = {}
    work = dict(a._lookup)
    while work:
        e = max(work, key=_grlex_key)
        c = work.pop(e)
        if all(x >= y for x, y in zip(e, lt_e)):
            shift = tuple(x - y for x, y in zip(e, lt_e))
            f = c / lt_c
            q[shift] = q.get(shift, 0) + f
            for be, bc in b.terms[1:]:
                ne = tuple(x + y for x, y in zip(be, shift))
                v = work.get(ne, 0) - f * bc
                if v:
                    work[ne] = v
                else:
                    work.pop(ne, None)
        else:
            r[e] = c
    return MultiPoly(a.nvars, q), MultiPoly(a.nvars, r)


def exact_divide(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    q, r = divide(a, b)
    if not r.is_zero():
        raise ArithmeticError("polynomial division is not exact")
    return q


def divides(b: MultiPoly, a: MultiPoly) -> bool:
    return divide(a, b)[1].is_zero()


def det(matrix: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Fraction-free Bareiss determinant over a polynomial ring."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    nv = matrix[0][0].nvars
    m = [list(row) for row in matrix]
    sign = 1
    prev = MultiPoly.constant(nv, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(nv)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(num, prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def jacobian_det3(f1: MultiPoly, f2: MultiPoly, f3: MultiPoly) -> MultiPoly:
    fs = (f1, f2, f3)
    if any(f.nvars != 3 for f in fs):
        raise ValueError("jacobian_det3 needs polynomials in exactly 3 variables")
    rows = [[f.partial(j) for j in range(3)] for f in fs]
    total = MultiPoly.zero(3)
    for perm in permutations(range(3)):
        inversions = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
        term = rows[0][perm[0]] * rows[1][perm[1]] * rows[2][perm[2]]
        total = total - term if inversions % 2 else total + term
    return total


def _sylvester_rows(f: dict[int, MultiPoly], m: int, g: dict[int, MultiPoly], n: int,
                    zero: MultiPoly, k: int = 0) -> list[list[MultiPoly]]:
    # rows x^(n-k-1) f ... f, x^(m-k-1) g ... g ; columns x^(m+n-k-1) ... x^0
    width = m + n - k
    rows = []
    for shift in range(n - k - 1, -1, -1):
        row = [zero] * width
        for p, c in f.items():
            row[width - 1 - (p + shift)] = c
        rows.append(row)
    for shift in range(m - k - 1, -1, -1):
        row = [zero] * width
        for p, c in g.items():
            row[width - 1 - (p + shift)] = c
        rows.append(row)
    return rows


def resultant(f: MultiPoly, g: MultiPoly, var_index: int) -> MultiPoly:
    """Sylvester resultant eliminating ``var_index``; the result keeps nvars with that variable absent."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    nv = f.nvars
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        if other.degree_in(var_index) > 0:
            return MultiPoly.zero(nv)
        return MultiPoly.constant(nv, 1)
    m, n = f.degree_in(var_index), g.degree_in(var_index)
    fc, gc = f.coefficients_in(var_index), g.coefficients_in(var_index)
    if m == 0:
        return fc[0] ** n
    if n == 0:
        return gc[0] ** m
    rows = _sylvester_rows(fc, m, gc, n, MultiPoly.zero(nv))
    return det(rows)


def squarefree_decomposition(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero polynomial")
    vs = p.variables()
    if len(vs) > 1:
        raise ValueError("squarefree decomposition needs a univariate polynomial")
    i = min(vs) if vs else 0
    return [(MultiPoly.from_univariate(f, p.nvars, i), k)
            for f, k in upoly.squarefree(p.to_univariate(i))]


# -- 2x2 integer matrices

IntMatrix2 = tuple  # ((a, b), (c, d))


def mat2_mul(a: IntMatrix2, b: IntMatrix2) -> IntMatrix2:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def mat2_det(a: IntMatrix2) -> int:
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def smith_normal_form(m: IntMatrix2) -> tuple[IntMatrix2, IntMatrix2, IntMatrix2]:
    """Return (U, D, V) with U*m*V = D, U and V unimodular, D = diag(d1, d2), d1 | d2, d_i >= 0."""
    a = [[int(m[i][j]) for j in range(2)] for i in range(2)]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def row_op(M, T):  # M <- T * M
        return [[T[i][0] * M[0][j] + T[i][1] * M[1][j] for j in range(2)] for i in range(2)]

    def col_op(M, T):  # M <- M * T
        return [[M[i][0] * T[0][j] + M[i][1] * T[1][j] for j in range(2)] for i in range(2)]

    while True:
        if a[0][0] == 0:
            # bring any nonzero entry to the corner
            nz = [(i, j) for i in range(2) for j in range(2) if a[i][j]]
            if not nz:
                break
            i, j = nz[0]
            if i:
                T = [[0, 1], [1, 0]]
                a, U = row_op(a, T), row_op(U, T)
            if j:
                T = [[0, 1], [1, 0]]
                a, V = col_op(a, T), col_op(V, T)
        # clear column 0 below the pivot
        if a[1][0]:
            if a[1][0] % a[0][0] == 0:
                T = [[1, 0], [-(a[1][0] // a[0][0]), 1]]
            else:
                g, x, y = _xgcd(a[0][0], a[1][0])
                p, q = a[0][0] // g, a[1][0] // g
                T = [[x, y], [-q, p]]
            a, U = row_op(a, T), row_op(U, T)
        # clear row 0 right of the pivot
        if a[0][1]:
            if a[0][1] % a[0][0] == 0:
                T = [[1, -(a[0][1] // a[0][0])], [0, 1]]
            else:
                g, x, y = _xgcd(a[0][0], a[0][1])
                p, q = a[0][0] // g, a[0][1] // g
                T = [[x, -q], [y, p]]
            a, V = col_op(a, T), col_op(V, T)
        if a[1][0] == 0 and a[0][1] == 0:
            if a[0][0] and a[1][1] % a[0][0]:
                # fold d2 into row 0 to restore divisibility
                T = [[1, 1], [0, 1]]
                a, U = row_op(a, T), row_op(U, T)
                continue
            break
    for i in range(2):
        if a[i][i] < 0:
            T = [[1, 0], [0, 1]]
            T[i][i] = -1
            a, U = row_op(a, T), row_op(U, T)
    to_t = lambda M: tuple(tuple(r) for r in M)
    return to_t(U), to_t(a), to_t(V)


class HomogeneousForm:
    """A nonzero polynomial all of whose terms share one total degree."""

    __slots__ = ("poly", "degree")

    def __init__(self, poly: MultiPoly, degree: int | None = None):
        if poly.is_zero():
            raise ValueError("homogeneous form must be nonzero")
        if not poly.is_homogeneous():
            raise ValueError(f"{poly} is not homogeneous")
        d = poly.total_degree()
        if degree is not None and degree != d:
            raise ValueError(f"form has degree {d}, not {degree}")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "degree", d)

    def __setattr__(self, name, value):
        raise AttributeError("HomogeneousForm is immutable")

    def __eq__(self, other):
        return isinstance(other, HomogeneousForm) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"HomogeneousForm({str(self.poly)!r})"
