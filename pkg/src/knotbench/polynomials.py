"""Exact univariate polynomial arithmetic.

Integer polynomials are dense coefficient tuples, lowest degree first, with
no trailing zeros; the zero polynomial is the empty tuple.  Laurent
polynomials carry a sparse exponent -> coefficient map and may have negative
exponents.  Everything is big-integer / rational exact; no floats.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceededError, InputError

Coeffs = tuple  # integer or Fraction coefficients, index = degree

FACTOR_DEGREE_BUDGET = 24


# ---------------------------------------------------------------------------
# dense polynomial helpers


def poly_trim(c: Sequence) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_degree(p: Sequence) -> int:
    """Degree, with the zero polynomial mapped to -1."""
    return len(p) - 1


def poly_add(p: Sequence, q: Sequence) -> Coeffs:
    n = max(len(p), len(q))
    return poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                      for i in range(n)])


def poly_neg(p: Sequence) -> Coeffs:
    return tuple(-a for a in p)


def poly_sub(p: Sequence, q: Sequence) -> Coeffs:
    return poly_add(p, poly_neg(q))


def poly_mul(p: Sequence, q: Sequence) -> Coeffs:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_trim(out)


def poly_scale(p: Sequence, s) -> Coeffs:
    if s == 0:
        return ()
    return tuple(a * s for a in p)


def poly_eval(p: Sequence, x):
    """Horner evaluation; exact for int/Fraction arguments."""
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def poly_derivative(p: Sequence) -> Coeffs:
    return poly_trim([i * a for i, a in enumerate(p)][1:])


def poly_divmod(p: Sequence, q: Sequence):
    """Division over the rationals; returns (quotient, remainder)."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(a) for a in p]
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = len(q) - 1
    lead = Fraction(q[-1])
    while len(rem) - 1 >= dq and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < dq:
            break
        k = len(rem) - 1 - dq
        f = rem[-1] / lead
        quo[k] = f
        for i, b in enumerate(q):
            rem[k + i] -= f * b
        rem.pop()
    return poly_trim(quo), poly_trim(rem)


def poly_div_exact(p: Sequence, q: Sequence) -> Coeffs:
    """Exact division; integer output when the inputs divide over Z."""
    quo, rem = poly_divmod(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    out = []
    for a in quo:
        if isinstance(a, Fraction):
            if a.denominator != 1:
                return quo
            out.append(a.numerator)
        else:
            out.append(a)
    return poly_trim(out)


def poly_content(p: Sequence) -> int:
    """GCD of the integer coefficients, signed by the leading coefficient."""
    if not p:
        return 0
    g = 0
    for a in p:
        g = math.gcd(g, abs(int(a)))
    return -g if p[-1] < 0 else g


def poly_primitive(p: Sequence) -> Coeffs:
    c = poly_content(p)
    if c == 0:
        return ()
    return tuple(int(a) // c for a in p)


def poly_gcd(p: Sequence, q: Sequence) -> Coeffs:
    """Primitive gcd over Z with positive leading coefficient."""
    a = [Fraction(x) for x in p]
    b = [Fraction(x) for x in q]
    while poly_trim(b):
        a, b = b, list(poly_divmod(a, b)[1])
    a = poly_trim(a)
    if not a:
        return ()
    # clear denominators, then strip the content
    den = 1
    for x in a:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return poly_primitive([int(x * den) for x in a])


def poly_squarefree_part(p: Sequence) -> Coeffs:
    if not p:
        return ()
    g = poly_gcd(p, poly_derivative(p))
    if poly_degree(g) <= 0:
        return poly_primitive(p)
    return poly_primitive(poly_div_exact(poly_primitive(p), g))


def poly_reciprocal(p: Sequence) -> Coeffs:
    """x^deg(p) * p(1/x); the coefficient sequence reversed."""
    return poly_trim(list(reversed(poly_trim(p))))


def poly_to_str(p: Sequence, var: str = "x") -> str:
    if not p:
        return "0"
    parts = []
    for e in range(len(p) - 1, -1, -1):
        a = p[e]
        if a == 0:
            continue
        mag = abs(a)
        if e == 0:
            term = str(mag)
        else:
            pow_s = var if e == 1 else f"{var}^{e}"
            term = pow_s if mag == 1 else f"{mag}*{pow_s}"
        if not parts:
            parts.append(term if a > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if a > 0 else f"- {term}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Sturm sequences and root isolation


def sturm_sequence(p: Sequence) -> list:
    """Sturm chain of the squarefree part of p, over the rationals."""
    sf = poly_squarefree_part(p)
    chain = [tuple(Fraction(a) for a in sf),
             tuple(Fraction(a) for a in poly_derivative(sf))]
    while poly_trim(chain[-1]):
        rem = poly_divmod(chain[-2], chain[-1])[1]
        chain.append(poly_neg(rem))
    chain.pop()
    return chain


def _sign_variations(chain, x) -> int:
    signs = []
    for q in chain:
        v = poly_eval(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_halfopen(chain, p_sf, a, b) -> int:
    """Distinct real roots of the squarefree polynomial in (a, b]."""
    return _sign_variations(chain, a) - _sign_variations(chain, b)


def count_real_roots(p: Sequence, lo, hi) -> int:
    """Distinct real roots of p in the open interval (lo, hi)."""
    if not poly_trim(p):
        raise InputError("indeterminate roots")
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        return 0
    sf = poly_squarefree_part(p)
    chain = sturm_sequence(sf)
    n = count_roots_halfopen(chain, sf, lo, hi)
    if poly_eval(sf, hi) == 0:
        n -= 1
    return n


def sturm_isolate(p: Sequence, lo, hi) -> list:
    """Disjoint rational isolating intervals for the distinct real roots of
    p in the open interval (lo, hi).

    Interval endpoints are never roots; each interval contains exactly one
    root of the squarefree part of p.
    """
    if not poly_trim(p):
        raise InputError("indeterminate roots")
    lo = Fraction(lo)
    hi = Fraction(hi)
    if not lo < hi:
        return []
    sf = poly_squarefree_part(p)
    if poly_degree(sf) == 0:
        return []
    chain = sturm_sequence(sf)

    def count_open(a, b):
        n = count_roots_halfopen(chain, sf, a, b)
        if poly_eval(sf, b) == 0:
            n -= 1
        return n

    def nudge_off_root(x, toward):
        # replace a root endpoint by a nearby non-root on the `toward` side
        step = Fraction(toward - x, 4)
        y = x + step
        while poly_eval(sf, y) == 0:
            step /= 2
            y = x + step
        return y

    out = []

    def split(a, b, n):
        if n == 0:
            return
        if n == 1:
            out.append((a, b))
            return
        m = (a + b) / 2
        if poly_eval(sf, m) == 0:
            # the midpoint is itself a root: carve out a tiny box around it
            w = (b - a) / 8
            while (poly_eval(sf, m - w) == 0 or poly_eval(sf, m + w) == 0
                   or count_open(m - w, m + w) != 1):
                w /= 2
            out.append((m - w, m + w))
            split(a, m - w, count_open(a, m - w))
            split(m + w, b, count_open(m + w, b))
            return
        split(a, m, count_open(a, m))
        split(m, b, count_open(m, b))

    a = nudge_off_root(lo, hi) if poly_eval(sf, lo) == 0 else lo
    b = nudge_off_root(hi, lo) if poly_eval(sf, hi) == 0 else hi
    if not a < b:
        return []
    split(a, b, count_open(a, b))
    out.sort()
    return out


def refine_isolating_interval(p_sf: Sequence, a: Fraction, b: Fraction,
                              width: Fraction):
    """Bisect an isolating interval of the squarefree p_sf down to `width`.

    Endpoint signs must differ (simple root); returned endpoints are never
    roots.
    """
    fa = poly_eval(p_sf, a)
    fb = poly_eval(p_sf, b)
    if fa == 0 or fb == 0:
        raise ValueError("isolating interval endpoints must not be roots")
    while b - a > width:
        m = (a + b) / 2
        fm = poly_eval(p_sf, m)
        if fm == 0:
            w = (b - a) / 8
            while poly_eval(p_sf, m - w) == 0 or poly_eval(p_sf, m + w) == 0:
                w /= 2
            a, b = m - w, m + w
            fa = poly_eval(p_sf, a)
            fb = poly_eval(p_sf, b)
            continue
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return a, b


# ---------------------------------------------------------------------------
# factorization over Z (desk scale)


def factor_integer_poly(p: Sequence, degree_budget: int = FACTOR_DEGREE_BUDGET):
    """Factor an integer polynomial into content and irreducible parts.

    Returns ``(content, [(factor, multiplicity), ...])`` where each factor
    is primitive with positive leading coefficient and irreducible over Q,
    and content * prod(factor^mult) reproduces the input exactly.
    """
    p = poly_trim(p)
    if not p:
        raise InputError("indeterminate roots")
    if poly_degree(p) > degree_budget:
        raise BudgetExceededError("degree too large")
    if poly_degree(p) == 0:
        return int(p[0]), []

    from sympy import Poly, symbols

    x = symbols("x")
    sp = Poly(list(reversed([int(a) for a in p])), x, domain="ZZ")
    content, factors = sp.factor_list()
    out = []
    for f, mult in factors:
        coeffs = poly_trim(list(reversed([int(c) for c in f.all_coeffs()])))
        if coeffs[-1] < 0:
            coeffs = poly_neg(coeffs)
            if mult % 2 == 1:
                content = -content
        out.append((coeffs, int(mult)))
    out.sort()
    return int(content), out


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """Sparse Laurent polynomial with big-integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable = ()):
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:
            items = coeffs
        c = {}
        for e, a in items:
            if a:
                c[int(e)] = c.get(int(e), 0) + int(a)
                if not c[int(e)]:
                    del c[int(e)]
        self._c = c

    @classmethod
    def from_int_poly(cls, p: Sequence, shift: int = 0) -> "LaurentPoly":
        return cls({i + shift: a for i, a in enumerate(p)})

    @classmethod
    def constant(cls, a: int) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def t(cls, exponent: int = 1) -> "LaurentPoly":
        return cls({exponent: 1})

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    @property
    def support(self):
        return sorted(self._c)

    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        return min(self._c) if self._c else 0

    @property
    def max_exp(self) -> int:
        return max(self._c) if self._c else 0

    @property
    def span(self) -> int:
        """Max exponent minus min exponent (0 for constants and 0)."""
        return self.max_exp - self.min_exp if self._c else 0

    def __add__(self, o):
        o = _as_laurent(o)
        c = dict(self._c)
        for e, a in o._c.items():
            c[e] = c.get(e, 0) + a
        return LaurentPoly(c)

    def __sub__(self, o):
        return self + (-_as_laurent(o))

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()})

    def __mul__(self, o):
        o = _as_laurent(o)
        c = {}
        for e1, a1 in self._c.items():
            for e2, a2 in o._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + a1 * a2
        return LaurentPoly(c)

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, o):
        if isinstance(o, int):
            o = LaurentPoly.constant(o)
        return isinstance(o, LaurentPoly) and self._c == o._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly({e + k: a for e, a in self._c.items()})

    def reciprocal(self) -> "LaurentPoly":
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: a for e, a in self._c.items()})

    def __call__(self, x):
        return sum(a * Fraction(x) ** e for e, a in self._c.items())

    def is_symmetric(self) -> bool:
        return self == self.reciprocal()

    def unit_normalize_symmetric(self) -> "LaurentPoly":
        """Multiply by +-t^k to center the support and make the value at 1
        positive; raises if the support cannot be centered."""
        if self.is_zero():
            return self
        s = self.min_exp + self.max_exp
        if s % 2:
            raise ValueError("support cannot be symmetrized by a unit shift")
        q = self.shift(-s // 2)
        v = q(1)
        if v < 0:
            q = -q
        if not q.is_symmetric():
            raise ValueError("polynomial is not reciprocal")
        return q

    def to_int_poly(self):
        """Return (coeffs, shift) with t^shift * poly == self."""
        if self.is_zero():
            return (), 0
        m = self.min_exp
        out = [0] * (self.span + 1)
        for e, a in self._c.items():
            out[e - m] = a
        return tuple(out), m

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            a = self._c[e]
            mag = abs(a)
            if e == 0:
                term = str(mag)
            else:
                pow_s = "t" if e == 1 else f"t^{e}"
                term = pow_s if mag == 1 else f"{mag}*{pow_s}"
            if not parts:
                parts.append(term if a > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if a > 0 else f"- {term}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self._c!r})"


def _as_laurent(o) -> LaurentPoly:
    if isinstance(o, LaurentPoly):
        return o
    if isinstance(o, int):
        return LaurentPoly.constant(o)
    raise TypeError(f"cannot coerce {type(o)!r} to LaurentPoly")


def poly_matrix_det(mat) -> Coeffs:
    """Determinant of a matrix of integer polynomials (coefficient tuples),
    by fraction-free Bareiss elimination over Z[x]."""
    n = len(mat)
    if n == 0:
        return (1,)
    a = [[poly_trim(e) for e in row] for row in mat]
    sign = 1
    prev = (1,)
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = poly_sub(poly_mul(a[i][j], a[k][k]),
                               poly_mul(a[i][k], a[k][j]))
                a[i][j] = poly_div_exact(num, prev) if num else ()
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return poly_neg(d) if sign < 0 else d


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Coeffs:
    """Coefficients of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("n must be positive")
    num = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = poly_div_exact(num, cyclotomic_poly(d))
    return num
