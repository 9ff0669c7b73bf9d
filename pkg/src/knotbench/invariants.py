"""Classical knot invariants computed from a Seifert matrix.

Everything here is exact: the Alexander polynomial is a determinant over
Z[t], the signature function is evaluated through certified interval
arithmetic, and jump angles of the signature function are kept as algebraic
numbers via the substitution x = t + 1/t, which turns unit-circle roots of
the Alexander polynomial into real roots of an integer polynomial in
(-2, 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import PossiblySingularError, PreconditionError
from .hermitian import interval_symmetric_signature
from .intervals import AlgebraicAngle, IntervalReal, cos_2pi, format_decimal, sin_2pi
from .polynomials import (
    LaurentPoly,
    count_real_roots,
    cyclotomic_poly,
    factor_integer_poly,
    poly_add,
    poly_divmod,
    poly_gcd,
    poly_matrix_det,
    poly_scale,
    poly_squarefree_part,
    poly_sub,
    poly_to_str,
    poly_trim,
    sturm_isolate,
)
from .seifert import SeifertMatrix

_BASE_PREC = 64


# ---------------------------------------------------------------------------
# Alexander polynomial and friends


def alexander_polynomial(v: SeifertMatrix) -> LaurentPoly:
    """det(V - t V^T), normalized so Delta(t) = Delta(1/t) and Delta(1) = 1."""
    n = v.size
    if n == 0:
        return LaurentPoly.constant(1)
    mat = [[poly_trim((v.rows[i][j], -v.rows[j][i])) for j in range(n)]
           for i in range(n)]
    det = poly_matrix_det(mat)
    return LaurentPoly.from_int_poly(det).unit_normalize_symmetric()


def d0(v: SeifertMatrix) -> int:
    """Span of the Alexander polynomial; at most 2 * genus."""
    return alexander_polynomial(v).span


def determinant(v: SeifertMatrix) -> int:
    """|Delta(-1)|, the knot determinant."""
    val = abs(alexander_polynomial(v)(-1))
    assert val.denominator == 1
    return int(val)


# ---------------------------------------------------------------------------
# Arf invariant


def _pairing(j_rows, u: int, w: int) -> int:
    # u^T J w over GF(2); vectors are bitmasks
    acc = 0
    i = 0
    uu = u
    while uu:
        if uu & 1:
            acc ^= bin(j_rows[i] & w).count("1") & 1
        uu >>= 1
        i += 1
    return acc


def arf(v: SeifertMatrix) -> int:
    """Arf invariant of the mod-2 quadratic form x -> x.Vx."""
    n = v.size
    if n == 0:
        return 0
    j_rows = [0] * n
    for i in range(n):
        for j in range(n):
            if (v.rows[i][j] + v.rows[j][i]) & 1:
                j_rows[i] |= 1 << j

    def q(x: int) -> int:
        acc = 0
        idx = [i for i in range(n) if x >> i & 1]
        for i in idx:
            for j in idx:
                acc += v.rows[i][j]
        return acc & 1

    basis = [1 << i for i in range(n)]
    total = 0
    while basis:
        e = basis[0]
        f = None
        for w in basis[1:]:
            if _pairing(j_rows, e, w):
                f = w
                break
        assert f is not None, "intersection form degenerate mod 2"
        total ^= q(e) & q(f)
        rest = []
        for u in basis:
            if u is e or u is f:
                continue
            if _pairing(j_rows, u, f):
                u ^= e
            if _pairing(j_rows, u, e):
                u ^= f
            rest.append(u)
        basis = rest
    return total


def arf_via_determinant(v: SeifertMatrix) -> int:
    """Determinant rule: Arf = 0 iff |Delta(-1)| = +-1 mod 8."""
    return 0 if determinant(v) % 8 in (1, 7) else 1


# ---------------------------------------------------------------------------
# Levine-Tristram signatures


def _omega_is_alexander_root(delta: LaurentPoly, theta: Fraction) -> bool:
    coeffs, _ = delta.to_int_poly()
    deg = len(coeffs) - 1
    q = theta.denominator
    # omega is a root iff the q-th cyclotomic polynomial divides Delta;
    # impossible already when phi(q) > deg, and phi(q) >= sqrt(q/2)
    if q > max(2 * deg * deg, 2):
        return False
    phi = cyclotomic_poly(q)
    if len(phi) - 1 > deg:
        return False
    return not poly_divmod(coeffs, phi)[1]


def levine_tristram(v: SeifertMatrix, theta: Fraction,
                    _delta: Optional[LaurentPoly] = None) -> int:
    """Signature of (1-w)V + (1-conj w)V^T at w = exp(2 pi i theta).

    The hermitian form is realified to a symmetric matrix of twice the
    size with certified interval entries; its signature is exactly twice
    the twisted signature.
    """
    theta = Fraction(theta)
    if not 0 < theta < 1:
        raise PreconditionError("theta must lie in (0, 1)")
    n = v.size
    if n == 0:
        return 0
    delta = alexander_polynomial(v) if _delta is None else _delta
    if _omega_is_alexander_root(delta, theta):
        raise PossiblySingularError(
            "possibly singular: omega is a root of the Alexander polynomial")

    sym = [[v.rows[i][j] + v.rows[j][i] for j in range(n)] for i in range(n)]
    skew = [[v.rows[j][i] - v.rows[i][j] for j in range(n)] for i in range(n)]

    def entries(prec_bits: int):
        one_minus_c = 1 - cos_2pi(theta, prec_bits)
        s = sin_2pi(theta, prec_bits)
        a = [[one_minus_c * sym[i][j] for j in range(n)] for i in range(n)]
        b = [[s * skew[i][j] for j in range(n)] for i in range(n)]
        out = []
        for i in range(n):
            out.append(a[i] + [-x for x in b[i]])
        for i in range(n):
            out.append(b[i] + a[i])
        return out

    sig = interval_symmetric_signature(
        entries(_BASE_PREC),
        refine=lambda r: entries(_BASE_PREC << (r + 1)),
        work_bits=4 * _BASE_PREC)
    assert sig % 2 == 0
    return sig // 2


def _laurent_to_x(delta: LaurentPoly) -> tuple:
    """Rewrite a symmetric Laurent polynomial via x = t + 1/t.

    Uses the integer Chebyshev-type basis D_0 = 2, D_1 = x,
    D_{k+1} = x D_k - D_{k-1}, for which t^k + t^-k = D_k(t + 1/t).
    """
    if not delta.is_symmetric():
        raise ValueError("polynomial is not symmetric")
    out = poly_trim((delta.coeff(0),))
    d_prev, d_cur = (2,), (0, 1)  # D_0, D_1
    for k in range(1, delta.max_exp + 1):
        c = delta.coeff(k)
        if c:
            out = poly_add(out, poly_scale(d_cur, c))
        d_prev, d_cur = d_cur, poly_sub((0,) + tuple(d_cur), d_prev)
    return poly_trim(out)


@dataclass(frozen=True)
class SignatureStepFunction:
    """The Levine-Tristram signature as a step function of theta in (0, 1).

    ``jumps`` lists the angles where the Alexander polynomial has a
    unit-circle root (sorted, conjugate-symmetric); ``values`` holds the
    constant signature on the open arcs between consecutive jumps, arcs
    adjoining theta = 0 included.  The value exactly at a jump angle is
    not defined.
    """

    jumps: tuple
    values: tuple
    x_poly: tuple
    delta_coeffs: tuple

    @property
    def is_zero(self) -> bool:
        return all(val == 0 for val in self.values)

    def value_at(self, theta: Fraction) -> int:
        theta = Fraction(theta)
        if not 0 < theta < 1:
            raise PreconditionError("theta must lie in (0, 1)")
        delta = LaurentPoly.from_int_poly(self.delta_coeffs)
        if _omega_is_alexander_root(delta, theta):
            raise PreconditionError(
                "signature undefined exactly at a jump angle")
        k = 0
        for angle in self.jumps:
            enc = angle.enclosure(_BASE_PREC)
            while enc.contains(theta):
                enc = angle.enclosure_to_width(enc.width / 16)
            if theta > enc.hi:
                k += 1
        return self.values[k]

    def negate(self) -> "SignatureStepFunction":
        return SignatureStepFunction(self.jumps,
                                     tuple(-v for v in self.values),
                                     self.x_poly, self.delta_coeffs)


def signature_function(v: SeifertMatrix) -> SignatureStepFunction:
    """Full signature step function: exact jump angles plus arc values."""
    delta = alexander_polynomial(v)
    coeffs, _ = delta.to_int_poly()
    p = _laurent_to_x(delta)
    ps = poly_squarefree_part(p)
    boxes = sturm_isolate(p, Fraction(-2), Fraction(2)) if len(p) > 1 else []

    _, factors = factor_integer_poly(ps)
    angles_low = []
    for lo, hi in boxes:
        minpoly = None
        for f, _mult in factors:
            if len(f) > 1 and count_real_roots(f, lo, hi) == 1:
                minpoly = f
                break
        assert minpoly is not None
        angles_low.append(AlgebraicAngle(minpoly, lo, hi, upper=False))
    # theta = acos(x/2)/2pi is decreasing in x
    angles_low.sort(key=lambda a: a.x_lo, reverse=True)
    jumps = tuple(angles_low
                  + [a.conjugate() for a in reversed(angles_low)])

    if not jumps:
        sample = Fraction(1, 2)
        return SignatureStepFunction((), (levine_tristram(v, sample, delta),),
                                     ps, coeffs)

    # shrink enclosures until consecutive jump enclosures are disjoint
    prec = _BASE_PREC
    while True:
        encs = [a.enclosure(prec) for a in jumps]
        if all(encs[i].hi < encs[i + 1].lo for i in range(len(encs) - 1)):
            break
        for a in jumps:
            a.refine_x((a.x_hi - a.x_lo) / 16)
        prec = min(prec * 2, 1 << 14)

    samples = []
    first = encs[0]
    while first.lo - first.width <= 0:
        first = jumps[0].enclosure_to_width(first.width / 16)
    samples.append(first.lo - first.width)
    for i in range(len(jumps) - 1):
        samples.append((encs[i].hi + encs[i + 1].lo) / 2)
    last = encs[-1]
    while last.hi + last.width >= 1:
        last = jumps[-1].enclosure_to_width(last.width / 16)
    samples.append(last.hi + last.width)

    values = tuple(levine_tristram(v, s, delta) for s in samples)
    return SignatureStepFunction(jumps, values, ps, coeffs)


def signature_csv(sf: SignatureStepFunction, digits: int = 12) -> str:
    """Render the step function as CSV with decimal arc endpoints."""
    polys = []
    for a in sf.jumps:
        s = poly_to_str(a.poly)
        if s not in polys:
            polys.append(s)
    lines = ["# jump minimal polynomials (x = t + 1/t): "
             + ("; ".join(polys) if polys else "none")]
    lines.append("theta_lo,theta_hi,sigma")
    width = Fraction(1, 10 ** (digits + 2))
    points = ["0"]
    for a in sf.jumps:
        enc = a.enclosure_to_width(width)
        points.append(format_decimal(enc.mid, digits))
    points.append("1")
    for k, val in enumerate(sf.values):
        lines.append(f"{points[k]},{points[k + 1]},{val}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# fiberedness and Fox-Milnor obstructions


@dataclass(frozen=True)
class FiberednessReport:
    passes: bool
    reason: Optional[str] = None


def fibered_obstruction(v: SeifertMatrix,
                        claimed_genus: Optional[int] = None) -> FiberednessReport:
    """Necessary conditions for fiberedness: monic Alexander polynomial,
    and span equal to twice the claimed genus when one is supplied."""
    delta = alexander_polynomial(v)
    lead = delta.coeff(delta.max_exp)
    if abs(lead) != 1:
        return FiberednessReport(False, "not monic")
    if claimed_genus is not None and delta.span != 2 * claimed_genus:
        return FiberednessReport(
            False, f"degree {delta.span} != 2 * claimed genus {claimed_genus}")
    return FiberednessReport(True)


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def fox_milnor_test(delta: LaurentPoly) -> bool:
    """True iff Delta(t) = +-t^k f(t) f(1/t) for some integer polynomial f.

    Decided by pairing irreducible factors with their reciprocal mates;
    self-reciprocal factors need even multiplicity.  Necessary for a knot
    to be algebraically slice.
    """
    if delta.is_zero():
        raise ValueError("zero polynomial")
    coeffs, _ = delta.to_int_poly()
    content, factors = factor_integer_poly(coeffs)
    if not _is_square(abs(content)):
        return False
    mult = {f: m for f, m in factors}
    for f, m in factors:
        rev = poly_trim(tuple(reversed(f)))
        if rev[-1] < 0:
            rev = tuple(-c for c in rev)
        if rev == f:
            if m % 2:
                return False
        elif mult.get(rev) != m:
            return False
    return True


# ---------------------------------------------------------------------------
# algebraic concordance comparison


@dataclass(frozen=True)
class ConcordanceComparison:
    """Outcome of comparing the computable algebraic concordance invariants.

    ``indistinguishable`` is a semi-decision: the classical Arf invariant,
    the full signature step functions, and the Fox-Milnor condition on the
    product Alexander polynomial all agree.  (Twisted Arf invariants have
    no computational definition here and are not compared.)
    """

    indistinguishable: bool
    distinguished_by: tuple


def algebraically_concordant_test(v1: SeifertMatrix,
                                  v2: SeifertMatrix) -> ConcordanceComparison:
    found = []
    if arf(v1) != arf(v2):
        found.append("arf")

    d1 = alexander_polynomial(v1)
    d2 = alexander_polynomial(v2)
    p1 = poly_squarefree_part(_laurent_to_x(d1))
    p2 = poly_squarefree_part(_laurent_to_x(d2))
    n1 = count_real_roots(p1, -2, 2) if len(p1) > 1 else 0
    n2 = count_real_roots(p2, -2, 2) if len(p2) > 1 else 0
    g = poly_gcd(p1, p2)
    ng = count_real_roots(g, -2, 2) if len(g) > 1 else 0
    if not (n1 == n2 == ng):
        found.append("signature function")
    else:
        sf1 = signature_function(v1)
        sf2 = signature_function(v2)
        if sf1.values != sf2.values:
            found.append("signature function")

    if not fox_milnor_test(d1 * d2):
        found.append("fox_milnor")
    return ConcordanceComparison(not found, tuple(found))
