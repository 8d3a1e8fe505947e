"""Truncated Laurent series over a coefficient algebra, the two routes to
(1 + a t)^-1, the finitely many bad beta, and the t-expansion of a word at
x_i = 1 + c_i t.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from sympy import divisors

from .algebra import Element
from .errors import (
    InsufficientPoints,
    LeadingCoefficientNotInvertible,
    NotInvertible,
    RootSearchUnsupported,
    TruncationError,
)
from .minpoly import minimal_polynomial

DEFAULT_ORDER = 12


class LaurentSeries:
    """sum_{d=val}^{order} c_d t^d + O(t^{order+1}).

    Coefficients past ``order`` are unknown, not zero.  The stored lowest
    coefficient is nonzero unless the series is zero up to ``order``.
    """

    __slots__ = ("alg", "val", "coeffs", "order")

    def __init__(self, alg, val: int, coeffs, order: int):
        coeffs = list(coeffs)[: max(order - val + 1, 0)]
        lead = 0
        while lead < len(coeffs) and coeffs[lead].is_zero():
            lead += 1
        self.alg = alg
        self.coeffs = tuple(coeffs[lead:])
        self.val = val + lead if self.coeffs else order + 1
        self.order = order

    @classmethod
    def from_terms(cls, alg, terms: dict, order: int) -> "LaurentSeries":
        """Series from {degree: Element}; degrees <= order missing from terms are 0."""
        if not terms:
            return cls(alg, order + 1, (), order)
        lo = min(terms)
        zero = alg.zero
        return cls(alg, lo, [terms.get(d, zero) for d in range(lo, order + 1)], order)

    @classmethod
    def from_poly(cls, poly, order: int, shift: int = 0) -> "LaurentSeries":
        """Exact polynomial sum poly[d] t^{d+shift}, known through ``order``."""
        alg = poly[0].alg
        return cls(alg, shift, poly, order)

    @classmethod
    def constant(cls, a: Element, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        return cls(a.alg, 0, [a], order)

    @classmethod
    def one(cls, alg, order: int = DEFAULT_ORDER) -> "LaurentSeries":
        return cls(alg, 0, [alg.one], order)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, d: int) -> Element:
        if d > self.order:
            raise TruncationError(f"coefficient of t^{d} unknown beyond order {self.order}")
        k = d - self.val
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return self.alg.zero

    coefficient = __getitem__

    def terms(self) -> list[tuple[int, Element]]:
        return [(self.val + k, c) for k, c in enumerate(self.coeffs) if not c.is_zero()]

    def truncate(self, order: int) -> "LaurentSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend a series known to order {self.order} up to {order}")
        return LaurentSeries(self.alg, self.val, self.coeffs, order)

    def __add__(self, other):
        if isinstance(other, Element):
            other = LaurentSeries.constant(other, self.order)
        order = min(self.order, other.order)
        lo = min(self.val, other.val)
        return LaurentSeries(self.alg, lo, [self[d] + other[d] for d in range(lo, order + 1)], order)

    def __neg__(self):
        return LaurentSeries(self.alg, self.val, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Element):
            return LaurentSeries(self.alg, self.val, [c * other for c in self.coeffs], self.order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return series_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return LaurentSeries(self.alg, self.val, [other * c for c in self.coeffs], self.order)
        return NotImplemented

    def __pow__(self, n: int) -> "LaurentSeries":
        if n < 0:
            return invert_general(self) ** (-n)
        if n == 0:
            return LaurentSeries.one(self.alg, self.order)
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.order == other.order and self.terms() == other.terms()

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"LaurentSeries({format_series(self)})"


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product; known through min(a.order + b.val, b.order + a.val)."""
    order = min(a.order + b.val, b.order + a.val)
    val = a.val + b.val
    if a.is_zero() or b.is_zero():
        return LaurentSeries(a.alg, order + 1, (), order)
    n = order - val + 1
    alg = a.alg
    add, mul = alg.add, alg.mul
    out = []
    for k in range(n):
        acc = alg.zero_payload
        for u in range(max(0, k - len(b.coeffs) + 1), min(k, len(a.coeffs) - 1) + 1):
            acc = add(acc, mul(a.coeffs[u].v, b.coeffs[k - u].v))
        out.append(Element(alg, acc))
    return LaurentSeries(alg, val, out, order)


def series_arith(lhs: LaurentSeries, op: str, rhs: LaurentSeries) -> LaurentSeries:
    if op in ("add", "+"):
        return lhs + rhs
    if op in ("sub", "-"):
        return lhs - rhs
    if op in ("mul", "*"):
        return series_mul(lhs, rhs)
    raise ValueError(f"unknown series operation {op!r}")


def one_plus(a: Element, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """The exact polynomial 1 + a t."""
    return LaurentSeries.from_poly([a.alg.one, a], order)


def invert_geometric(a: Element, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """(1 + a t)^-1 = sum (-1)^i a^i t^i."""
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs, p = [], a.alg.one
    for i in range(order + 1):
        coeffs.append(p if i % 2 == 0 else -p)
        p = p * a
    return LaurentSeries(a.alg, 0, coeffs, order)


def invert_general(s: LaurentSeries) -> LaurentSeries:
    """Two-sided inverse by solving for coefficients left to right."""
    if s.is_zero():
        raise LeadingCoefficientNotInvertible("the zero series has no inverse")
    try:
        b0_inv = s.coeffs[0].inverse()
    except NotInvertible:
        raise LeadingCoefficientNotInvertible(f"leading coefficient {s.coeffs[0]} is not a unit") from None
    rel = s.order - s.val
    b = s.coeffs
    d = [b0_inv]
    for k in range(1, rel + 1):
        acc = s.alg.zero
        for j in range(1, min(k, len(b) - 1) + 1):
            acc = acc + b[j] * d[k - j]
        d.append(-(b0_inv * acc))
    return LaurentSeries(s.alg, -s.val, d, rel - s.val)


# -- central polynomials ------------------------------------------------------


def poly_eval(poly, point: Element) -> Element:
    """Horner evaluation at a central point (coefficients may be non-central)."""
    alg = poly[0].alg
    acc = alg.zero
    for c in reversed(poly):
        acc = acc * point + c
    return acc


def _poly_mul(p, q):
    alg = p[0].alg
    out = [alg.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def _poly_add(p, q):
    alg = (p or q)[0].alg
    n = max(len(p), len(q))
    z = alg.zero
    return [(p[i] if i < len(p) else z) + (q[i] if i < len(q) else z) for i in range(n)]


def _strip(poly):
    poly = list(poly)
    while len(poly) > 1 and poly[-1].is_zero():
        poly.pop()
    return poly


@dataclass(frozen=True)
class RationalSeriesForm:
    """(1 + a t)^-1 as numerator(t) / denominator(t).

    ``numerator`` has algebra coefficients, ``denominator`` = g_0 has
    coefficients in the center; ``g`` holds g_0, ..., g_n (g_n = 1).
    """

    a: Element
    numerator: tuple
    denominator: tuple
    g: tuple

    def expand(self, order: int = DEFAULT_ORDER) -> LaurentSeries:
        alg = self.a.alg
        den = LaurentSeries.from_poly([Element(alg, alg.embed(c.v)) for c in self.denominator], order)
        num = LaurentSeries.from_poly(list(self.numerator), order)
        return num * invert_general(den)


def central_polys_g(a: Element) -> list[list[Element]]:
    """g_0, ..., g_n in k[t] with sum_i g_i(t) (1 + a t)^i = t^n f_a((a_t - 1)/t) = 0.

    g_i(t) = sum_{j >= i} c_j C(j, i) (-1)^{j-i} t^{n-j}, with c_n = 1.
    """
    f = minimal_polynomial(a).monic_coeffs()
    n = len(f) - 1
    k = f[0].alg
    g = []
    for i in range(n + 1):
        poly = [k.zero] * (n + 1)
        for j in range(i, n + 1):
            poly[n - j] = poly[n - j] + f[j] * k.scalar(comb(j, i) * (-1) ** (j - i))
        g.append(_strip(poly))
    return g


def invert_algebraic(a: Element) -> RationalSeriesForm:
    """(1 + a t)^-1 = (-(1+at)^{n-1} - g_{n-1}(1+at)^{n-2} - ... - g_1) / g_0."""
    alg = a.alg
    g = central_polys_g(a)
    n = len(g) - 1
    a_t = [alg.one, a]
    num = [alg.zero]
    p = [alg.one]  # (1 + a t)^{i-1}
    for i in range(1, n + 1):
        gi = [Element(alg, alg.embed(c.v)) for c in g[i]]
        num = _poly_add(num, _poly_mul(gi, p))
        p = _poly_mul(p, a_t)
    num = [-c for c in _strip(num)]
    return RationalSeriesForm(a, tuple(num), tuple(g[0]), tuple(tuple(gi) for gi in g))


# -- bad beta -----------------------------------------------------------------

FIELD_SCAN_CAP = 10**6


def _rational_roots(poly) -> list[Fraction]:
    """All rational roots of a polynomial with Fraction coefficients."""
    coeffs = [Fraction(c) for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return []
    roots = []
    while coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs.pop(0)
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    for cand in sorted({Fraction(s * p, q) for p in divisors(abs(ints[0])) for q in divisors(abs(ints[-1])) for s in (1, -1)}):
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * cand + c
        if acc == 0:
            roots.append(cand)
    return sorted(set(roots))


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def bad_beta(a: Element) -> list[Element]:
    """Central beta with 1 + a beta not a unit: exactly the central roots of g_0."""
    g0 = central_polys_g(a)[0]
    k = g0[0].alg
    if k.characteristic == 0:
        return [k.scalar(r) for r in _rational_roots([c.v for c in g0])]
    if k.size > FIELD_SCAN_CAP:
        raise RootSearchUnsupported(f"root scan over {k} exceeds {FIELD_SCAN_CAP} elements")
    return [Element(k, b) for b in k.bounded(0) if poly_eval(g0, Element(k, b)).is_zero()]


# -- expansion of a word at 1 + c t --------------------------------------------


def expand_monomial(w, args, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """w(1 + c_1 t, ..., 1 + c_m t) to order t^order.

    The t^i coefficient is f_i(c_1, ..., c_m); f_0 = w(1, ..., 1).
    """
    if len(args) < w.arity:
        raise ValueError(f"word needs {w.arity} arguments, got {len(args)}")
    cache = {}

    def letter(i, e):
        key = (i, e)
        if key not in cache:
            base = one_plus(args[i - 1], order) if e > 0 else invert_geometric(args[i - 1], order)
            s = base
            for _ in range(abs(e) - 1):
                s = s * base
            cache[key] = s
        return cache[key]

    acc = LaurentSeries.constant(w.coeffs[0], order)
    for (i, e), c in zip(w.letters, w.coeffs[1:]):
        acc = (acc * letter(i, e)) * c
    return acc


def random_args(alg, arity, rng, height=5, units=False):
    if units:
        return [Element(alg, alg.random_unit(rng, height)) for _ in range(arity)]
    return [Element(alg, alg.random(rng, height)) for _ in range(arity)]


def sample_args(alg, arity, count, seed, height=5, units=False):
    """Seeded argument tuples; tuple j depends only on (seed, j)."""
    return [random_args(alg, arity, random.Random(f"{seed}:{j}"), height, units) for j in range(count)]


def first_nonzero_index(w, samples, order: int = DEFAULT_ORDER) -> int | None:
    """Least i in [1, order] with f_i nonzero at some sample; None if none found.

    None only says "zero on every sample up to order", not f_i == 0.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    expansions = [expand_monomial(w, args, order) for args in samples]
    for i in range(1, order + 1):
        if any(not s[i].is_zero() for s in expansions):
            return i
    return None


def check_central_pipeline(w, samples, M: int = 1, alpha: int = 1, order: int = DEFAULT_ORDER, seed=None):
    """Is f_{i0}(c)^alpha central for every sample c?

    i0 is the first index with f_i nonzero on the samples.  For each sample
    the report also records whether the first non-constant coefficient of
    w(1 + c t)^M is central.
    """
    from .identity import IdentityReport

    if M < 1 or alpha < 1:
        raise ValueError("M and alpha must be >= 1")
    expansions = [expand_monomial(w, args, order) for args in samples]
    i0 = None
    for i in range(1, order + 1):
        if any(not s[i].is_zero() for s in expansions):
            i0 = i
            break
    if i0 is None:
        raise ValueError(f"f_i vanishes on every sample for 1 <= i <= {order}; no i0")
    verdicts, u_central = [], []
    witness = None
    for args, s in zip(samples, expansions):
        ok = (s[i0] ** alpha).is_central()
        verdicts.append(alpha if ok else None)
        if not ok and witness is None:
            witness = tuple(args)
        u = s**M
        lead = next((c for d, c in u.terms() if d >= 1), None)
        u_central.append(None if lead is None else lead.is_central())
    status = "holds-on-sample" if witness is None else "fails"
    return IdentityReport(
        "PIPELINE", status, seed, len(samples), witness, verdicts, M, f"sample({len(samples)})", None,
        {"i0": i0, "alpha": alpha, "order": order, "u_first_central": u_central},
    )


# -- polynomials central at many central points -------------------------------


@dataclass(frozen=True)
class CentralityVerdict:
    central: bool
    witness: Element | None  # a point where f is not central
    reason: str


def _interpolate(points, values):
    """Coefficients of the unique polynomial of degree < len(points) through the
    (central point, algebra value) pairs, by Lagrange."""
    alg = values[0].alg
    n = len(points)
    result = [alg.zero] * n
    for j, (xj, vj) in enumerate(zip(points, values)):
        basis = [alg.one]
        denom = alg.one
        for m, xm in enumerate(points):
            if m == j:
                continue
            basis = _poly_mul(basis, [-xm, alg.one])
            denom = denom * (xj - xm)
        scale = denom.inverse()
        for d, b in enumerate(basis):
            result[d] = result[d] + b * scale * vj
    return result


def central_poly_test(f, points) -> CentralityVerdict:
    """Does f(t) in A[t] have central coefficients, judged from central points?

    If f(alpha) is central at deg f + 1 distinct central points, then for each
    generator g the polynomial f g - g f vanishes at all of them and so is 0.
    """
    f = _strip(f)
    alg = f[0].alg
    pts = []
    for p in points:
        e = p if isinstance(p, Element) else alg.scalar(p)
        if e.alg != alg:
            e = Element(alg, alg.embed(e.v))
        if not e.is_central():
            raise ValueError(f"point {e} is not central")
        pts.append(e)
    distinct = list(dict.fromkeys(pts))
    deg = len(f) - 1
    if len(distinct) < deg + 1:
        raise InsufficientPoints(f"degree {deg} needs {deg + 1} distinct points, got {len(distinct)}")
    for p in distinct:
        v = poly_eval(f, p)
        if not v.is_central():
            return CentralityVerdict(False, p, f"f({p}) = {v} is not central")
    nodes = distinct[: deg + 1]
    for g in alg.generators():
        h_values = [poly_eval(f, p) * g - g * poly_eval(f, p) for p in nodes]
        h = _interpolate(nodes, h_values)
        direct = [c * g - g * c for c in f]
        if h != direct[: len(h)] + [alg.zero] * (len(h) - len(direct)):
            raise AssertionError("interpolated commutator disagrees with direct computation")
        if any(not c.is_zero() for c in h):
            return CentralityVerdict(False, None, f"commutator with {g} is a nonzero polynomial")
    return CentralityVerdict(True, None, f"central at {deg + 1} distinct points")


# -- series display -------------------------------------------------------------


def format_series(s: LaurentSeries) -> str:
    parts = []
    for d, c in s.terms():
        parts.append(str(c) if d == 0 else f"{c}*t^{d}")
    parts.append(f"O(t^{s.order + 1})")
    return " + ".join(parts)
