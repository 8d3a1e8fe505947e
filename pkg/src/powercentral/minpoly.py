"""Minimal polynomials over the center and order detection."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Element

# Monic polynomials of degree <= 2 over Q that divide some x^m - 1, as
# (c_0, ..., c_{n-1}): x-1, x+1, x^2-1, x^2+1, x^2+x+1, x^2-x+1.
CYCLOTOMIC_DIVISORS = {
    (Fraction(-1),),
    (Fraction(1),),
    (Fraction(-1), Fraction(0)),
    (Fraction(1), Fraction(0)),
    (Fraction(1), Fraction(1)),
    (Fraction(1), Fraction(-1)),
}


@dataclass(frozen=True)
class MinimalPolynomial:
    """x^n + c_{n-1} x^{n-1} + ... + c_0 with coefficients in the center."""

    coeffs: tuple  # c_0 .. c_{n-1}, Elements of the center algebra

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def center(self):
        return self.coeffs[0].alg if self.coeffs else None

    def monic_coeffs(self) -> list[Element]:
        """c_0, ..., c_{n-1}, 1."""
        one = self.coeffs[0].alg.one if self.coeffs else None
        return list(self.coeffs) + [one]

    def __call__(self, x: Element) -> Element:
        alg = x.alg
        acc = alg.one
        for c in reversed(self.coeffs):
            acc = acc * x + Element(alg, alg.embed(c.v))
        return acc

    def __str__(self):
        terms = [f"x^{self.degree}" if self.degree > 1 else "x"]
        for d in range(self.degree - 1, -1, -1):
            c = self.coeffs[d]
            if c.is_zero():
                continue
            mono = "" if d == 0 else ("*x" if d == 1 else f"*x^{d}")
            terms.append(f"({c}){mono}")
        return " + ".join(terms)


def _reduce(center, basis, vec, comb=None):
    mul, sub, is_zero = center.mul, center.sub, center.is_zero
    for piv, bvec, bcomb in basis:
        f = vec[piv]
        if is_zero(f):
            continue
        vec = [sub(a, mul(f, b)) for a, b in zip(vec, bvec)]
        if comb is not None:
            comb = [sub(a, mul(f, b)) for a, b in zip(comb, bcomb)]
    return vec, comb


def minimal_polynomial(x: Element) -> MinimalPolynomial:
    """Least-degree monic central polynomial killing x.

    Found as the first exact linear dependence among 1, x, x^2, ... written in
    coordinates over the center.
    """
    alg = x.alg
    center = alg.center
    zero, one = center.zero_payload, center.one_payload
    basis = []
    power = alg.one_payload
    for d in range(alg.dim + 1):
        vec = alg.coords(power)
        comb = [zero] * d + [one]
        for entry in basis:
            entry[2].append(zero)
        vec, comb = _reduce(center, basis, vec, comb)
        nonzero = [i for i, v in enumerate(vec) if not center.is_zero(v)]
        if not nonzero:
            return MinimalPolynomial(tuple(Element(center, c) for c in comb[:d]))
        piv = nonzero[0]
        scale = center.inv(vec[piv])
        basis.append((piv, [center.mul(scale, v) for v in vec], [center.mul(scale, c) for c in comb]))
        power = alg.mul(power, x.v)
    raise AssertionError("powers of x exceeded the algebra dimension without a dependence")


def powers_independent(x: Element, n: int) -> bool:
    """True iff 1, x, ..., x^{n-1} are linearly independent over the center.

    This is the minimality certificate for a degree-n annihilating polynomial.
    """
    alg = x.alg
    center = alg.center
    basis = []
    power = alg.one_payload
    for _ in range(n):
        vec, _ = _reduce(center, basis, alg.coords(power))
        nonzero = [i for i, v in enumerate(vec) if not center.is_zero(v)]
        if not nonzero:
            return False
        scale = center.inv(vec[nonzero[0]])
        basis.append((nonzero[0], [center.mul(scale, v) for v in vec], None))
        power = alg.mul(power, x.v)
    return True


def multiplicative_order(x: Element, bound: int) -> int | None:
    """Least m <= bound with x^m = 1, by repeated multiplication."""
    alg = x.alg
    one = alg.one_payload
    acc = x.v
    for m in range(1, bound + 1):
        if acc == one:
            return m
        acc = alg.mul(acc, x.v)
    return None


def is_torsion(x: Element, bound: int) -> int | None:
    """Order of the unit x if it is at most ``bound``, else None.

    In characteristic 0 an element of finite order has a minimal polynomial
    dividing some x^m - 1; for degree <= 2 those are listed in
    CYCLOTOMIC_DIVISORS, so anything else is reported without powering.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if not x.is_unit():
        return None
    if x.alg.characteristic == 0:
        mp = minimal_polynomial(x)
        if mp.degree <= 2 and tuple(c.v for c in mp.coeffs) not in CYCLOTOMIC_DIVISORS:
            return None
    return multiplicative_order(x, bound)
