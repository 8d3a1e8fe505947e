"""Checking GGI / GPCGI candidates on concrete groups, non-triviality of words,
and the word reductions used to pass from a subgroup to the full unit group.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field

from .algebra import Element, FiniteField, MatrixAlgebra, gl_order, iter_units, unit_group_exponent, unit_group_order
from .errors import EnumerationCapExceeded, TransformFailed
from .words import Monomial, SeriesDescriptor, build_u, evaluate, power, substitute

DEFAULT_P_MAX = 64
DEFAULT_N_MAX = 64
DEFAULT_HEIGHT = 5
DEFAULT_CAP = 10**6


# -- scopes -----------------------------------------------------------------------


@dataclass(frozen=True)
class FullUnitGroup:
    """All units of a finite algebra, enumerated exhaustively."""

    cap: int = DEFAULT_CAP

    def describe(self):
        return "full-unit-group"

    def elements(self, alg):
        order = unit_group_order(alg)
        if order is None:
            raise ValueError(f"the unit group of {alg} is infinite; use a sampler")
        if order > self.cap:
            raise EnumerationCapExceeded(f"|unit group| = {order} exceeds the cap {self.cap}")
        return list(iter_units(alg))


@dataclass(frozen=True)
class GeneratedSubgroup:
    """The subgroup generated by explicit units, closed under multiplication."""

    generators: tuple
    cap: int = DEFAULT_CAP

    def describe(self):
        return f"generated({len(self.generators)})"

    def elements(self, alg):
        gens = [g if isinstance(g, Element) else alg(g) for g in self.generators]
        for g in gens:
            if not g.is_unit():
                raise ValueError(f"generator {g} is not a unit")
        one = alg.one
        seen = {one: None}
        order = [one]
        frontier = [one]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g
                    if y not in seen:
                        if len(order) >= self.cap:
                            raise EnumerationCapExceeded(f"subgroup closure exceeds the cap {self.cap}")
                        seen[y] = None
                        order.append(y)
                        nxt.append(y)
            frontier = nxt
        return order


@dataclass(frozen=True)
class Sampler:
    """Seeded random unit tuples with coordinates of bounded height."""

    count: int = 200
    height: int = DEFAULT_HEIGHT

    def describe(self):
        return f"sample({self.count},height={self.height})"


def scope_tuples(scope, alg, arity: int, seed: int):
    """(tuples iterator, exhaustive?) for a scope."""
    if isinstance(scope, Sampler):

        def gen():
            for j in range(scope.count):
                rng = random.Random(f"{seed}:{j}")
                yield tuple(Element(alg, alg.random_unit(rng, scope.height)) for _ in range(arity))

        return gen(), False
    elements = scope.elements(alg)
    total = len(elements) ** arity
    if total > scope.cap:
        raise EnumerationCapExceeded(f"{len(elements)}^{arity} = {total} tuples exceed the cap {scope.cap}")
    return itertools.product(elements, repeat=arity), True


# -- reports ------------------------------------------------------------------------


@dataclass
class IdentityReport:
    mode: str  # GGI | GPCGI | PIPELINE
    status: str  # holds-exhaustive | holds-on-sample | fails
    seed: int | None
    tuples: int
    witness: tuple | None = None
    p_list: list = field(default_factory=list)
    M: int | None = None
    scope: str = ""
    p_max: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status != "fails"

    def to_record(self) -> dict:
        rec = {
            "record": "identity-report",
            "mode": self.mode,
            "status": self.status,
            "seed": self.seed,
            "tuples": self.tuples,
            "witness": None if self.witness is None else [str(c) for c in self.witness],
            "p_list": self.p_list,
            "M": self.M,
            "scope": self.scope,
            "p_max": self.p_max,
        }
        rec.update(self.extra)
        return rec

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))


def _status(exhaustive):
    return "holds-exhaustive" if exhaustive else "holds-on-sample"


def check_ggi(w: Monomial, scope, seed: int = 0) -> IdentityReport:
    """Does w(c) = 1 for every tuple in the scope?"""
    alg = w.alg
    tuples, exhaustive = scope_tuples(scope, alg, w.arity, seed)
    n = 0
    for c in tuples:
        n += 1
        if not evaluate(w, c).is_one():
            return IdentityReport("GGI", "fails", seed, n, tuple(c), scope=scope.describe())
    return IdentityReport("GGI", _status(exhaustive), seed, n, scope=scope.describe())


def radical_over_center(x: Element, n_max: int = DEFAULT_N_MAX) -> int | None:
    """Least n <= n_max with x^n central."""
    alg = x.alg
    acc = x
    for n in range(1, n_max + 1):
        if acc.is_central():
            return n
        if n < n_max:
            acc = Element(alg, alg.mul(acc.v, x.v))
    return None


def effective_p_max(alg, p_max: int) -> int:
    """p_max raised to the unit-group exponent when the algebra is finite."""
    e = unit_group_exponent(alg)
    return max(p_max, e) if e is not None else p_max


def check_gpcgi(w: Monomial, scope, p_max: int = DEFAULT_P_MAX, seed: int = 0) -> IdentityReport:
    """For every tuple find the least p <= p_max with w(c)^p central.

    On an infinite algebra a "fails" verdict means "no such p up to p_max".
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    alg = w.alg
    p_max = effective_p_max(alg, p_max)
    tuples, exhaustive = scope_tuples(scope, alg, w.arity, seed)
    ps = []
    n = 0
    for c in tuples:
        n += 1
        p = radical_over_center(evaluate(w, c), p_max)
        if p is None:
            return IdentityReport("GPCGI", "fails", seed, n, tuple(c), ps, None, scope.describe(), p_max)
        ps.append(p)
    M = math.lcm(*ps) if ps else 1
    return IdentityReport("GPCGI", _status(exhaustive), seed, n, None, ps, M, scope.describe(), p_max)


# -- non-triviality and reductions -------------------------------------------


@dataclass(frozen=True)
class Nontriviality:
    nontrivial: bool
    certificate: str
    checked_up_to: int

    def __bool__(self):
        return self.nontrivial


def is_nontrivial(w: Monomial, p_max: int = DEFAULT_P_MAX) -> Nontriviality:
    """Does every power w^p, p <= p_max, keep at least one letter?

    Two symbolic certificates settle all p at once: distinct first and last
    indices, or a junction coefficient a_{t+1} a_1 different from 1; either
    way the copies in w^p cannot cancel across the junction.
    """
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    if w.is_constant():
        return Nontriviality(False, "no indeterminate", 0)
    first, last = w.letters[0][0], w.letters[-1][0]
    if first != last:
        cert = "first/last indices differ"
    elif not (w.coeffs[-1] * w.coeffs[0]).is_one():
        cert = "junction coefficient is not 1"
    else:
        cert = None
    acc = w
    for p in range(1, p_max + 1):
        if acc.is_constant():
            return Nontriviality(False, f"w^{p} is a constant", p)
        if p < p_max:
            acc = acc * w
    return Nontriviality(True, cert or f"letters survive in w^p for p <= {p_max}", p_max)


def retarget_endpoints(w: Monomial) -> Monomial:
    """Return a word with distinct first and last indices.

    Unchanged if they already differ; otherwise try x_i -> x_i x_{m+i} and
    raise TransformFailed if the endpoints still coincide.
    """
    if w.is_constant():
        raise ValueError("the word has no letters")
    if w.letters[0][0] != w.letters[-1][0]:
        return w
    alg, m = w.alg, w.arity
    doubled = {
        i: Monomial.make((alg.one, alg.one, alg.one), ((i, 1), (m + i, 1))) for i in range(1, m + 1)
    }
    out = substitute(w, doubled)
    if out.is_constant() or out.letters[0][0] == out.letters[-1][0]:
        raise TransformFailed(
            "doubling x_i -> x_i x_{m+i} leaves the first and last index equal "
            f"(both x{out.letters[0][0] if out.letters else '?'})"
        )
    return out


def reduce_to_full_group(w: Monomial, a: Element, series: SeriesDescriptor) -> Monomial:
    """w'(y_1..y_m) = w(u_r(a, y_1), ..., u_r(a, y_m))."""
    if a.is_central():
        raise ValueError(f"base {a} must be non-central")
    if w.is_constant() or w.letters[0][0] == w.letters[-1][0]:
        raise ValueError("the word must have distinct first and last indices; see retarget_endpoints")
    mapping = {i: build_u(a, series, var=i) for i in w.indices}
    return substitute(w, mapping)


def locally_finite_exponent(a: Element) -> int:
    """m = |GL_n(P_a)| for the subfield P_a generated by the entries; checks a^m = 1."""
    alg = a.alg
    if isinstance(alg, FiniteField):
        field_, n, entries = alg, 1, [a.v]
    elif isinstance(alg, MatrixAlgebra) and isinstance(alg.inner, FiniteField):
        field_, n, entries = alg.inner, alg.n, [e for row in a.v for e in row]
    else:
        raise ValueError(f"{alg} is not a matrix algebra over a finite field")
    if not a.is_unit():
        raise ValueError(f"{a} is not invertible")
    d = 1
    for e in entries:
        d = math.lcm(d, field_.frobenius_fixed_degree(e))
    m = gl_order(n, field_.p**d)
    if not (a**m).is_one():
        raise AssertionError(f"{a}^{m} != 1")
    return m
