"""Exact coefficient algebras: Q, GF(p^k), quaternion algebras (a, b)_Q and
one layer of square matrices over any of these.

Every algebra works on plain hashable payloads (``Fraction``, tuples); the
:class:`Element` wrapper pairs a payload with its algebra and supplies the
operators.  Nothing in here ever touches floating point.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AlgebraMismatch, LiteralError, NotInvertible


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _height_rational(rng, height):
    if height <= 0:
        return Fraction(0)
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def _frac_bits(q: Fraction) -> int:
    return max(q.numerator.bit_length(), q.denominator.bit_length())


class Algebra:
    """Common interface.  Subclasses implement the payload-level methods."""

    kind = "abstract"

    # -- element construction -------------------------------------------------
    def element(self, payload) -> "Element":
        return Element(self, payload)

    @property
    def one(self) -> "Element":
        return Element(self, self.one_payload)

    @property
    def zero(self) -> "Element":
        return Element(self, self.zero_payload)

    def scalar(self, value) -> "Element":
        """Image of an integer or rational in the algebra (through the center)."""
        return Element(self, self.embed(self.center.scalar_payload(value)))

    def __call__(self, literal) -> "Element":
        from .literals import parse_element

        return parse_element(self, literal)

    def generators(self) -> list["Element"]:
        return [Element(self, g) for g in self.generator_payloads()]

    # -- defaults -------------------------------------------------------------
    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x) -> bool:
        return x == self.zero_payload

    def is_unit(self, x) -> bool:
        try:
            self.inv(x)
        except NotInvertible:
            return False
        return True

    def random_unit(self, rng, height):
        """Rejection-sample a unit with coordinates of bounded height."""
        for _ in range(10_000):
            x = self.random(rng, height)
            if self.is_unit(x):
                return x
        raise RuntimeError(f"no unit found in {self} at height {height}")

    @property
    def is_field(self) -> bool:
        return False

    @property
    def characteristic(self) -> int:
        return self.center.characteristic

    @property
    def is_finite(self) -> bool:
        return self.center.is_finite

    def __str__(self):
        return self.descriptor()


@dataclass(frozen=True)
class RationalField(Algebra):
    kind = "rational"

    zero_payload = Fraction(0)
    one_payload = Fraction(1)

    def descriptor(self):
        return "rational"

    @property
    def center(self):
        return self

    @property
    def is_field(self):
        return True

    @property
    def characteristic(self):
        return 0

    @property
    def is_finite(self):
        return False

    dim = 1
    degree = 1

    def scalar_payload(self, value):
        return Fraction(value)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise NotInvertible("0 has no inverse in Q")
        return 1 / x

    def embed(self, c):
        return c

    def coords(self, x):
        return [x]

    def from_coords(self, cs):
        return cs[0]

    def generator_payloads(self):
        return []

    def is_central_payload(self, x):
        return True

    def random(self, rng, height):
        return _height_rational(rng, height)

    def bounded(self, height):
        for v in range(-height, height + 1):
            yield Fraction(v)

    def integer_coords(self, x):
        return [x]

    def bit_size(self, x):
        return _frac_bits(x)

    def from_literal(self, obj):
        if isinstance(obj, list):
            raise LiteralError(f"expected a rational, got a list for {self}")
        return Fraction(obj)

    def format(self, x):
        return str(x)


# -- GF(p^k) ------------------------------------------------------------------


def _poly_rem(a, b, p):
    """Remainder of a by monic b over F_p; coefficient lists low to high."""
    a = list(a)
    db = len(b) - 1
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] % p
        if c:
            for i in range(db + 1):
                a[d - db + i] = (a[d - db + i] - c * b[i]) % p
    return [c % p for c in a[:db]] if db > 0 else []


def _monic_polys(degree, p):
    for low in itertools.product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def _is_irreducible(f, p):
    k = len(f) - 1
    for d in range(1, k // 2 + 1):
        for g in _monic_polys(d, p):
            if not any(_poly_rem(f, g, p)):
                return False
    return True


def conway_free_modulus(p: int, k: int) -> tuple[int, ...]:
    """The first monic irreducible of degree k over F_p in counting order.

    Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are tried with the integer
    c_0 + c_1 p + ... + c_{k-1} p^{k-1} increasing, so the choice is a pure
    function of (p, k).
    """
    if k == 1:
        return (0, 1)
    for n in range(p**k):
        low = [(n // p**i) % p for i in range(k)]
        f = low + [1]
        if low[0] and _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: an irreducible of every degree exists")


@dataclass(frozen=True)
class FiniteField(Algebra):
    p: int
    k: int = 1
    modulus: tuple = field(default=(), compare=False, repr=False)

    kind = "finite-field"

    def __post_init__(self):
        if not is_prime(self.p):
            raise LiteralError(f"finite-field characteristic {self.p} is not prime")
        if self.k < 1:
            raise LiteralError("finite-field degree must be >= 1")
        object.__setattr__(self, "modulus", conway_free_modulus(self.p, self.k))

    def descriptor(self):
        return f"finite-field({self.p},{self.k})"

    @property
    def center(self):
        return self

    @property
    def is_field(self):
        return True

    @property
    def characteristic(self):
        return self.p

    @property
    def is_finite(self):
        return True

    @property
    def size(self):
        return self.p**self.k

    dim = 1
    degree = 1

    @property
    def zero_payload(self):
        return (0,) * self.k

    @property
    def one_payload(self):
        return (1,) + (0,) * (self.k - 1)

    def scalar_payload(self, value):
        value = Fraction(value)
        num = value.numerator % self.p
        den = value.denominator % self.p
        if den == 0:
            raise NotInvertible(f"{value} has no image in {self}")
        return (num * pow(den, -1, self.p) % self.p,) + (0,) * (self.k - 1)

    def add(self, x, y):
        p = self.p
        return tuple((a + b) % p for a, b in zip(x, y))

    def sub(self, x, y):
        p = self.p
        return tuple((a - b) % p for a, b in zip(x, y))

    def neg(self, x):
        p = self.p
        return tuple(-a % p for a in x)

    def mul(self, x, y):
        p, k = self.p, self.k
        if k == 1:
            return (x[0] * y[0] % p,)
        prod = [0] * (2 * k - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    prod[i + j] += a * b
        return tuple(_poly_rem(prod, self.modulus, p))

    def power(self, x, e):
        result = self.one_payload
        while e:
            if e & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            e >>= 1
        return result

    def inv(self, x):
        if not any(x):
            raise NotInvertible(f"0 has no inverse in {self}")
        if self.k == 1:
            return (pow(x[0], -1, self.p),)
        return self.power(x, self.size - 2)

    def embed(self, c):
        return c

    def coords(self, x):
        return [x]

    def from_coords(self, cs):
        return cs[0]

    def generator_payloads(self):
        if self.k == 1:
            return [self.one_payload]
        return [(0, 1) + (0,) * (self.k - 2)]

    def is_central_payload(self, x):
        return True

    def random(self, rng, height):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def bounded(self, height):
        for low in itertools.product(range(self.p), repeat=self.k):
            yield tuple(reversed(low))

    def integer_coords(self, x):
        return list(x)

    def bit_size(self, x):
        return self.p.bit_length()

    def frobenius_fixed_degree(self, x) -> int:
        """Degree over F_p of the subfield generated by x."""
        for d in range(1, self.k + 1):
            if self.k % d == 0 and self.power(x, self.p**d) == x:
                return d
        raise AssertionError("unreachable")

    def from_literal(self, obj):
        if isinstance(obj, list):
            if len(obj) != self.k:
                raise LiteralError(f"{self} residue needs {self.k} coordinates, got {len(obj)}")
            return tuple(self._int(c) % self.p for c in obj)
        n = self._int(obj)
        if self.k == 1:
            return (n % self.p,)
        if not 0 <= n < self.size:
            raise LiteralError(f"integer literal {n} outside 0..{self.size - 1} for {self}")
        return tuple((n // self.p**i) % self.p for i in range(self.k))

    @staticmethod
    def _int(c):
        c = Fraction(c)
        if c.denominator != 1:
            raise LiteralError(f"finite-field coordinate {c} is not an integer")
        return c.numerator

    def format(self, x):
        if self.k == 1:
            return str(x[0])
        return "[" + ",".join(map(str, x)) + "]"


@dataclass(frozen=True)
class QuaternionAlgebra(Algebra):
    """The algebra (a, b)_Q with i^2 = a, j^2 = b, ij = -ji = k."""

    a: Fraction
    b: Fraction

    kind = "quaternion"

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a == 0 or self.b == 0:
            raise LiteralError("quaternion parameters must be nonzero")

    def descriptor(self):
        return f"quaternion({self.a},{self.b})"

    @property
    def center(self):
        return RationalField()

    dim = 4
    degree = 2

    zero_payload = (Fraction(0),) * 4
    one_payload = (Fraction(1),) + (Fraction(0),) * 3

    def add(self, x, y):
        return (x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])

    def sub(self, x, y):
        return (x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3])

    def neg(self, x):
        return (-x[0], -x[1], -x[2], -x[3])

    def mul(self, x, y):
        a, b = self.a, self.b
        w1, x1, y1, z1 = x
        w2, x2, y2, z2 = y
        return (
            w1 * w2 + a * x1 * x2 + b * y1 * y2 - a * b * z1 * z2,
            w1 * x2 + x1 * w2 - b * y1 * z2 + b * z1 * y2,
            w1 * y2 + y1 * w2 + a * x1 * z2 - a * z1 * x2,
            w1 * z2 + z1 * w2 + x1 * y2 - y1 * x2,
        )

    def conjugate(self, x):
        return (x[0], -x[1], -x[2], -x[3])

    def norm(self, x) -> Fraction:
        w, i, j, k = x
        return w * w - self.a * i * i - self.b * j * j + self.a * self.b * k * k

    def inv(self, x):
        n = self.norm(x)
        if n == 0:
            raise NotInvertible(f"{self.format(x)} has reduced norm 0 in {self}")
        return (x[0] / n, -x[1] / n, -x[2] / n, -x[3] / n)

    def is_unit(self, x):
        return self.norm(x) != 0

    def embed(self, c):
        return (Fraction(c), Fraction(0), Fraction(0), Fraction(0))

    def coords(self, x):
        return list(x)

    def from_coords(self, cs):
        return tuple(Fraction(c) for c in cs)

    def generator_payloads(self):
        z, o = Fraction(0), Fraction(1)
        return [(z, o, z, z), (z, z, o, z)]

    def is_central_payload(self, x):
        return x[1] == 0 and x[2] == 0 and x[3] == 0

    def random(self, rng, height):
        return tuple(_height_rational(rng, height) for _ in range(4))

    def bounded(self, height):
        r = [Fraction(v) for v in range(-height, height + 1)]
        return itertools.product(r, repeat=4)

    def integer_coords(self, x):
        return list(x)

    def bit_size(self, x):
        return max(_frac_bits(c) for c in x)

    def from_literal(self, obj):
        if not isinstance(obj, list):
            return self.embed(Fraction(obj))
        if len(obj) != 4 or any(isinstance(c, list) for c in obj):
            raise LiteralError(f"quaternion literal needs [w,x,y,z], got {obj!r}")
        return tuple(Fraction(c) for c in obj)

    def format(self, x):
        return "[" + ",".join(str(c) for c in x) + "]"


@dataclass(frozen=True)
class MatrixAlgebra(Algebra):
    n: int
    inner: Algebra

    kind = "matrix"

    def __post_init__(self):
        if self.n < 1:
            raise LiteralError("matrix size must be >= 1")
        if isinstance(self.inner, MatrixAlgebra):
            raise LiteralError("matrix over matrix algebra is not supported; flatten it instead")

    def descriptor(self):
        return f"matrix({self.n},{self.inner.descriptor()})"

    @property
    def center(self):
        return self.inner.center

    @property
    def dim(self):
        return self.n * self.n * self.inner.dim

    @property
    def degree(self):
        return self.n * self.inner.degree

    @property
    def zero_payload(self):
        z = self.inner.zero_payload
        return tuple((z,) * self.n for _ in range(self.n))

    @property
    def one_payload(self):
        return self._diag(self.inner.one_payload)

    def _diag(self, d):
        z = self.inner.zero_payload
        return tuple(tuple(d if r == c else z for c in range(self.n)) for r in range(self.n))

    def add(self, x, y):
        f = self.inner.add
        return tuple(tuple(f(a, b) for a, b in zip(rx, ry)) for rx, ry in zip(x, y))

    def sub(self, x, y):
        f = self.inner.sub
        return tuple(tuple(f(a, b) for a, b in zip(rx, ry)) for rx, ry in zip(x, y))

    def neg(self, x):
        f = self.inner.neg
        return tuple(tuple(f(a) for a in row) for row in x)

    def mul(self, x, y):
        inner, n = self.inner, self.n
        add, mul, is_zero = inner.add, inner.mul, inner.is_zero
        out = []
        for r in range(n):
            row = []
            for c in range(n):
                acc = inner.zero_payload
                for k in range(n):
                    a = x[r][k]
                    if not is_zero(a):
                        b = y[k][c]
                        if not is_zero(b):
                            acc = add(acc, mul(a, b))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def inv(self, x):
        """Gauss-Jordan elimination with left row operations only.

        Pivot: the first invertible entry of the column, scanning top-down.
        Over a division ring that is the first nonzero entry.
        """
        inner, n = self.inner, self.n
        left = [list(row) for row in x]
        right = [list(row) for row in self.one_payload]
        for col in range(n):
            pivot = None
            stalled = False
            for r in range(col, n):
                e = left[r][col]
                if inner.is_zero(e):
                    continue
                try:
                    e_inv = inner.inv(e)
                except NotInvertible:
                    stalled = True
                    continue
                pivot = r
                break
            if pivot is None:
                why = "elimination stalled on a zero divisor" if stalled else "singular matrix"
                raise NotInvertible(f"{self.format(x)}: {why}")
            left[col], left[pivot] = left[pivot], left[col]
            right[col], right[pivot] = right[pivot], right[col]
            left[col] = [inner.mul(e_inv, e) for e in left[col]]
            right[col] = [inner.mul(e_inv, e) for e in right[col]]
            for r in range(n):
                m = left[r][col]
                if r == col or inner.is_zero(m):
                    continue
                left[r] = [inner.sub(e, inner.mul(m, f)) for e, f in zip(left[r], left[col])]
                right[r] = [inner.sub(e, inner.mul(m, f)) for e, f in zip(right[r], right[col])]
        return tuple(tuple(row) for row in right)

    def embed(self, c):
        return self._diag(self.inner.embed(c))

    def coords(self, x):
        return [c for row in x for e in row for c in self.inner.coords(e)]

    def from_coords(self, cs):
        d = self.inner.dim
        flat = [self.inner.from_coords(cs[i : i + d]) for i in range(0, len(cs), d)]
        return tuple(tuple(flat[r * self.n : (r + 1) * self.n]) for r in range(self.n))

    def generator_payloads(self):
        z, o, n = self.inner.zero_payload, self.inner.one_payload, self.n
        gens = []
        for r in range(n):
            for c in range(n):
                gens.append(tuple(tuple(o if (i, j) == (r, c) else z for j in range(n)) for i in range(n)))
        gens.extend(self._diag(g) for g in self.inner.generator_payloads())
        return gens

    def is_central_payload(self, x):
        d = x[0][0]
        if not self.inner.is_central_payload(d):
            return False
        z = self.inner.zero_payload
        return all(x[r][c] == (d if r == c else z) for r in range(self.n) for c in range(self.n))

    def random(self, rng, height):
        return tuple(tuple(self.inner.random(rng, height) for _ in range(self.n)) for _ in range(self.n))

    def bounded(self, height):
        cells = list(self.inner.bounded(height))
        n = self.n
        for flat in itertools.product(cells, repeat=n * n):
            yield tuple(tuple(flat[r * n : (r + 1) * n]) for r in range(n))

    def integer_coords(self, x):
        return [c for row in x for e in row for c in self.inner.integer_coords(e)]

    def bit_size(self, x):
        return max(self.inner.bit_size(e) for row in x for e in row)

    def from_literal(self, obj):
        if not isinstance(obj, list):
            return self.embed(self.center.from_literal(obj))
        if len(obj) != self.n or not all(isinstance(row, list) and len(row) == self.n for row in obj):
            raise LiteralError(f"{self} literal needs {self.n} rows of {self.n} entries")
        return tuple(tuple(self.inner.from_literal(e) for e in row) for row in obj)

    def format(self, x):
        return "[" + ",".join("[" + ",".join(self.inner.format(e) for e in row) + "]" for row in x) + "]"


def _coerce(alg, other):
    if isinstance(other, Element):
        if other.alg is not alg and other.alg != alg:
            if other.alg == alg.center:
                return alg.embed(other.v)
            raise AlgebraMismatch(f"cannot combine elements of {alg} and {other.alg}")
        return other.v
    if isinstance(other, (int, Fraction)):
        return alg.embed(alg.center.scalar_payload(other))
    return None


class Element:
    """An immutable element of a configured algebra."""

    __slots__ = ("alg", "v")

    def __init__(self, alg: Algebra, v):
        self.alg = alg
        self.v = v

    def __add__(self, other):
        o = _coerce(self.alg, other)
        if o is None:
            return NotImplemented
        return Element(self.alg, self.alg.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(self.alg, other)
        if o is None:
            return NotImplemented
        return Element(self.alg, self.alg.sub(self.v, o))

    def __rsub__(self, other):
        o = _coerce(self.alg, other)
        if o is None:
            return NotImplemented
        return Element(self.alg, self.alg.sub(o, self.v))

    def __neg__(self):
        return Element(self.alg, self.alg.neg(self.v))

    def __mul__(self, other):
        o = _coerce(self.alg, other)
        if o is None:
            return NotImplemented
        return Element(self.alg, self.alg.mul(self.v, o))

    def __rmul__(self, other):
        o = _coerce(self.alg, other)
        if o is None:
            return NotImplemented
        return Element(self.alg, self.alg.mul(o, self.v))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        alg = self.alg
        result, base = alg.one_payload, self.v
        while e:
            if e & 1:
                result = alg.mul(result, base)
            e >>= 1
            if e:
                base = alg.mul(base, base)
        return Element(alg, result)

    def inverse(self) -> "Element":
        return Element(self.alg, self.alg.inv(self.v))

    def commutator(self, other) -> "Element":
        """self * other - other * self."""
        return self * other - other * self

    def is_zero(self) -> bool:
        return self.alg.is_zero(self.v)

    def is_one(self) -> bool:
        return self.v == self.alg.one_payload

    def is_unit(self) -> bool:
        return self.alg.is_unit(self.v)

    def is_central(self) -> bool:
        return is_central(self)

    def bit_size(self) -> int:
        return self.alg.bit_size(self.v)

    def __eq__(self, other):
        if isinstance(other, Element):
            return (self.alg is other.alg or self.alg == other.alg) and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self.v == _coerce(self.alg, other)
            except NotInvertible:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.alg.kind, self.v))

    def __str__(self):
        return self.alg.format(self.v)

    def __repr__(self):
        return f"Element({self.alg}, {self.alg.format(self.v)})"


def arith(lhs: Element, op: str, rhs: Element) -> Element:
    """Binary operation by name ('add', 'sub', 'mul') or symbol ('+', '-', '*')."""
    if lhs.alg != rhs.alg:
        raise AlgebraMismatch(f"cannot combine elements of {lhs.alg} and {rhs.alg}")
    ops = {"add": lhs.alg.add, "sub": lhs.alg.sub, "mul": lhs.alg.mul}
    ops.update({"+": ops["add"], "-": ops["sub"], "*": ops["mul"]})
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return Element(lhs.alg, ops[op](lhs.v, rhs.v))


def invert(x: Element) -> Element:
    return x.inverse()


def is_central(x: Element) -> bool:
    """True iff x commutes with every generator of its algebra."""
    alg = x.alg
    mul = alg.mul
    return all(mul(x.v, g) == mul(g, x.v) for g in alg.generator_payloads())


def gl_order(n: int, q: int) -> int:
    """|GL_n(F_q)| = prod_{i<n} (q^n - q^i)."""
    return math.prod(q**n - q**i for i in range(n))


def unit_group_exponent(alg: Algebra) -> int | None:
    """Exponent of the unit group of a finite algebra, None when infinite.

    For GL_n(F_q), q = p^k, this is p^e * lcm(q - 1, ..., q^n - 1) with p^e
    the least power of p that is >= n.
    """
    if not alg.is_finite:
        return None
    if isinstance(alg, FiniteField):
        return alg.size - 1
    q, p, n = alg.inner.size, alg.inner.p, alg.n
    pe = 1
    while pe < n:
        pe *= p
    return pe * math.lcm(*(q**i - 1 for i in range(1, n + 1)))


def unit_group_order(alg: Algebra) -> int | None:
    if not alg.is_finite:
        return None
    if isinstance(alg, FiniteField):
        return alg.size - 1
    return gl_order(alg.n, alg.inner.size)


def iter_units(alg: Algebra):
    """All units of a finite algebra in a fixed order."""
    if not alg.is_finite:
        raise ValueError(f"{alg} is infinite; its unit group is not enumerable")
    for x in alg.bounded(0):
        if alg.is_unit(x):
            yield Element(alg, x)
