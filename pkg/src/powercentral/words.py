"""Generalized group monomials a_1 x_{i_1}^{n_1} a_2 ... a_t x_{i_t}^{n_t} a_{t+1}.

A word is stored as t+1 unit coefficients and t letters (index, exponent).
The canonical form only merges x_i^n 1 x_i^m into x_i^{n+m} and drops zero
exponents, fusing the neighbouring coefficients.  Coefficients never move
past letters, even central ones.
"""
from __future__ import annotations

import math
import re
import warnings
from dataclasses import dataclass

from .algebra import Element
from .errors import ConstantWordError, MonomialSyntaxError, NonUnitCoefficient, UnknownConstant
from .literals import parse_element


class DegenerateBaseWarning(UserWarning):
    """build_c/build_u called with a central base unit."""


def _fuse(x: Element, y: Element) -> Element:
    """x * y, skipping the multiplication when either side is 1."""
    if y.is_one():
        return x
    if x.is_one():
        return y
    return x * y


def _push(coeffs, letters, index, exp, after):
    """Append letter x_index^exp followed by coefficient ``after``, reducing."""
    if exp == 0:
        coeffs[-1] = _fuse(coeffs[-1], after)
        return
    if letters and letters[-1][0] == index and coeffs[-1].is_one():
        merged = letters[-1][1] + exp
        if merged:
            letters[-1] = (index, merged)
            coeffs[-1] = after
        else:
            letters.pop()
            coeffs.pop()
            coeffs[-1] = _fuse(coeffs[-1], after)
        return
    letters.append((index, exp))
    coeffs.append(after)


@dataclass(frozen=True)
class Monomial:
    coeffs: tuple  # t+1 Elements
    letters: tuple  # t pairs (index >= 1, exponent != 0)

    @classmethod
    def make(cls, coeffs, letters) -> "Monomial":
        coeffs = list(coeffs)
        if len(coeffs) != len(letters) + 1:
            raise ValueError("a word with t letters needs t+1 coefficients")
        out_c, out_l = [coeffs[0]], []
        for (index, exp), after in zip(letters, coeffs[1:]):
            if index < 1:
                raise ValueError(f"indeterminate index must be >= 1, got {index}")
            _push(out_c, out_l, index, exp, after)
        return cls(tuple(out_c), tuple(out_l))

    @classmethod
    def constant(cls, a: Element) -> "Monomial":
        return cls((a,), ())

    @classmethod
    def var(cls, alg, index: int = 1, exp: int = 1) -> "Monomial":
        return cls.make((alg.one, alg.one), ((index, exp),))

    @property
    def alg(self):
        return self.coeffs[0].alg

    @property
    def length(self) -> int:
        """Number of letters t."""
        return len(self.letters)

    @property
    def letter_count(self) -> int:
        """Number of letters counted with multiplicity |n_j|."""
        return sum(abs(e) for _, e in self.letters)

    @property
    def arity(self) -> int:
        return max((i for i, _ in self.letters), default=0)

    @property
    def indices(self) -> set[int]:
        return {i for i, _ in self.letters}

    def is_constant(self) -> bool:
        return not self.letters

    def coefficient_product(self) -> Element:
        """a_1 a_2 ... a_{t+1}, the value at x_i = 1."""
        acc = self.coeffs[0]
        for c in self.coeffs[1:]:
            acc = acc * c
        return acc

    def is_canonical(self) -> bool:
        return Monomial.make(self.coeffs, self.letters) == self

    def __mul__(self, other):
        if isinstance(other, Element):
            other = Monomial.constant(other)
        if not isinstance(other, Monomial):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return multiply(Monomial.constant(other), self)
        return NotImplemented

    def __pow__(self, n: int) -> "Monomial":
        return power(self, n)

    def __invert__(self) -> "Monomial":
        return inverse(self)

    def __str__(self):
        return format_monomial(self)


def multiply(u: Monomial, v: Monomial) -> Monomial:
    """Concatenate, fusing u's last and v's first coefficient, then reduce."""
    coeffs = list(u.coeffs)
    letters = list(u.letters)
    coeffs[-1] = _fuse(coeffs[-1], v.coeffs[0])
    k = 0
    # Only the junction can reduce; once a letter of v sticks, the rest of v
    # is already canonical and is appended wholesale.
    while k < len(v.letters):
        before = len(letters)
        index, exp = v.letters[k]
        _push(coeffs, letters, index, exp, v.coeffs[k + 1])
        k += 1
        if len(letters) >= before:
            break
    coeffs.extend(v.coeffs[k + 1 :])
    letters.extend(v.letters[k:])
    return Monomial(tuple(coeffs), tuple(letters))


def inverse(u: Monomial) -> Monomial:
    # c_r words repeat a handful of coefficients many times
    memo = {}
    coeffs = []
    for c in reversed(u.coeffs):
        if c.v not in memo:
            memo[c.v] = c.inverse()
        coeffs.append(memo[c.v])
    coeffs = tuple(coeffs)
    letters = tuple((i, -e) for i, e in reversed(u.letters))
    return Monomial(coeffs, letters)


def power(u: Monomial, n: int) -> Monomial:
    if n < 0:
        return power(inverse(u), -n)
    result = Monomial.constant(u.alg.one)
    base = u
    while n:
        if n & 1:
            result = multiply(result, base)
        n >>= 1
        if n:
            base = multiply(base, base)
    return result


def concat_raw(u: Monomial, v: Monomial) -> Monomial:
    """Concatenation with coefficient fusion but no letter reduction."""
    coeffs = u.coeffs[:-1] + (u.coeffs[-1] * v.coeffs[0],) + v.coeffs[1:]
    return Monomial(coeffs, u.letters + v.letters)


def substitute(w: Monomial, mapping: dict) -> Monomial:
    """Replace each x_i by mapping[i]; indices absent from mapping stay put."""
    alg = w.alg
    result = Monomial.constant(w.coeffs[0])
    for (i, e), c in zip(w.letters, w.coeffs[1:]):
        image = mapping.get(i)
        if image is None:
            image = Monomial.var(alg, i)
        result = multiply(result, power(image, e))
        result = multiply(result, Monomial.constant(c))
    return result


def evaluate(w: Monomial, args) -> Element:
    """w(c_1, ..., c_m) with negative exponents through exact inverses."""
    if len(args) < w.arity:
        raise ValueError(f"word needs {w.arity} arguments, got {len(args)}")
    inverses = {}
    acc = w.coeffs[0]
    for (i, e), c in zip(w.letters, w.coeffs[1:]):
        x = args[i - 1]
        if e < 0:
            if i not in inverses:
                inverses[i] = x.inverse()
            x = inverses[i]
        acc = acc * (x ** abs(e)) * c
    return acc


# -- almost normal series and the c_r / u_r words ----------------------------

NORMAL = "normal"


@dataclass(frozen=True)
class SeriesDescriptor:
    """Shape of an almost normal series N_r <= ... <= N_1.

    ``steps`` has r-1 entries, each ``"normal"`` or a finite index k >= 1.
    """

    steps: tuple = ()

    def __post_init__(self):
        steps = tuple(self.steps)
        for s in steps:
            if s != NORMAL and not (isinstance(s, int) and s >= 1):
                raise ValueError(f"series step must be 'normal' or an index >= 1, got {s!r}")
        object.__setattr__(self, "steps", steps)

    @property
    def length(self) -> int:
        return len(self.steps) + 1

    def multipliers(self) -> list[int]:
        """Exponent l_i = k! for finite-index steps, None for normal steps."""
        return [None if s == NORMAL else math.factorial(s) for s in self.steps]

    @classmethod
    def parse(cls, text: str) -> "SeriesDescriptor":
        """Comma-separated steps: ``n``/``normal`` or ``f<k>``/``finite(k)``."""
        text = (text or "").strip()
        if text in ("", "-"):
            return cls(())
        steps = []
        for tok in text.split(","):
            tok = tok.strip().lower()
            if tok in ("n", "normal"):
                steps.append(NORMAL)
                continue
            m = re.fullmatch(r"f(\d+)|finite\((\d+)\)", tok)
            if not m:
                raise ValueError(f"bad series step {tok!r}")
            steps.append(int(m.group(1) or m.group(2)))
        return cls(tuple(steps))

    def __str__(self):
        return ",".join("n" if s == NORMAL else f"f{s}" for s in self.steps) or "-"


def _check_base(a: Element):
    if not a.is_unit():
        raise ValueError(f"base {a} is not a unit")
    if a.is_central():
        warnings.warn(f"base {a} is central; the word may be degenerate", DegenerateBaseWarning, stacklevel=3)
        return True
    return False


def _c1(a: Element, var: int) -> Monomial:
    one = a.alg.one
    return Monomial.make((a, a.inverse(), one), ((var, 1), (var, -1)))


def build_c(a: Element, series: SeriesDescriptor, var: int = 1) -> Monomial:
    """c_r(a, x): a x a^-1 x^-1, then c a c^-1 a per normal step, c^(k!) per index-k step."""
    _check_base(a)
    c = _c1(a, var)
    a_word = Monomial.constant(a)
    for step in series.steps:
        if step == NORMAL:
            c = c * a_word * inverse(c) * a_word
        else:
            c = power(c, math.factorial(step))
    return c


def build_c_raw(a: Element, series: SeriesDescriptor, var: int = 1) -> Monomial:
    """Same recursion as build_c without letter reduction (for letter counting)."""
    c = _c1(a, var)
    a_word = Monomial.constant(a)
    for step in series.steps:
        if step == NORMAL:
            c = concat_raw(concat_raw(concat_raw(c, a_word), inverse(c)), a_word)
        else:
            acc = c
            for _ in range(math.factorial(step) - 1):
                acc = concat_raw(acc, c)
            c = acc
    return c


def build_u(a: Element, series: SeriesDescriptor, var: int = 1) -> Monomial:
    """u_r(a, x) = a^-1 c_r(a, x)."""
    _check_base(a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateBaseWarning)
        c = build_c(a, series, var)
    return multiply(Monomial.constant(a.inverse()), c)


def check_star_form(w: Monomial, a: Element) -> bool:
    """Is w = a^{n_1} x^{m_1} ... a^{n_t} x^{m_t} with all exponents +-1 and n_1 = 1?"""
    if not w.letters or len(w.indices) != 1:
        return False
    a_inv = a.inverse()
    if w.coeffs[0] != a or not w.coeffs[-1].is_one():
        return False
    if any(abs(e) != 1 for _, e in w.letters):
        return False
    # long c_r words reuse a few coefficient objects; judge each object once
    verdict = {}
    for c in w.coeffs[1:-1]:
        key = id(c)
        if key not in verdict:
            verdict[key] = c.v == a.v or c.v == a_inv.v
        if not verdict[key]:
            return False
    return True


# -- DSL ----------------------------------------------------------------------

_DSL_TOKEN = re.compile(
    r"""\s*(?:
        (?P<star>\*)
      | (?P<caret>\^)
      | @\{(?P<lit>[^}]*)\}
      | @(?P<name>[A-Za-z_][A-Za-z0-9_]*)
      | x(?P<var>\d+)
      | (?P<int>[+-]?\d+)
    )""",
    re.X,
)


def _tokenize(text):
    pos, out = 0, []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return out
        m = _DSL_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MonomialSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()


def parse_monomial(text: str, constants: dict | None = None, alg=None) -> Monomial:
    """Parse ``factor ('*' factor)*`` with factor ``@name[^int]`` or ``x<i>[^int]``.

    ``@{literal}`` is accepted as an inline coefficient.  The algebra comes
    from ``alg`` or from the constants.
    """
    constants = constants or {}
    if alg is None:
        if not constants:
            raise ValueError("an algebra or at least one constant is required")
        alg = next(iter(constants.values())).alg
    tokens = _tokenize(text)
    if not tokens:
        raise MonomialSyntaxError("empty monomial", 0, text)
    coeffs, letters = [alg.one], []
    k = 0
    expect_factor = True
    while k < len(tokens):
        kind, val, at = tokens[k]
        if not expect_factor:
            if kind != "star":
                raise MonomialSyntaxError("expected '*'", at, text)
            expect_factor = True
            k += 1
            continue
        k += 1
        exp = 1
        if k < len(tokens) and tokens[k][0] == "caret":
            if k + 1 >= len(tokens) or tokens[k + 1][0] != "int":
                raise MonomialSyntaxError("expected integer exponent after '^'", tokens[k][2], text)
            exp = int(tokens[k + 1][1])
            if exp == 0:
                raise MonomialSyntaxError("zero exponent", tokens[k + 1][2], text)
            k += 2
        if kind == "var":
            index = int(val)
            if index < 1:
                raise MonomialSyntaxError("indeterminate index must be >= 1", at, text)
            letters.append((index, exp))
            coeffs.append(alg.one)
        elif kind in ("name", "lit"):
            if kind == "name":
                if val not in constants:
                    raise UnknownConstant(f"unknown constant @{val}", at, text)
                c = constants[val]
            else:
                c = parse_element(alg, val)
            if c.alg != alg:
                raise MonomialSyntaxError(f"constant @{val} lives in {c.alg}, not {alg}", at, text)
            if not c.is_unit():
                raise NonUnitCoefficient(f"coefficient {c} is not a unit", at, text)
            coeffs[-1] = coeffs[-1] * c**exp
        else:
            raise MonomialSyntaxError(f"expected a factor, got {val!r}", at, text)
        expect_factor = False
    if expect_factor:
        raise MonomialSyntaxError("dangling '*'", len(text), text)
    w = Monomial.make(coeffs, letters)
    if w.is_constant():
        raise ConstantWordError("a monomial must contain at least one indeterminate", None, text)
    return w


def _coeff_text(c: Element, names: dict) -> str:
    for name, value in names.items():
        if value == c:
            return f"@{name}"
    for name, value in names.items():
        if value.is_unit() and value.inverse() == c:
            return f"@{name}^-1"
    return "@{" + str(c) + "}"


def format_monomial(w: Monomial, constants: dict | None = None) -> str:
    """DSL text for w; coefficients use constant names when they match."""
    names = constants or {}
    parts = []
    for k, c in enumerate(w.coeffs):
        if not c.is_one() or (not w.letters and k == 0):
            parts.append(_coeff_text(c, names))
        if k < len(w.letters):
            i, e = w.letters[k]
            parts.append(f"x{i}" if e == 1 else f"x{i}^{e}")
    return " * ".join(parts)
