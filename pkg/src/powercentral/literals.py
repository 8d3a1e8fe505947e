"""Text forms of algebras and their elements.

Element literals: rationals ``p/q`` (or integers), quaternions ``[w,x,y,z]``,
finite-field residues as an integer or a coefficient vector ``[c0,...,c_{k-1}]``,
matrices as row-major nested lists.  Algebra descriptors: ``rational``,
``finite-field(p,k)``, ``quaternion(a,b)``, ``matrix(n, <inner>)``.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Algebra, Element, FiniteField, MatrixAlgebra, QuaternionAlgebra, RationalField
from .errors import LiteralError

_TOKEN = re.compile(r"\s*(?:(?P<num>[+-]?\d+(?:/\d+)?)|(?P<punct>[\[\],]))")


def parse_nested(text: str):
    """Parse a literal into a Fraction or nested lists of Fractions."""
    pos = 0
    tokens = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LiteralError(f"bad character in literal {text!r} at position {pos}")
        tokens.append((m.group("num") or m.group("punct"), m.start(m.lastindex)))
        pos = m.end()
    if not tokens:
        raise LiteralError("empty literal")

    def value(i):
        tok, at = tokens[i]
        if tok == "[":
            items = []
            i += 1
            if i < len(tokens) and tokens[i][0] == "]":
                return items, i + 1
            while True:
                if i >= len(tokens):
                    raise LiteralError(f"unterminated list in {text!r}")
                item, i = value(i)
                items.append(item)
                if i >= len(tokens):
                    raise LiteralError(f"unterminated list in {text!r}")
                if tokens[i][0] == "]":
                    return items, i + 1
                if tokens[i][0] != ",":
                    raise LiteralError(f"expected ',' at position {tokens[i][1]} in {text!r}")
                i += 1
        if tok in ",]":
            raise LiteralError(f"unexpected {tok!r} at position {at} in {text!r}")
        try:
            return Fraction(tok), i + 1
        except ZeroDivisionError:
            raise LiteralError(f"zero denominator at position {at} in {text!r}") from None

    result, end = value(0)
    if end != len(tokens):
        raise LiteralError(f"trailing input at position {tokens[end][1]} in {text!r}")
    return result


def parse_element(alg: Algebra, text) -> Element:
    if isinstance(text, Element):
        return text
    obj = parse_nested(text) if isinstance(text, str) else text
    if isinstance(obj, int):
        obj = Fraction(obj)
    return Element(alg, alg.from_literal(obj))


def format_element(x: Element) -> str:
    return x.alg.format(x.v)


_DESCRIPTOR = re.compile(r"^\s*([a-z-]+)\s*(?:\((.*)\))?\s*$", re.S)


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or parts:
        parts.append(tail)
    return parts


def _int_arg(s, what):
    try:
        return int(s)
    except ValueError:
        raise LiteralError(f"{what} must be an integer, got {s!r}") from None


def parse_algebra(text: str) -> Algebra:
    m = _DESCRIPTOR.match(text)
    if not m:
        raise LiteralError(f"cannot parse algebra descriptor {text!r}")
    kind, body = m.group(1), m.group(2)
    args = _split_args(body) if body is not None else []
    if kind in ("rational", "q"):
        if args:
            raise LiteralError("rational takes no parameters")
        return RationalField()
    if kind == "finite-field":
        if len(args) not in (1, 2):
            raise LiteralError("finite-field(p[,k]) takes one or two parameters")
        p = _int_arg(args[0], "p")
        k = _int_arg(args[1], "k") if len(args) == 2 else 1
        return FiniteField(p, k)
    if kind == "quaternion":
        if len(args) != 2:
            raise LiteralError("quaternion(a,b) takes two parameters")
        try:
            a, b = Fraction(args[0]), Fraction(args[1])
        except (ValueError, ZeroDivisionError):
            raise LiteralError(f"bad quaternion parameters {args!r}") from None
        return QuaternionAlgebra(a, b)
    if kind == "matrix":
        if len(args) != 2:
            raise LiteralError("matrix(n, inner) takes two parameters")
        return MatrixAlgebra(_int_arg(args[0], "n"), parse_algebra(args[1]))
    raise LiteralError(f"unknown algebra kind {kind!r}")
