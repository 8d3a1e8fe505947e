"""Witness pairs x = c_r(u, v), y = c_r(u, v^2) and a bounded search for
relations between them.

Freeness is only ever certified up to a word length L.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .algebra import Element
from .errors import BudgetExceeded
from .minpoly import is_torsion
from .words import SeriesDescriptor, build_c, evaluate

DEFAULT_L = 6
WORD_CAP = 10**5
BIT_CAP = 4096
TORSION_BOUND = 64

LETTERS = "xXyY"
_INVERSE = {"x": "X", "X": "x", "y": "Y", "Y": "y"}

NO_RELATION = "no-relation-up-to-L"
RELATION = "relation-found"
TRUNCATED = "budget-truncated"
_STRENGTH = {NO_RELATION: 0, TRUNCATED: 1, RELATION: 2}


@dataclass
class WitnessPair:
    x: Element
    y: Element
    commute: bool
    word: object  # the c_r word both are evaluations of


@dataclass
class FreenessCertificate:
    x: Element
    y: Element
    L: int
    verdict: str
    words_tested: int
    relation: str | None = None
    provenance: dict = field(default_factory=dict)
    degenerate: bool = False

    def to_record(self) -> dict:
        return {
            "record": "freeness-certificate",
            "x": str(self.x),
            "y": str(self.y),
            "provenance": self.provenance,
            "L": self.L,
            "verdict": self.verdict,
            "relation": self.relation,
            "words_tested": self.words_tested,
            "degenerate": self.degenerate,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))


def build_witnesses(u: Element, v: Element, series: SeriesDescriptor) -> WitnessPair:
    """x = c_r(u, v), y = c_r(u, v^2), evaluations of one and the same word."""
    if u.is_central():
        raise ValueError(f"u = {u} must be non-central")
    if not v.is_unit():
        raise ValueError(f"v = {v} is not a unit")
    c = build_c(u, series)
    x = evaluate(c, [v])
    y = evaluate(c, [v * v])
    return WitnessPair(x, y, x * y == y * x, c)


def word_count(L: int) -> int:
    """Number of nonempty freely reduced words of length <= L on two generators."""
    return sum(4 * 3 ** (l - 1) for l in range(1, L + 1))


def evaluate_word(word: str, x: Element, y: Element) -> Element:
    table = {"x": x, "y": y, "X": x.inverse(), "Y": y.inverse()}
    acc = x.alg.one
    for ch in word:
        acc = acc * table[ch]
    return acc


def reduced_words(length: int):
    """All freely reduced words of the given length, lexicographic in x X y Y."""
    if length == 0:
        yield ""
        return
    for w in reduced_words(length - 1):
        for ch in LETTERS:
            if w and _INVERSE[ch] == w[-1]:
                continue
            yield w + ch


def relation_search(x: Element, y: Element, L: int = DEFAULT_L, cap: int = WORD_CAP, bit_cap: int = BIT_CAP) -> FreenessCertificate:
    """Evaluate every freely reduced word of length 1..L, shortest first."""
    if L < 1:
        raise ValueError("L must be >= 1")
    if 4 * 3 ** (L - 1) > cap:
        raise BudgetExceeded(f"4*3^{L - 1} = {4 * 3 ** (L - 1)} words exceed the cap {cap}")
    alg = x.alg
    table = {"x": x.v, "y": y.v, "X": x.inverse().v, "Y": y.inverse().v}
    one = alg.one_payload
    mul = alg.mul
    level = [("", one)]
    tested = 0
    truncated = False
    for length in range(1, L + 1):
        nxt = []
        for word, val in level:
            for ch in LETTERS:
                if word and _INVERSE[ch] == word[-1]:
                    continue
                prod = mul(val, table[ch])
                tested += 1
                if prod == one:
                    return FreenessCertificate(x, y, L, RELATION, tested, word + ch)
                if alg.bit_size(prod) > bit_cap:
                    truncated = True
                    continue
                nxt.append((word + ch, prod))
        assert truncated or len(nxt) == 4 * 3 ** (length - 1)
        level = nxt
    return FreenessCertificate(x, y, L, TRUNCATED if truncated else NO_RELATION, tested)


def _primitive(alg, v) -> bool:
    """Keep one representative per nonzero rational multiple (char 0 only)."""
    if alg.characteristic != 0:
        return True
    cs = alg.integer_coords(v)
    if math.gcd(*(int(c) for c in cs)) != 1:
        return False
    first = next(c for c in cs if c != 0)
    return first > 0


def torsion_partner_scan(u: Element, height: int, series: SeriesDescriptor, L: int = DEFAULT_L, cap: int = WORD_CAP, bit_cap: int = BIT_CAP) -> list[FreenessCertificate]:
    """Try every non-torsion unit v of integer coordinates bounded by ``height``.

    Rational multiples of one v give the same pair (x, y), so only primitive
    coordinate vectors with positive leading entry are scanned.  Certificates
    are sorted strongest first: no relation, truncated, relation found (longer
    relations first), then scan order.
    """
    if u.is_central():
        raise ValueError(f"u = {u} must be non-central")
    alg = u.alg
    if 4 * 3 ** (max(L, 1) - 1) > cap:
        raise BudgetExceeded(f"L = {L} exceeds the word cap {cap}")
    certs = []
    if height <= 0:
        return certs
    for payload in alg.bounded(height):
        if alg.is_zero(payload) or not _primitive(alg, payload):
            continue
        v = Element(alg, payload)
        if not v.is_unit() or is_torsion(v, TORSION_BOUND) is not None:
            continue
        pair = build_witnesses(u, v, series)
        cert = relation_search(pair.x, pair.y, L, cap, bit_cap)
        cert.provenance = {"u": str(u), "v": str(v), "series": str(series)}
        cert.degenerate = pair.commute
        certs.append(cert)
    order = {id(c): k for k, c in enumerate(certs)}
    certs.sort(key=lambda c: (_STRENGTH[c.verdict], -len(c.relation or ""), order[id(c)]))
    return certs
