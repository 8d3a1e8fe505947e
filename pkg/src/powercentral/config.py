"""Session configuration: an INI-style file with [algebra], [constants] and
[limits] sections.

    [algebra]
    kind = quaternion        # rational | finite-field | quaternion | matrix
    a = -1
    b = -1
    # finite-field: p, k        matrix: n, inner = <descriptor>

    [constants]
    a = [0,1,0,0]

    [limits]
    seed = 0
    p_max = 64
"""
from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, field

from .algebra import Algebra, Element
from .errors import AlgebraError, LiteralError
from .literals import parse_algebra, parse_element

DEFAULT_LIMITS = {
    "p_max": 64,
    "n_max": 64,
    "order": 12,
    "L": 6,
    "cap": 10**6,
    "height": 5,
    "bit_cap": 4096,
}


class ConfigError(ValueError):
    pass


@dataclass
class SessionConfig:
    algebra: Algebra
    constants: dict
    seed: int = 0
    limits: dict = field(default_factory=lambda: dict(DEFAULT_LIMITS))
    digest: str = ""

    def element(self, text: str) -> Element:
        """A constant name (optionally '@'-prefixed) or an element literal."""
        name = text[1:] if text.startswith("@") else text
        if name in self.constants:
            return self.constants[name]
        try:
            return parse_element(self.algebra, text)
        except LiteralError as exc:
            raise ConfigError(f"{text!r} is neither a constant nor a valid literal: {exc}") from None


def _algebra_from_section(sec) -> Algebra:
    kind = sec.get("kind")
    if kind is None:
        raise ConfigError("[algebra] needs a 'kind' key")
    kind = kind.strip()
    if "(" in kind:
        return parse_algebra(kind)
    if kind == "rational":
        return parse_algebra("rational")
    if kind == "finite-field":
        return parse_algebra(f"finite-field({sec.get('p', '')},{sec.get('k', '1')})")
    if kind == "quaternion":
        return parse_algebra(f"quaternion({sec.get('a', '')},{sec.get('b', '')})")
    if kind == "matrix":
        return parse_algebra(f"matrix({sec.get('n', '')},{sec.get('inner', '')})")
    raise ConfigError(f"unknown algebra kind {kind!r}")


def parse_config(text: str) -> SessionConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from None
    if not parser.has_section("algebra"):
        raise ConfigError("missing [algebra] section")
    try:
        alg = _algebra_from_section(parser["algebra"])
    except AlgebraError as exc:
        raise ConfigError(f"[algebra]: {exc}") from None
    constants = {}
    if parser.has_section("constants"):
        for name, value in parser["constants"].items():
            try:
                constants[name] = parse_element(alg, value)
            except AlgebraError as exc:
                raise ConfigError(f"[constants] {name}: {exc}") from None
    limits = dict(DEFAULT_LIMITS)
    seed = 0
    if parser.has_section("limits"):
        for key, value in parser["limits"].items():
            if key != "seed" and key not in limits:
                raise ConfigError(f"[limits] unknown key {key!r}")
            try:
                number = int(value)
            except ValueError:
                raise ConfigError(f"[limits] {key} must be an integer, got {value!r}") from None
            if key == "seed":
                seed = number
            else:
                limits[key] = number
    digest = hashlib.sha256(text.encode()).hexdigest()[:16]
    return SessionConfig(alg, constants, seed, limits, digest)
