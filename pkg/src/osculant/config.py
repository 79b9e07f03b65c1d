"""Variety config files.

A config is a small TOML document::

    [variety]
    name = "cone_rnc4"
    params = ["u", "v"]
    coords = ["v", "u*v", "u^2*v", "u^3*v", "u^4*v", "1"]

    [fiber]                      # optional
    base_binding = ["u0", "v0"]  # names bound to the base point
    params = ["s"]
    coords = ["u0", "v0 + s"]    # the parameter point t(s), with t(0) = base
    order = 2                    # optional: the order the fiber is meant for

Coordinates use the polynomial expression grammar.
"""

from __future__ import annotations

import hashlib
import json
import re
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .geometry import GeometryError, Parametrization
from .polynomial import ParseError
from .verify import Fiber


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class FiberConfig:
    base_binding: tuple[str, ...]
    params: tuple[str, ...]
    coords: tuple[str, ...]
    order: int | None = None

    def build(self) -> Fiber:
        return Fiber.from_strings(self.base_binding, self.params, self.coords)


@dataclass(frozen=True)
class VarietyConfig:
    name: str
    params: tuple[str, ...]
    coords: tuple[str, ...]
    fiber: FiberConfig | None = None

    @property
    def n(self) -> int:
        return len(self.params)

    @property
    def r(self) -> int:
        return len(self.coords) - 1

    def parametrization(self) -> Parametrization:
        return Parametrization.from_strings(self.name, self.params, self.coords)


def _str_list(table: dict, key: str, section: str) -> tuple[str, ...]:
    value = table.get(key)
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ConfigError(f"[{section}] {key} must be a list of strings")
    return tuple(value)


_TOML_POS = re.compile(r"\(at line (\d+), column (\d+)\)")


def _locate(text: str, needle: str, offset: int) -> tuple[int | None, int | None]:
    # position of an expression error inside the file: first quoted occurrence
    quoted = json.dumps(needle)
    at = text.find(quoted)
    if at < 0:
        return None, None
    at += 1 + offset
    line = text.count("\n", 0, at) + 1
    column = at - (text.rfind("\n", 0, at) + 1) + 1
    return line, column


def parse_config(text: str) -> VarietyConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = _TOML_POS.search(str(exc))
        line, col = (int(m.group(1)), int(m.group(2))) if m else (None, None)
        raise ConfigError(_TOML_POS.sub("", str(exc)).strip(), line, col) from None

    variety = doc.get("variety")
    if not isinstance(variety, dict):
        raise ConfigError("missing [variety] section")
    name = variety.get("name")
    if not isinstance(name, str) or not name:
        raise ConfigError("[variety] name must be a nonempty string")
    params = _str_list(variety, "params", "variety")
    coords = _str_list(variety, "coords", "variety")
    if len(params) < 1:
        raise ConfigError("[variety] params must name at least one parameter")
    if len(coords) < 2:
        raise ConfigError("[variety] coords must have at least two entries")

    fiber = None
    if "fiber" in doc:
        table = doc["fiber"]
        if not isinstance(table, dict):
            raise ConfigError("[fiber] must be a table")
        order = table.get("order")
        if order is not None and (not isinstance(order, int) or order < 0):
            raise ConfigError("[fiber] order must be a nonnegative integer")
        fiber = FiberConfig(
            base_binding=_str_list(table, "base_binding", "fiber"),
            params=_str_list(table, "params", "fiber"),
            coords=_str_list(table, "coords", "fiber"),
            order=order,
        )
        if len(fiber.base_binding) != len(params):
            raise ConfigError("[fiber] base_binding must have one name per variety parameter")
        if len(fiber.coords) != len(params):
            raise ConfigError("[fiber] coords must give one expression per variety parameter")

    cfg = VarietyConfig(name, params, coords, fiber)
    try:
        cfg.parametrization()
        if fiber is not None:
            fiber.build()
    except ParseError as exc:
        line, col = _locate(text, exc.text, exc.pos)
        raise ConfigError(exc.message, line, col) from None
    except (GeometryError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    if cfg.n >= cfg.r:
        warnings.warn(f"{name}: n = {cfg.n} >= r = {cfg.r}; expected a variety of positive codimension")
    return cfg


def load_config(path: str | Path) -> VarietyConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def _toml_list(items: Sequence[str]) -> str:
    return "[" + ", ".join(json.dumps(x) for x in items) + "]"


def dump_config(cfg: VarietyConfig) -> str:
    lines = [
        "[variety]",
        f"name = {json.dumps(cfg.name)}",
        f"params = {_toml_list(cfg.params)}",
        f"coords = {_toml_list(cfg.coords)}",
    ]
    if cfg.fiber is not None:
        lines += [
            "",
            "[fiber]",
            f"base_binding = {_toml_list(cfg.fiber.base_binding)}",
            f"params = {_toml_list(cfg.fiber.params)}",
            f"coords = {_toml_list(cfg.fiber.coords)}",
        ]
        if cfg.fiber.order is not None:
            lines.append(f"order = {cfg.fiber.order}")
    return "\n".join(lines) + "\n"


def from_parametrization(P: Parametrization, fiber: Fiber | None = None,
                         fiber_order: int | None = None) -> VarietyConfig:
    fcfg = None
    if fiber is not None:
        fcfg = FiberConfig(fiber.base, fiber.params, tuple(str(c) for c in fiber.coords), fiber_order)
    return VarietyConfig(P.name, P.params, tuple(str(c) for c in P.coords), fcfg)


def export_entry(entry) -> str:
    """Config text for a catalog entry."""
    return dump_config(from_parametrization(entry.parametrization, entry.fiber, entry.fiber_order))


def digest(cfg: VarietyConfig) -> str:
    """sha256 of the canonical config text (polynomials in canonical form)."""
    P = cfg.parametrization()
    fiber = cfg.fiber.build() if cfg.fiber else None
    canon = from_parametrization(P, fiber, cfg.fiber.order if cfg.fiber else None)
    return hashlib.sha256(dump_config(canon).encode()).hexdigest()
