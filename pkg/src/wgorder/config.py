"""Loading system configurations from JSON with located diagnostics.

Errors name the file, and either the line/column of a syntax error or the
dotted path of the offending field (``units[1].baseline.params``).
"""

from __future__ import annotations

import json
from pathlib import Path

from .baseline import BaselineModel, Family
from .copula import ArchimedeanGenerator
from .errors import ConfigError, WGOrderError
from .systems import SystemSpec
from .weibull_g import WeibullGParams


def _require(data: dict, key: str, where: str, kind=None):
    if not isinstance(data, dict):
        raise ConfigError(f"expected an object, got {type(data).__name__}", where)
    if key not in data:
        raise ConfigError(f"missing field {key!r}", where)
    value = data[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool)):
        raise ConfigError(f"field {key!r} has wrong type {type(value).__name__}", f"{where}.{key}")
    return value


def _number(data: dict, key: str, where: str) -> float:
    return float(_require(data, key, where, (int, float)))


def parse_baseline(data, where: str = "baseline") -> BaselineModel:
    family = _require(data, "family", where, str)
    params = _require(data, "params", where, list)
    try:
        Family(family)
    except ValueError:
        raise ConfigError(f"unknown family {family!r}", f"{where}.family") from None
    if not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in params):
        raise ConfigError("params must be numbers", f"{where}.params")
    try:
        return BaselineModel(Family(family), tuple(float(p) for p in params))
    except WGOrderError as exc:
        raise ConfigError(str(exc), f"{where}.params") from None


def parse_unit(data, where: str) -> WeibullGParams:
    alpha = _number(data, "alpha", where)
    beta = _number(data, "beta", where)
    gamma = _number(data, "gamma", where)
    baseline = parse_baseline(_require(data, "baseline", where), f"{where}.baseline")
    try:
        return WeibullGParams(alpha, beta, gamma, baseline)
    except WGOrderError as exc:
        raise ConfigError(str(exc), where) from None


def parse_generator(data, where: str = "copula") -> ArchimedeanGenerator:
    try:
        return ArchimedeanGenerator.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"malformed generator: {exc}", where) from None
    except (WGOrderError, ValueError) as exc:
        raise ConfigError(str(exc), where) from None


def parse_system(data, where: str = "$") -> SystemSpec:
    units_raw = _require(data, "units", where, list)
    if not units_raw:
        raise ConfigError("a system needs at least one unit", f"{where}.units")
    units = tuple(parse_unit(u, f"{where}.units[{i}]") for i, u in enumerate(units_raw))
    known = {"units", "shock_probs", "copula", "outlier_split"}
    extra = sorted(set(data) - known)
    if extra:
        raise ConfigError(f"unknown field(s) {extra}", where)
    shocks = data.get("shock_probs")
    if shocks is not None and not (
        isinstance(shocks, list) and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in shocks)
    ):
        raise ConfigError("shock_probs must be a list of numbers", f"{where}.shock_probs")
    copula = data.get("copula")
    generator = parse_generator(copula, f"{where}.copula") if copula is not None else None
    split = data.get("outlier_split")
    if split is not None and not (isinstance(split, list) and len(split) == 2 and all(isinstance(v, int) for v in split)):
        raise ConfigError("outlier_split must be [n1, n2]", f"{where}.outlier_split")
    try:
        return SystemSpec(
            units,
            tuple(shocks) if shocks is not None else None,
            generator,
            tuple(split) if split is not None else None,
        )
    except WGOrderError as exc:
        raise ConfigError(str(exc), where) from None


def load_json(path: str | Path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror or exc}", str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def load_system(path: str | Path) -> SystemSpec:
    data = load_json(path)
    try:
        return parse_system(data)
    except ConfigError as exc:
        raise ConfigError(exc.message, f"{path}: {exc.where}") from None


def dump_system(sys: SystemSpec) -> str:
    return json.dumps(sys.to_dict(), indent=2, sort_keys=True) + "\n"
