"""Small numerical helpers shared by the grid-based structural checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, EvaluationError


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a grid falsifier: ``ok`` or a concrete ``witness``."""

    ok: bool
    witness: tuple | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def divided_differences(x: np.ndarray, f: np.ndarray, order: int) -> np.ndarray:
    """``f[x_i, ..., x_{i+order}]`` for every admissible ``i``.

    By the mean value theorem each entry equals ``f^(order)(xi) / order!`` for
    some ``xi`` inside its stencil, so the signs are those of the derivative.
    """
    d = np.asarray(f, dtype=float)
    for k in range(1, order + 1):
        d = (d[1:] - d[:-1]) / (x[k:] - x[:-k])
    return d


def scaled_differences(x: np.ndarray, f: np.ndarray, order: int) -> np.ndarray:
    """Divided differences multiplied by ``span**order / order!``.

    Same signs as :func:`divided_differences`, but on the scale of plain
    differences of ``f``, so one absolute tolerance fits every grid spacing.
    """
    span = x[order:] - x[:-order]
    return divided_differences(x, f, order) * span**order / math.factorial(order)


def evaluate_on(fn, x: np.ndarray) -> np.ndarray:
    """Evaluate ``fn`` at ``x`` (vectorised if it can be) and insist on finiteness."""
    try:
        vals = np.asarray(fn(x), dtype=float)
        if vals.shape != x.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(fn(float(xi))) for xi in x])
    bad = ~np.isfinite(vals)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise EvaluationError(float(x[i]), f"non-finite value {vals[i]!r} at x={x[i]!r}")
    return vals


def require_increasing(x, minimum: int) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size < minimum:
        raise DimensionError(f"grid needs at least {minimum} points, got {x.size}")
    if np.any(np.diff(x) <= 0):
        raise DimensionError("grid must be strictly increasing")
    return x
