"""Vector majorization, ordered cones, Schur-convexity probing and r-convexity.

``x`` majorizes ``y`` when the increasing partial sums of ``x`` never exceed
those of ``y`` and the totals agree, i.e. ``x`` is the more spread-out vector.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, EvaluationError, ParameterDomainError
from .grid import as_x_array
from .numerics import CheckResult, divided_differences, evaluate_on, require_increasing

SUM_TOL = 1e-9


def as_param_vector(v: Sequence[float]) -> np.ndarray:
    arr = np.asarray(v, dtype=float).ravel()
    if arr.size == 0:
        raise DimensionError("parameter vectors must be nonempty")
    if np.any(~(np.isfinite(arr) & (arr > 0))):
        raise ParameterDomainError(f"parameter vector entries must be positive: {arr.tolist()}")
    return arr


def majorizes(x: Sequence[float], y: Sequence[float], tol: float = SUM_TOL) -> bool:
    """True iff ``x`` majorizes ``y`` (totals equal within ``tol``)."""
    xs = np.sort(as_param_vector(x))
    ys = np.sort(as_param_vector(y))
    if xs.size != ys.size:
        raise DimensionError(f"length mismatch: {xs.size} vs {ys.size}")
    cx, cy = np.cumsum(xs), np.cumsum(ys)
    if abs(cx[-1] - cy[-1]) > tol:
        return False
    return bool(np.all(cx[:-1] <= cy[:-1] + tol))


class Cone(str, enum.Enum):
    DECREASING = "decreasing"
    INCREASING = "increasing"
    BOTH = "both"
    NEITHER = "neither"


def cone_membership(x: Sequence[float]) -> Cone:
    """Which ordered positive cone ``x`` lies in; ties belong to both."""
    d = np.diff(as_param_vector(x))
    dec, inc = bool(np.all(d <= 0)), bool(np.all(d >= 0))
    if dec and inc:
        return Cone.BOTH
    if dec:
        return Cone.DECREASING
    if inc:
        return Cone.INCREASING
    return Cone.NEITHER


def in_cone(x: Sequence[float], cone: Cone | str) -> bool:
    member = cone_membership(x)
    return member is Cone.BOTH or member is Cone(cone)


def arrange(x: np.ndarray, cone: Cone | str | None) -> np.ndarray:
    if cone is None:
        return np.array(x, dtype=float)
    cone = Cone(cone)
    if cone is Cone.DECREASING:
        return np.sort(x)[::-1]
    if cone is Cone.INCREASING:
        return np.sort(x)
    raise ValueError(f"cannot arrange a vector into cone {cone.value!r}")


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_majorization_pair(
    seed, base: Sequence[float], steps: int, cone: Cone | str | None = Cone.DECREASING
) -> tuple[np.ndarray, np.ndarray]:
    """``(x, y)`` with ``x = base`` and ``y`` obtained by ``steps`` Robin-Hood transfers.

    Each transfer moves part of the gap between a richer and a poorer entry
    without letting them cross, so ``x`` always majorizes ``y`` and totals
    are preserved.  Both vectors are then arranged into ``cone``.
    """
    x = as_param_vector(base)
    if steps < 0:
        raise ParameterDomainError("steps must be nonnegative")
    rng = _rng(seed)
    y = x.copy()
    for _ in range(int(steps)):
        if np.ptp(y) == 0:
            break
        i, j = rng.choice(y.size, 2, replace=False)
        if y[i] == y[j]:
            continue
        rich, poor = (i, j) if y[i] > y[j] else (j, i)
        delta = rng.uniform(0.05, 0.5) * (y[rich] - y[poor])
        y[rich] -= delta
        y[poor] += delta
    return arrange(x, cone), arrange(y, cone)


class SchurClass(str, enum.Enum):
    CONVEX = "consistent-convex"
    CONCAVE = "consistent-concave"
    CONSTANT = "constant"
    MIXED = "mixed"


@dataclass
class SchurProbeResult:
    classification: SchurClass
    trials: int
    witnesses: list[tuple[np.ndarray, np.ndarray, float]] = field(default_factory=list)


def schur_probe(
    f: Callable[[np.ndarray], float],
    dim: int,
    trials: int,
    seed,
    tol: float = 1e-9,
) -> SchurProbeResult:
    """Sample majorization pairs and classify the sign of ``f(x) - f(y)``.

    This is a falsifier: agreement on every sampled pair corroborates
    Schur-convexity (or concavity) but never proves it.  ``mixed`` comes with
    one witness pair for each sign.
    """
    rng = _rng(seed)
    pos = neg = None
    any_pos = any_neg = False
    for _ in range(int(trials)):
        base = rng.uniform(0.1, 5.0, int(dim))
        x, y = random_majorization_pair(rng, base, int(rng.integers(1, 6)), cone=None)
        try:
            fx, fy = float(f(x)), float(f(y))
        except Exception as exc:
            raise EvaluationError(x.tolist(), f"f failed on {x.tolist()} / {y.tolist()}: {exc}") from exc
        if not (math.isfinite(fx) and math.isfinite(fy)):
            raise EvaluationError(x.tolist(), f"non-finite f on {x.tolist()} / {y.tolist()}")
        diff = fx - fy
        slack = tol * max(1.0, abs(fx), abs(fy))
        if diff > slack:
            any_pos = True
            pos = pos or (x, y, diff)
        elif diff < -slack:
            any_neg = True
            neg = neg or (x, y, diff)
    if any_pos and any_neg:
        return SchurProbeResult(SchurClass.MIXED, trials, [pos, neg])
    if any_pos:
        return SchurProbeResult(SchurClass.CONVEX, trials)
    if any_neg:
        return SchurProbeResult(SchurClass.CONCAVE, trials)
    return SchurProbeResult(SchurClass.CONSTANT, trials)


def r_convexity_check(f: Callable, r: int, grid, tol: float = 1e-9) -> CheckResult:
    """Grid check that the ``r``-th derivative of ``f`` is nonnegative.

    Uses ``r``-th divided differences (valid on uneven grids such as
    ``x = -ln y``).  The tolerance is ``tol``, raised to the rounding-noise
    floor ``~ eps |f| / h**r`` of the differences where that is larger.
    """
    if r not in (1, 2, 3):
        raise ParameterDomainError(f"r must be 1, 2 or 3, got {r}")
    x = require_increasing(as_x_array(grid), r + 2)
    vals = evaluate_on(f, x)
    dd = divided_differences(x, vals, r)
    h = np.min(np.column_stack([np.diff(x)[i : i + dd.size] for i in range(r)]), axis=1)
    mag = np.max(np.column_stack([np.abs(vals[i : i + dd.size]) for i in range(r + 1)]), axis=1)
    slack = np.maximum(tol, 16 * 2**r * np.finfo(float).eps * mag / h**r)
    bad = dd < -slack
    if not np.any(bad):
        return CheckResult(True, detail=f"order-{r} differences nonnegative on {x.size} points")
    i = int(np.argmax(bad))
    return CheckResult(
        False,
        witness=(float(x[i]), float(dd[i])),
        detail=f"order-{r} divided difference {dd[i]:.3g} at x={x[i]:.6g}",
    )
