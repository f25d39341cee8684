"""Grid checks of the usual stochastic, hazard rate and likelihood ratio orders.

Every check compares two system minima ``a`` and ``b`` and asks whether
``a <= b`` in the given order.  Ratios are handled on the log scale: the
density ratio of two minima routinely spans hundreds of orders of magnitude
on ``x = -ln y`` grids, and monotonicity is unaffected by the logarithm.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConfigError, EvaluationError, SaturationError, UnsupportedRegimeError
from .grid import Grid, as_x_array
from .systems import Regime, SystemSpec, min_hazard, min_log_pdf, min_log_survival, min_survival

ST_TOL = 1e-9
HR_TOL = 1e-9
LR_TOL = 1e-9
MONOTONE_SLACK = 1e-9


class Relation(str, enum.Enum):
    ST = "st"
    HR = "hr"
    LR = "lr"


class Status(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class OrderVerdict:
    relation: Relation
    status: Status
    witness: tuple[float, float, float] | None = None
    tolerance: float = 0.0
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    def to_dict(self) -> dict:
        return {
            "relation": self.relation.value,
            "status": self.status.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


def _grid_x(grid) -> np.ndarray:
    return as_x_array(Grid.uniform() if grid is None else grid)


def _relative_slack(tol: float, *scales: np.ndarray) -> np.ndarray:
    return tol * np.maximum(1.0, np.maximum.reduce([np.abs(s) for s in scales]))


def _first_drop(values: np.ndarray, slack: np.ndarray) -> int | None:
    """Index ``i`` of the first ``values[i+1] < values[i] - slack``."""
    drops = np.diff(values) < -np.maximum(slack[1:], slack[:-1])
    return int(np.argmax(drops)) if np.any(drops) else None


def _inconclusive(relation: Relation, tol: float, exc: Exception) -> OrderVerdict:
    x = getattr(exc, "x", None)
    witness = (float(x), float("nan"), float("nan")) if isinstance(x, (int, float)) else None
    return OrderVerdict(relation, Status.INCONCLUSIVE, witness, tol, f"{type(exc).__name__}: {exc}")


def check_st(a: SystemSpec, b: SystemSpec, grid=None, tol: float = ST_TOL) -> OrderVerdict:
    """``a <=_st b``: ``S_a(x) <= S_b(x) + tol`` at every grid point."""
    if (a.regime is Regime.COPULA) != (b.regime is Regime.COPULA):
        raise ConfigError("cannot compare a copula-dependent system with an independent one")
    x = _grid_x(grid)
    try:
        sa, sb = np.asarray(min_survival(a, x)), np.asarray(min_survival(b, x))
    except (SaturationError, EvaluationError) as exc:
        return _inconclusive(Relation.ST, tol, exc)
    if not (np.all(np.isfinite(sa)) and np.all(np.isfinite(sb))):
        i = int(np.argmax(~(np.isfinite(sa) & np.isfinite(sb))))
        return OrderVerdict(Relation.ST, Status.INCONCLUSIVE, (float(x[i]), sa[i], sb[i]), tol, "non-finite survival")
    bad = sa > sb + tol
    if np.any(bad):
        i = int(np.argmax(sa - sb))
        return OrderVerdict(
            Relation.ST, Status.FAILS, (float(x[i]), float(sa[i]), float(sb[i])), tol, "S_a(x) > S_b(x)"
        )
    return OrderVerdict(Relation.ST, Status.HOLDS, None, tol)


def _require_hazard_regimes(a: SystemSpec, b: SystemSpec) -> None:
    for s in (a, b):
        if s.regime is Regime.COPULA:
            raise UnsupportedRegimeError("hr and lr checks need independent or shocked systems")


def check_hr(a: SystemSpec, b: SystemSpec, grid=None, tol: float = HR_TOL) -> OrderVerdict:
    """``a <=_hr b``.

    Needs ``r_a(x) >= r_b(x)`` and ``S_b / S_a`` nondecreasing on the grid
    (slack ``tol`` relative to the magnitudes involved), plus, for shocked
    systems, the upward step of ``S_b / S_a`` at 0: ``prod p(a) <= prod p(b)``.
    """
    _require_hazard_regimes(a, b)
    x = _grid_x(grid)
    pa, pb = a.survival_at_zero, b.survival_at_zero
    if pa > pb * (1 + tol):
        return OrderVerdict(
            Relation.HR, Status.FAILS, (0.0, pa, pb), tol, "survival ratio S_b/S_a drops at x=0 (prod p_a > prod p_b)"
        )
    try:
        ra, rb = np.asarray(min_hazard(a, x)), np.asarray(min_hazard(b, x))
        la, lb = np.asarray(min_log_survival(a, x)), np.asarray(min_log_survival(b, x))
    except (SaturationError, EvaluationError) as exc:
        return _inconclusive(Relation.HR, tol, exc)
    finite = np.isfinite(ra) & np.isfinite(rb) & np.isfinite(la) & np.isfinite(lb)
    if not np.all(finite):
        i = int(np.argmax(~finite))
        return OrderVerdict(Relation.HR, Status.INCONCLUSIVE, (float(x[i]), ra[i], rb[i]), tol, "non-finite hazard")
    short = ra < rb - _relative_slack(tol, ra, rb)
    if np.any(short):
        i = int(np.argmax(short))
        return OrderVerdict(
            Relation.HR, Status.FAILS, (float(x[i]), float(ra[i]), float(rb[i])), tol, "r_a(x) < r_b(x)"
        )
    log_ratio = lb - la
    i = _first_drop(log_ratio, _relative_slack(tol, la, lb))
    if i is not None:
        return OrderVerdict(
            Relation.HR,
            Status.FAILS,
            (float(x[i + 1]), float(log_ratio[i]), float(log_ratio[i + 1])),
            tol,
            "log S_b/S_a decreases",
        )
    return OrderVerdict(Relation.HR, Status.HOLDS, None, tol)


def log_density_ratio(a: SystemSpec, b: SystemSpec, x) -> np.ndarray:
    """``log f_b(x) - log f_a(x)`` for the continuous parts of the minima."""
    return np.asarray(min_log_pdf(b, x)) - np.asarray(min_log_pdf(a, x))


def check_lr(a: SystemSpec, b: SystemSpec, grid=None, tol: float = LR_TOL) -> OrderVerdict:
    """``a <=_lr b``: ``f_b / f_a`` nondecreasing on the grid.

    The relative slack ``tol * |ratio|`` becomes an additive ``tol`` on the
    log scale, widened where the log densities themselves are large.  Shocked
    systems must also pass the x=0 step of the hazard rate order, which the
    likelihood ratio order implies.
    """
    _require_hazard_regimes(a, b)
    x = _grid_x(grid)
    pa, pb = a.survival_at_zero, b.survival_at_zero
    if pa > pb * (1 + tol):
        return OrderVerdict(
            Relation.LR, Status.FAILS, (0.0, pa, pb), tol, "shock atoms incompatible with lr (prod p_a > prod p_b)"
        )
    try:
        fa, fb = np.asarray(min_log_pdf(a, x)), np.asarray(min_log_pdf(b, x))
    except (SaturationError, EvaluationError) as exc:
        return _inconclusive(Relation.LR, tol, exc)
    finite = np.isfinite(fa) & np.isfinite(fb)
    if not np.all(finite):
        i = int(np.argmax(~finite))
        return OrderVerdict(
            Relation.LR, Status.INCONCLUSIVE, (float(x[i]), float(fa[i]), float(fb[i])), tol, "zero or infinite density"
        )
    log_ratio = fb - fa
    i = _first_drop(log_ratio, _relative_slack(tol, fa, fb))
    if i is not None:
        return OrderVerdict(
            Relation.LR,
            Status.FAILS,
            (float(x[i + 1]), float(log_ratio[i]), float(log_ratio[i + 1])),
            tol,
            "log f_b/f_a decreases",
        )
    return OrderVerdict(Relation.LR, Status.HOLDS, None, tol)


CHECKS: dict[Relation, Callable[..., OrderVerdict]] = {
    Relation.ST: check_st,
    Relation.HR: check_hr,
    Relation.LR: check_lr,
}


def check(relation: Relation | str, a: SystemSpec, b: SystemSpec, grid=None) -> OrderVerdict:
    return CHECKS[Relation(relation)](a, b, grid)


# -- monotonicity ---------------------------------------------------------------


class Trend(str, enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    FLAT = "flat"
    NON_MONOTONE = "non-monotone"


@dataclass(frozen=True)
class MonotonicityReport:
    trend: Trend
    witness: tuple[float, float] | None = None  # (x where f rises, x where f falls)
    slack: float = MONOTONE_SLACK

    def to_dict(self) -> dict:
        return {
            "trend": self.trend.value,
            "witness": list(self.witness) if self.witness is not None else None,
            "slack": self.slack,
        }


def classify_sequence(x: np.ndarray, values: np.ndarray, slack: float = MONOTONE_SLACK, relative: bool = False):
    """Trend of ``values`` along increasing ``x`` using pairwise differences."""
    d = np.diff(values)
    s = _relative_slack(slack, values[1:], values[:-1]) if relative else np.full(d.shape, slack)
    up, down = d > s, d < -s
    if not up.any() and not down.any():
        return MonotonicityReport(Trend.FLAT, None, slack)
    if not down.any():
        return MonotonicityReport(Trend.INCREASING, None, slack)
    if not up.any():
        return MonotonicityReport(Trend.DECREASING, None, slack)
    i_up, i_down = int(np.argmax(up)), int(np.argmax(down))
    return MonotonicityReport(Trend.NON_MONOTONE, (float(x[i_up + 1]), float(x[i_down + 1])), slack)


def monotonicity_report(f: Callable, grid=None, slack: float = MONOTONE_SLACK, relative: bool = False):
    """Classify ``f`` on the grid as increasing, decreasing, flat or non-monotone.

    With ``relative=True`` the slack scales with ``|f|``, for log-ratios whose
    rounding error grows with their magnitude.
    """
    x = _grid_x(grid)
    values = np.asarray(f(x), dtype=float)
    if values.shape != x.shape:
        values = np.array([float(f(xi)) for xi in x])
    bad = ~np.isfinite(values)
    if np.any(bad):
        i = int(np.argmax(bad))
        raise EvaluationError(float(x[i]), f"non-finite value {values[i]!r} at x={x[i]!r}")
    return classify_sequence(x, values, slack, relative)
