"""Built-in counterexample configurations and their figure panels.

``ce-3.1``
    Burr(3, 0.35) baseline, beta = 5, shared scales gamma = (2, 1.5, 1.5).
    Panels ``fig1a``-``fig1c`` are the odds shape functions ``w'``,
    ``x w'/w`` and ``x w''/w'``.  Panel ``fig2a`` compares alpha = (4, 1, 1)
    with lambda = (3, 1.5, 1.5) (a multiple-outlier pair), ``fig2b`` compares
    alpha = (0.95, 0.3, 0.1) with lambda = (0.95, 0.25, 0.15).  The second
    vector in each pair is the scale-alpha vector of the other system; the
    gamma vector is shared.

``ce-3.2``
    Weibull(rate 0.02, shape 2) baseline, beta = 3.4, alpha = (3, 3, 1) for
    both systems, gamma = (3, 3, 1) against delta = (2.5, 2.5, 2).  Panels
    ``fig3a``/``fig3b`` are ``w'`` and ``w''``; ``fig3c`` compares the two
    minima.

Density-ratio panels hold ``log(f_b / f_a)``, with ``a`` the first system of
each pair: it is increasing exactly when ``a <=_lr b``, and stays finite
where the ratio itself overflows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .baseline import BaselineModel, OddsFunction
from .grid import REPRODUCTION_POINTS, Grid
from .orderlab import MonotonicityReport, Trend, classify_sequence, log_density_ratio
from .systems import SystemSpec


@dataclass(frozen=True)
class Panel:
    name: str
    label: str
    fn: Callable[[np.ndarray], np.ndarray]
    expected: Trend
    relative: bool = False


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    baseline: BaselineModel
    beta: float
    systems: dict[str, tuple[SystemSpec, SystemSpec]]
    panels: tuple[Panel, ...]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "baseline": self.baseline.to_dict(),
            "beta": self.beta,
            "systems": {k: {"a": a.to_dict(), "b": b.to_dict()} for k, (a, b) in self.systems.items()},
            "panels": {p.name: {"label": p.label, "expected": p.expected.value} for p in self.panels},
        }


@dataclass(frozen=True)
class PanelResult:
    panel: Panel
    y: np.ndarray
    x: np.ndarray
    values: np.ndarray
    report: MonotonicityReport

    @property
    def matches(self) -> bool:
        return self.report.trend is self.panel.expected


def _shape_panels(w: OddsFunction, prefix: str, kinds: tuple[str, ...], expected: tuple[Trend, ...]) -> list[Panel]:
    fns = {
        "w'": (lambda x: w.derivative(x, 1)),
        "w''": (lambda x: w.derivative(x, 2)),
        "x w'/w": (lambda x: x * w.derivative(x, 1) / w(x)),
        "x w''/w'": (lambda x: x * w.derivative(x, 2) / w.derivative(x, 1)),
    }
    return [Panel(f"{prefix}{chr(ord('a') + i)}", k, fns[k], e) for i, (k, e) in enumerate(zip(kinds, expected))]


def _ratio_panel(name: str, label: str, pair: tuple[SystemSpec, SystemSpec], expected: Trend) -> Panel:
    a, b = pair
    return Panel(name, label, lambda x: log_density_ratio(a, b, x), expected, relative=True)


def ce_3_1() -> Preset:
    base = BaselineModel.burr(3.0, 0.35)
    beta, gamma = 5.0, (2.0, 1.5, 1.5)
    outlier = (
        SystemSpec.from_vectors((4.0, 1.0, 1.0), gamma, beta, base),
        SystemSpec.from_vectors((3.0, 1.5, 1.5), gamma, beta, base),
    )
    mixed = (
        SystemSpec.from_vectors((0.95, 0.3, 0.1), gamma, beta, base),
        SystemSpec.from_vectors((0.95, 0.25, 0.15), gamma, beta, base),
    )
    w = OddsFunction(base)
    panels = _shape_panels(
        w, "fig1", ("w'", "x w'/w", "x w''/w'"), (Trend.INCREASING, Trend.DECREASING, Trend.DECREASING)
    )
    panels.append(_ratio_panel("fig2a", "log f_b/f_a, multiple-outlier pair", outlier, Trend.INCREASING))
    panels.append(_ratio_panel("fig2b", "log f_b/f_a, non-outlier pair", mixed, Trend.NON_MONOTONE))
    return Preset(
        "ce-3.1",
        "Burr(3, 0.35), beta=5, gamma=(2,1.5,1.5); alpha vs lambda with lambda in the second system",
        base,
        beta,
        {"outlier": outlier, "non-outlier": mixed},
        tuple(panels),
    )


def ce_3_2() -> Preset:
    base = BaselineModel.weibull(0.02, 2.0)
    beta, alpha = 3.4, (3.0, 3.0, 1.0)
    pair = (
        SystemSpec.from_vectors(alpha, (3.0, 3.0, 1.0), beta, base),
        SystemSpec.from_vectors(alpha, (2.5, 2.5, 2.0), beta, base),
    )
    w = OddsFunction(base)
    panels = _shape_panels(w, "fig3", ("w'", "w''"), (Trend.INCREASING, Trend.INCREASING))
    panels.append(_ratio_panel("fig3c", "log f_b/f_a, gamma vs delta", pair, Trend.NON_MONOTONE))
    return Preset(
        "ce-3.2",
        "Weibull(0.02, 2), beta=3.4, alpha=(3,3,1); gamma=(3,3,1) vs delta=(2.5,2.5,2)",
        base,
        beta,
        {"scale": pair},
        tuple(panels),
    )


PRESETS: dict[str, Callable[[], Preset]] = {"ce-3.1": ce_3_1, "ce-3.2": ce_3_2}


def get_preset(name: str) -> Preset:
    key = name.strip().lower()
    if key not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[key]()


def evaluate_panels(preset: Preset, grid: Grid | None = None, slack: float = 1e-9) -> list[PanelResult]:
    """Evaluate and classify every panel of ``preset`` on ``grid``."""
    grid = grid or Grid.uniform(REPRODUCTION_POINTS)
    x, y = grid.x, grid.y
    out = []
    for panel in preset.panels:
        values = np.asarray(panel.fn(x), dtype=float)
        out.append(PanelResult(panel, y, x, values, classify_sequence(x, values, slack, panel.relative)))
    return out
