"""The smallest order statistic of an n-unit heterogeneous Weibull-G sample.

Three regimes are supported:

* independent units: ``S(x) = exp(-sum_i alpha_i w(gamma_i x)**beta)``
* independent units under random shocks, unit ``i`` failing at time 0 with
  probability ``1 - p_i``: ``S(x) = prod(p) * exp(-sum_i ...)``; the minimum
  has an atom of mass ``1 - prod(p)`` at 0
* units tied by an Archimedean survival copula with generator ``psi``:
  ``S(x) = psi(sum_i phi(S_i(x)))``
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .baseline import BaselineModel, _scalar_or_array
from .copula import ArchimedeanGenerator
from .errors import ParameterDomainError, UnsupportedRegimeError
from .weibull_g import WeibullGParams, from_cumhazard, wg_cumhazard, wg_hazard


class Regime(str, enum.Enum):
    INDEPENDENT = "independent"
    SHOCKED = "shocked"
    COPULA = "copula"


@dataclass(frozen=True)
class SystemSpec:
    units: tuple[WeibullGParams, ...]
    shock_probs: tuple[float, ...] | None = None
    generator: ArchimedeanGenerator | None = None
    outlier_split: tuple[int, int] | None = None

    def __post_init__(self):
        units = tuple(self.units)
        if not units:
            raise ParameterDomainError("a system needs at least one unit")
        first = units[0]
        for u in units[1:]:
            if u.beta != first.beta:
                raise ParameterDomainError("all units must share beta")
            if u.baseline != first.baseline:
                raise ParameterDomainError("all units must share the baseline model")
        object.__setattr__(self, "units", units)
        if self.shock_probs is not None:
            probs = tuple(float(p) for p in self.shock_probs)
            if len(probs) != len(units):
                raise ParameterDomainError(f"need {len(units)} shock probabilities, got {len(probs)}")
            if any(not (0 < p <= 1) for p in probs):
                raise ParameterDomainError(f"shock probabilities must lie in (0, 1]: {probs}")
            object.__setattr__(self, "shock_probs", probs)
        if self.shock_probs is not None and self.generator is not None:
            raise ParameterDomainError("random shocks and copula dependence cannot be combined")
        if self.outlier_split is not None:
            n1, n2 = (int(v) for v in self.outlier_split)
            if n1 < 1 or n2 < 1 or n1 + n2 != len(units):
                raise ParameterDomainError(f"outlier split {self.outlier_split} does not partition {len(units)} units")
            if len(set(units[:n1])) != 1 or len(set(units[n1:])) != 1:
                raise ParameterDomainError("outlier blocks must consist of identical units")
            object.__setattr__(self, "outlier_split", (n1, n2))

    @classmethod
    def from_vectors(
        cls,
        alpha: Sequence[float],
        gamma: Sequence[float],
        beta: float,
        baseline: BaselineModel,
        *,
        shock_probs: Sequence[float] | None = None,
        generator: ArchimedeanGenerator | None = None,
        outlier_split: tuple[int, int] | None = None,
    ) -> SystemSpec:
        if len(alpha) != len(gamma):
            raise ParameterDomainError("alpha and gamma must have the same length")
        units = tuple(WeibullGParams(a, beta, g, baseline) for a, g in zip(alpha, gamma))
        return cls(units, shock_probs, generator, outlier_split)

    @property
    def n(self) -> int:
        return len(self.units)

    @property
    def beta(self) -> float:
        return self.units[0].beta

    @property
    def baseline(self) -> BaselineModel:
        return self.units[0].baseline

    @property
    def alphas(self) -> np.ndarray:
        return np.array([u.alpha for u in self.units])

    @property
    def gammas(self) -> np.ndarray:
        return np.array([u.gamma for u in self.units])

    @property
    def regime(self) -> Regime:
        if self.generator is not None:
            return Regime.COPULA
        if self.shock_probs is not None:
            return Regime.SHOCKED
        return Regime.INDEPENDENT

    @property
    def survival_at_zero(self) -> float:
        """``P(min > 0)``: the product of shock probabilities, else 1."""
        return math.prod(self.shock_probs) if self.shock_probs is not None else 1.0

    @classmethod
    def from_dict(cls, data: dict) -> SystemSpec:
        units = tuple(WeibullGParams.from_dict(u) for u in data["units"])
        copula = data.get("copula")
        split = data.get("outlier_split")
        return cls(
            units,
            tuple(data["shock_probs"]) if data.get("shock_probs") is not None else None,
            ArchimedeanGenerator.from_dict(copula) if copula is not None else None,
            tuple(split) if split is not None else None,
        )

    def to_dict(self) -> dict:
        out: dict = {"units": [u.to_dict() for u in self.units]}
        if self.shock_probs is not None:
            out["shock_probs"] = list(self.shock_probs)
        if self.generator is not None:
            out["copula"] = self.generator.to_dict()
        if self.outlier_split is not None:
            out["outlier_split"] = list(self.outlier_split)
        return out


def unit_cumhazards(sys: SystemSpec, x) -> np.ndarray:
    """Array of shape ``(n, len(x))`` with ``alpha_i w(gamma_i x)**beta``."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return np.vstack([np.asarray(wg_cumhazard(u, x), dtype=float) for u in sys.units])


def min_log_survival(sys: SystemSpec, x):
    """``log P(min > x)``; finite long after the survival itself underflows."""
    H = unit_cumhazards(sys, x)
    if sys.regime is Regime.COPULA:
        out = np.asarray(sys.generator.log_psi_sum_phi_exp_neg(H, axis=0))
    else:
        out = -np.sum(H, axis=0) + math.log(sys.survival_at_zero)
    return _scalar_or_array(out, x)


def min_survival(sys: SystemSpec, x):
    return _scalar_or_array(np.exp(np.asarray(min_log_survival(sys, x))), x)


def _require_hazard_regime(sys: SystemSpec) -> None:
    if sys.regime is Regime.COPULA:
        raise UnsupportedRegimeError("hazard and density are not available in the copula regime")


def min_hazard(sys: SystemSpec, x):
    """Sum of the unit hazards; identical with and without shocks for x > 0."""
    _require_hazard_regime(sys)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    total = np.sum([np.asarray(wg_hazard(u, x_arr), dtype=float) for u in sys.units], axis=0)
    return _scalar_or_array(total, x)


def min_log_pdf(sys: SystemSpec, x):
    """Log density of the absolutely continuous part (``-inf`` where it is 0)."""
    with np.errstate(divide="ignore"):
        out = np.log(np.atleast_1d(np.asarray(min_hazard(sys, x)))) + np.atleast_1d(min_log_survival(sys, x))
    return _scalar_or_array(out, x)


def min_pdf(sys: SystemSpec, x):
    """Hazard times survival; integrates to ``prod(p)`` in the shocked regime."""
    return _scalar_or_array(np.exp(np.asarray(min_log_pdf(sys, x))), x)


@dataclass(frozen=True)
class MinDraws:
    """Draws of the minimum; ``atom`` flags draws sitting on the shock atom at 0."""

    values: np.ndarray
    atom: np.ndarray

    def __len__(self) -> int:
        return self.values.size


def min_sample(sys: SystemSpec, seed: int, count: int) -> MinDraws:
    """Monte Carlo draws of the minimum from numpy's PCG64 generator.

    Units are drawn by inverse transform.  Shocks add one Bernoulli indicator
    per unit and send the minimum to the atom at 0 when any indicator is 0.
    Copula dependence uses the frailty construction
    ``U_i = psi(E_i / S)`` with ``E_i`` unit exponentials and ``S`` the mixing
    variable of ``psi``; ``U_i`` is the survival probability of unit ``i``.
    """
    count = int(count)
    if count < 1:
        raise ParameterDomainError("count must be at least 1")
    rng = np.random.default_rng(seed)
    n = sys.n
    if sys.regime is Regime.COPULA:
        g = sys.generator
        frailty = g.frailty(rng, count)
        e = rng.exponential(1.0, (count, n))
        cumhaz = -np.asarray(g.log_psi(e / frailty[:, None]))
    else:
        cumhaz = -np.log1p(-rng.random((count, n)))
    lifetimes = np.column_stack([from_cumhazard(u, cumhaz[:, i]) for i, u in enumerate(sys.units)])
    values = lifetimes.min(axis=1)
    atom = np.zeros(count, dtype=bool)
    if sys.regime is Regime.SHOCKED:
        hit = rng.random((count, n)) < np.asarray(sys.shock_probs)
        atom = ~hit.all(axis=1)
        values = np.where(atom, 0.0, values)
    return MinDraws(values, atom)


def empirical_survival(draws: MinDraws, x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    v = np.sort(draws.values)
    return 1.0 - np.searchsorted(v, x, side="right") / v.size
