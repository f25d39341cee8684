"""The Weibull-G(alpha, beta, gamma) lifetime distribution.

``G(x) = 1 - exp(-alpha * w(gamma x)**beta)`` where ``w`` is the odds of a
baseline model.  The cumulative hazard ``alpha * w**beta`` is the working
quantity: survival, density and quantiles are all expressed through it so that
nothing underflows before it has to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .baseline import BaselineModel, OddsFunction, _scalar_or_array
from .errors import ParameterDomainError


@dataclass(frozen=True)
class WeibullGParams:
    alpha: float
    beta: float
    gamma: float
    baseline: BaselineModel

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0):
                raise ParameterDomainError(f"{name} must be positive, got {getattr(self, name)!r}")
            object.__setattr__(self, name, v)
        if not isinstance(self.baseline, BaselineModel):
            raise ParameterDomainError("baseline must be a BaselineModel")

    @property
    def odds(self) -> OddsFunction:
        return OddsFunction(self.baseline, self.gamma)

    @classmethod
    def from_dict(cls, data: dict) -> WeibullGParams:
        return cls(
            float(data["alpha"]),
            float(data["beta"]),
            float(data["gamma"]),
            BaselineModel.from_dict(data["baseline"]),
        )

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "baseline": self.baseline.to_dict(),
        }


def wg_cumhazard(p: WeibullGParams, x):
    """``alpha * w(gamma x)**beta``; may be ``inf`` once the power overflows."""
    w = np.asarray(p.odds(x))
    with np.errstate(over="ignore"):
        return _scalar_or_array(p.alpha * np.power(w, p.beta), x)


def wg_cdf(p: WeibullGParams, x):
    return _scalar_or_array(-np.expm1(-np.asarray(wg_cumhazard(p, x))), x)


def wg_survival(p: WeibullGParams, x):
    return _scalar_or_array(np.exp(-np.asarray(wg_cumhazard(p, x))), x)


def wg_hazard(p: WeibullGParams, x):
    """``alpha gamma beta w(gamma x)**(beta-1) w'(gamma x)``.

    At a zero of ``w`` with ``beta < 1`` the rate is ``+inf`` by convention,
    never nan.
    """
    ofn = p.odds
    w = np.asarray(ofn(x))
    dw = np.asarray(ofn.derivative(x, 1))  # already carries the factor gamma
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        rate = p.alpha * p.beta * np.power(w, p.beta - 1.0) * dw
    at_zero = w == 0.0
    if p.beta < 1.0:
        rate = np.where(at_zero, np.inf, rate)
    else:
        # 0 * inf when the baseline density itself diverges at the origin
        rate = np.where(at_zero & np.isnan(rate), np.inf, rate)
    return _scalar_or_array(rate, x)


def wg_pdf(p: WeibullGParams, x):
    return _scalar_or_array(np.asarray(wg_hazard(p, x)) * np.asarray(wg_survival(p, x)), x)


def from_cumhazard(p: WeibullGParams, cumhaz) -> np.ndarray:
    """The lifetime at which the cumulative hazard reaches ``cumhaz``."""
    t = np.power(np.asarray(cumhaz, dtype=float) / p.alpha, 1.0 / p.beta)
    return p.baseline.cumhazard_inverse(np.log1p(t)) / p.gamma


def wg_quantile(p: WeibullGParams, u):
    u_arr = np.asarray(u, dtype=float)
    if np.any(~((u_arr >= 0) & (u_arr < 1))):
        raise ParameterDomainError("quantile needs probabilities in [0, 1)")
    return _scalar_or_array(from_cumhazard(p, -np.log1p(-u_arr)), u)


def wg_isf(p: WeibullGParams, s):
    """Inverse survival: the lifetime with ``P(X > x) = s`` for ``s`` in (0, 1]."""
    s_arr = np.asarray(s, dtype=float)
    if np.any(~((s_arr > 0) & (s_arr <= 1))):
        raise ParameterDomainError("inverse survival needs probabilities in (0, 1]")
    return _scalar_or_array(from_cumhazard(p, -np.log(s_arr)), s)


def wg_sample(p: WeibullGParams, seed: int, count: int) -> np.ndarray:
    """Inverse-transform draws from numpy's PCG64 generator seeded with ``seed``."""
    if int(count) < 1:
        raise ParameterDomainError("count must be at least 1")
    rng = np.random.default_rng(seed)
    return wg_quantile(p, rng.random(int(count)))
