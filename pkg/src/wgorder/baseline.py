"""Baseline lifetime models and the odds link ``w(x) = F(x) / (1 - F(x))``.

Every family is written through its cumulative hazard ``u(z) = -log(1 - F(z))``.
The odds are then ``w = expm1(u)``, which keeps full relative precision near
zero, and the derivatives of ``w`` follow from those of ``u`` by the chain rule.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError, SaturationError

SATURATION_SF = 1e-12
U_MAX = -math.log(SATURATION_SF)


class Family(str, enum.Enum):
    EXPONENTIAL = "exponential"
    WEIBULL = "weibull"
    BURR = "burr"
    LOMAX = "lomax"


_ARITY = {Family.EXPONENTIAL: 1, Family.WEIBULL: 2, Family.BURR: 2, Family.LOMAX: 1}


def _scalar_or_array(arr: np.ndarray, like):
    if np.ndim(like) == 0:
        return float(np.asarray(arr).reshape(-1)[0])
    return arr


def _power(coef: float, z: np.ndarray, p: float) -> np.ndarray:
    """``coef * z**p`` with 0 * (0**negative) taken as 0 rather than nan."""
    if coef == 0.0:
        return np.zeros_like(z)
    with np.errstate(divide="ignore"):
        return coef * np.power(z, p)


@dataclass(frozen=True)
class BaselineModel:
    """A lifetime distribution on (0, inf).

    ``params`` by family:

    * exponential: ``(rate,)`` with ``F(x) = 1 - exp(-rate x)``
    * weibull: ``(rate, shape)`` with ``F(x) = 1 - exp(-rate x**shape)``
    * burr: ``(c, k)`` (Burr XII) with ``F(x) = 1 - (1 + x**c)**(-k)``
    * lomax: ``(a,)`` with ``F(x) = 1 - (1 + x)**(-a)``
    """

    family: Family
    params: tuple[float, ...]

    def __post_init__(self):
        try:
            family = Family(self.family)
        except ValueError:
            raise ParameterDomainError(f"unknown baseline family {self.family!r}") from None
        params = tuple(float(p) for p in self.params)
        if len(params) != _ARITY[family]:
            raise ParameterDomainError(
                f"{family.value} takes {_ARITY[family]} parameter(s), got {len(params)}"
            )
        for p in params:
            if not (math.isfinite(p) and p > 0):
                raise ParameterDomainError(f"{family.value} parameters must be positive, got {params}")
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)

    @classmethod
    def exponential(cls, rate: float = 1.0) -> BaselineModel:
        return cls(Family.EXPONENTIAL, (rate,))

    @classmethod
    def weibull(cls, rate: float, shape: float) -> BaselineModel:
        return cls(Family.WEIBULL, (rate, shape))

    @classmethod
    def burr(cls, c: float, k: float) -> BaselineModel:
        return cls(Family.BURR, (c, k))

    @classmethod
    def lomax(cls, a: float) -> BaselineModel:
        return cls(Family.LOMAX, (a,))

    @classmethod
    def from_dict(cls, data: dict) -> BaselineModel:
        return cls(data["family"], tuple(data["params"]))

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": list(self.params)}

    def __str__(self) -> str:
        return f"{self.family.value}({', '.join(f'{p:g}' for p in self.params)})"

    # -- cumulative hazard and its derivatives ---------------------------------

    def cumhazard_derivs(self, z, order: int = 0) -> list[np.ndarray]:
        """``[u, u', ..., u^(order)]`` at ``z >= 0`` where ``u = -log(1 - F)``."""
        z = np.asarray(z, dtype=float)
        fam, p = self.family, self.params
        if fam is Family.EXPONENTIAL:
            (lam,) = p
            out = [lam * z, np.full_like(z, lam), np.zeros_like(z), np.zeros_like(z)]
        elif fam is Family.WEIBULL:
            rho, s = p
            out = [
                _power(rho, z, s),
                _power(rho * s, z, s - 1),
                _power(rho * s * (s - 1), z, s - 2),
                _power(rho * s * (s - 1) * (s - 2), z, s - 3),
            ]
        elif fam is Family.BURR:
            c, k = p
            zc = np.power(z, c)
            q = 1.0 + zc
            out = [k * np.log1p(zc)]
            if order >= 1:
                out.append(_power(k * c, z, c - 1) / q)
            if order >= 2:
                out.append(
                    k * c * (_power(c - 1, z, c - 2) / q - _power(c, z, 2 * c - 2) / q**2)
                )
            if order >= 3:
                out.append(
                    k
                    * c
                    * (
                        _power((c - 1) * (c - 2), z, c - 3) / q
                        - _power(3 * c * (c - 1), z, 2 * c - 3) / q**2
                        + _power(2 * c * c, z, 3 * c - 3) / q**3
                    )
                )
        else:
            (a,) = p
            one_z = 1.0 + z
            out = [a * np.log1p(z), a / one_z, -a / one_z**2, 2 * a / one_z**3]
        return out[: order + 1]

    def cumhazard_inverse(self, u) -> np.ndarray:
        """Solve ``u(z) = u`` for ``z`` in closed form."""
        u = np.asarray(u, dtype=float)
        fam, p = self.family, self.params
        if fam is Family.EXPONENTIAL:
            return u / p[0]
        if fam is Family.WEIBULL:
            return np.power(u / p[0], 1.0 / p[1])
        if fam is Family.BURR:
            return np.power(np.expm1(u / p[1]), 1.0 / p[0])
        return np.expm1(u / p[0])


def baseline_cdf(model: BaselineModel, x):
    x = np.asarray(x, dtype=float)
    _require_nonneg(x)
    (u,) = model.cumhazard_derivs(x, 0)
    return _scalar_or_array(-np.expm1(-u), x)


def baseline_sf(model: BaselineModel, x):
    x = np.asarray(x, dtype=float)
    _require_nonneg(x)
    (u,) = model.cumhazard_derivs(x, 0)
    return _scalar_or_array(np.exp(-u), x)


def baseline_pdf(model: BaselineModel, x):
    x = np.asarray(x, dtype=float)
    _require_nonneg(x)
    u, u1 = model.cumhazard_derivs(x, 1)
    return _scalar_or_array(u1 * np.exp(-u), x)


def baseline_hazard(model: BaselineModel, x):
    x = np.asarray(x, dtype=float)
    _require_nonneg(x)
    _, u1 = model.cumhazard_derivs(x, 1)
    return _scalar_or_array(u1, x)


def baseline_quantile(model: BaselineModel, prob):
    prob_arr = np.asarray(prob, dtype=float)
    if np.any(~((prob_arr >= 0) & (prob_arr < 1))):
        raise ParameterDomainError("baseline quantile needs probabilities in [0, 1)")
    return _scalar_or_array(model.cumhazard_inverse(-np.log1p(-prob_arr)), prob)


def _require_nonneg(x: np.ndarray) -> None:
    if np.any(~(x >= 0)):
        raise ParameterDomainError("lifetimes must be nonnegative")


# -- odds ---------------------------------------------------------------------


@dataclass(frozen=True)
class OddsFunction:
    """``x -> w(gamma * x)`` for a baseline model.

    Evaluation raises :class:`SaturationError` once ``F(gamma x) > 1 - 1e-12``.
    """

    model: BaselineModel
    gamma: float = 1.0

    def __post_init__(self):
        g = float(self.gamma)
        if not (math.isfinite(g) and g > 0):
            raise ParameterDomainError(f"gamma must be positive, got {self.gamma!r}")
        object.__setattr__(self, "gamma", g)

    def _derivs(self, x, order: int) -> tuple[np.ndarray, list[np.ndarray]]:
        x = np.asarray(x, dtype=float)
        _require_nonneg(x)
        z = self.gamma * x
        us = self.model.cumhazard_derivs(z, order)
        bad = us[0] > U_MAX
        if np.any(bad):
            raise SaturationError(np.ravel(x)[np.argmax(np.ravel(bad))])
        return x, us

    def __call__(self, x):
        x, (u,) = self._derivs(x, 0)
        return _scalar_or_array(np.expm1(u), x)

    def derivative(self, x, order: int = 1):
        """Analytic ``d^order/dx^order w(gamma x)`` for order 0..3."""
        if order not in (0, 1, 2, 3):
            raise ParameterDomainError(f"derivative order must be 0..3, got {order}")
        x, us = self._derivs(x, order)
        if order == 0:
            return _scalar_or_array(np.expm1(us[0]), x)
        e = np.exp(us[0])
        u1 = us[1]
        with np.errstate(invalid="ignore"):
            if order == 1:
                inner = u1
            elif order == 2:
                inner = us[2] + u1 * u1
            else:
                inner = us[3] + 3.0 * u1 * us[2] + u1**3
        return _scalar_or_array(self.gamma**order * e * inner, x)

    def numeric_derivative(self, x, order: int = 1):
        """Central finite difference of ``w(gamma x)``; forward near 0."""
        if order not in (1, 2, 3):
            raise ParameterDomainError(f"derivative order must be 1..3, got {order}")
        x = np.asarray(x, dtype=float)
        base = np.maximum(1e-6, 1e-6 * x)
        # one fixed step is only usable for order 1 in double precision
        h = base * {1: 1.0, 2: 1e2, 3: 1e3}[order]
        coeffs = {
            1: ([-0.5, 0.5], [-1, 1]),
            2: ([1.0, -2.0, 1.0], [-1, 0, 1]),
            3: ([-0.5, 1.0, -1.0, 0.5], [-2, -1, 1, 2]),
        }[order]
        forward = {
            1: ([-1.5, 2.0, -0.5], [0, 1, 2]),
            2: ([2.0, -5.0, 4.0, -1.0], [0, 1, 2, 3]),
            3: ([-2.5, 9.0, -12.0, 7.0, -1.5], [0, 1, 2, 3, 4]),
        }[order]
        reach = max(abs(o) for o in coeffs[1])
        use_forward = x < reach * h
        acc = np.zeros_like(x)
        for w_c, off in zip(*coeffs):
            pts = np.where(use_forward, x, x + off * h)
            acc = acc + np.where(use_forward, 0.0, w_c * self(pts))
        for w_c, off in zip(*forward):
            pts = np.where(use_forward, x + off * h, x)
            acc = acc + np.where(use_forward, w_c * self(pts), 0.0)
        return _scalar_or_array(acc / h**order, x)


def odds(ofn: OddsFunction, x):
    return ofn(x)


def odds_derivative(ofn: OddsFunction, x, order: int = 1, method: str = "analytic"):
    """Derivative of ``x -> w(gamma x)``; ``method`` is ``"analytic"`` or ``"numeric"``."""
    if method == "analytic":
        return ofn.derivative(x, order)
    if method == "numeric":
        return ofn.numeric_derivative(x, order)
    raise ValueError(f"unknown derivative method {method!r}")
