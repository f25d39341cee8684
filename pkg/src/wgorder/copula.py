"""Archimedean generators and the grid checks used to certify generator pairs.

A generator ``psi`` maps [0, inf) onto (0, 1] with ``psi(0) = 1``; ``phi`` is its
inverse.  The checks here are falsifiers: a ``True`` result means no violation
was found on the grid at the stated tolerance, not a proof.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .baseline import _scalar_or_array
from .errors import GeneratorError, UnsupportedOrderError
from .numerics import CheckResult, divided_differences, evaluate_on, require_increasing, scaled_differences


class GeneratorFamily(str, enum.Enum):
    INDEPENDENCE = "independence"
    CLAYTON = "clayton"
    GUMBEL = "gumbel"


@dataclass(frozen=True)
class ArchimedeanGenerator:
    """``independence``: ``exp(-t)``; ``clayton``: ``(1 + theta t)**(-1/theta)``,
    theta > 0; ``gumbel``: ``exp(-t**(1/theta))``, theta >= 1."""

    family: GeneratorFamily
    theta: float | None = None
    dimension: int = 2

    def __post_init__(self):
        try:
            fam = GeneratorFamily(self.family)
        except ValueError:
            raise GeneratorError(f"unknown generator family {self.family!r}") from None
        object.__setattr__(self, "family", fam)
        if fam is GeneratorFamily.INDEPENDENCE:
            object.__setattr__(self, "theta", None)
        else:
            if self.theta is None:
                raise GeneratorError(f"{fam.value} generator needs theta")
            theta = float(self.theta)
            lo_ok = theta > 0 if fam is GeneratorFamily.CLAYTON else theta >= 1
            if not (math.isfinite(theta) and lo_ok):
                raise GeneratorError(f"invalid theta {self.theta!r} for {fam.value}")
            object.__setattr__(self, "theta", theta)
        if int(self.dimension) < 2:
            raise GeneratorError("copula dimension must be at least 2")

    @classmethod
    def independence(cls) -> ArchimedeanGenerator:
        return cls(GeneratorFamily.INDEPENDENCE)

    @classmethod
    def clayton(cls, theta: float) -> ArchimedeanGenerator:
        return cls(GeneratorFamily.CLAYTON, theta)

    @classmethod
    def gumbel(cls, theta: float) -> ArchimedeanGenerator:
        return cls(GeneratorFamily.GUMBEL, theta)

    @classmethod
    def from_dict(cls, data: dict) -> ArchimedeanGenerator:
        return cls(data["family"], data.get("theta"))

    def to_dict(self) -> dict:
        out = {"family": self.family.value}
        if self.theta is not None:
            out["theta"] = self.theta
        return out

    def __str__(self) -> str:
        if self.theta is None:
            return self.family.value
        return f"{self.family.value}({self.theta:g})"

    # -- evaluation --------------------------------------------------------------

    def log_psi(self, t):
        t = np.asarray(t, dtype=float)
        if np.any(~(t >= 0)):
            raise GeneratorError("psi is defined for t >= 0")
        if self.family is GeneratorFamily.INDEPENDENCE:
            out = -t
        elif self.family is GeneratorFamily.CLAYTON:
            out = -np.log1p(self.theta * t) / self.theta
        else:
            out = -np.power(t, 1.0 / self.theta)
        return _scalar_or_array(out, t)

    def psi(self, t):
        return _scalar_or_array(np.exp(np.asarray(self.log_psi(t))), t)

    def phi(self, u):
        u = np.asarray(u, dtype=float)
        if np.any(~((u > 0) & (u <= 1))):
            raise GeneratorError("phi is defined on (0, 1]; it diverges at 0")
        return _scalar_or_array(self.phi_exp_neg(-np.log(u)), u)

    def phi_exp_neg(self, s):
        """``phi(exp(-s))`` for ``s >= 0`` without forming ``exp(-s)``."""
        s = np.asarray(s, dtype=float)
        with np.errstate(over="ignore"):
            if self.family is GeneratorFamily.INDEPENDENCE:
                out = s.copy()
            elif self.family is GeneratorFamily.CLAYTON:
                out = np.expm1(self.theta * s) / self.theta
            else:
                out = np.power(s, self.theta)
        return _scalar_or_array(out, s)

    def log_psi_sum_phi_exp_neg(self, s, axis: int = 0) -> np.ndarray:
        """``log psi(sum_i phi(exp(-s_i)))`` along ``axis``, stable for large ``s``.

        Clayton uses ``log(1 + sum expm1(theta s_i))`` in log-sum-exp form and
        Gumbel rescales the power sum by its largest term, so neither overflows
        where the joint survival is tiny but still representable on the log scale.
        """
        s = np.asarray(s, dtype=float)
        if self.family is GeneratorFamily.INDEPENDENCE:
            return -np.sum(s, axis=axis)
        if self.family is GeneratorFamily.GUMBEL:
            top = np.max(s, axis=axis, keepdims=True)
            safe = np.where(top > 0, top, 1.0)
            scaled = np.sum((s / safe) ** self.theta, axis=axis) ** (1.0 / self.theta)
            return -np.squeeze(safe, axis=axis) * scaled
        a = self.theta * s
        top = np.max(a, axis=axis)
        with np.errstate(over="ignore"):
            direct = np.log1p(np.sum(np.expm1(a), axis=axis))
        n = s.shape[axis]
        shifted = np.sum(np.exp(a - np.expand_dims(top, axis)), axis=axis) - (n - 1) * np.exp(-top)
        stable = top + np.log(shifted)
        return -np.where(top < 30.0, direct, stable) / self.theta

    def frailty(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Latent mixing variable whose Laplace transform is ``psi``."""
        if self.family is GeneratorFamily.INDEPENDENCE:
            return np.ones(size)
        if self.family is GeneratorFamily.CLAYTON:
            return rng.gamma(1.0 / self.theta, self.theta, size)
        raise GeneratorError(f"frailty sampling is not available for the {self} generator")


def psi(g: ArchimedeanGenerator, t):
    return g.psi(t)


def phi(g: ArchimedeanGenerator, u):
    return g.phi(u)


def compose_phi_psi(outer: ArchimedeanGenerator, inner: ArchimedeanGenerator) -> Callable:
    """``t -> phi_outer(psi_inner(t))``, evaluated in log space."""

    def f(t):
        return outer.phi_exp_neg(-np.asarray(inner.log_psi(t)))

    f.__name__ = f"phi[{outer}]∘psi[{inner}]"
    return f


# -- structural checks --------------------------------------------------------

DEFAULT_GRID_POINTS = 60
DEFAULT_GRID_RANGE = (1e-4, 50.0)
DEFAULT_PAIR_COUNT = 400


def default_check_grid() -> np.ndarray:
    return np.geomspace(*DEFAULT_GRID_RANGE, DEFAULT_GRID_POINTS)


def default_pair_grid() -> np.ndarray:
    """400 pairs drawn without replacement (fixed seed) from grid x grid."""
    g = default_check_grid()
    xs, ys = np.meshgrid(g, g, indexing="ij")
    pairs = np.column_stack([xs.ravel(), ys.ravel()])
    idx = np.random.default_rng(0).choice(len(pairs), DEFAULT_PAIR_COUNT, replace=False)
    return pairs[np.sort(idx)]


def super_additive_check(f: Callable, pairs=None, tol: float = 1e-9) -> CheckResult:
    """Look for ``(x, y)`` with ``f(x + y) < f(x) + f(y) - tol``."""
    pairs = default_pair_grid() if pairs is None else np.asarray(pairs, dtype=float).reshape(-1, 2)
    x, y = pairs[:, 0], pairs[:, 1]
    lhs = evaluate_on(f, x + y)
    rhs = evaluate_on(f, x) + evaluate_on(f, y)
    gap = lhs - rhs
    if np.all(gap >= -tol):
        return CheckResult(True, detail=f"{len(pairs)} pairs, min gap {gap.min():.3g}")
    i = int(np.argmin(gap))
    return CheckResult(
        False,
        witness=(float(x[i]), float(y[i])),
        detail=f"f(x+y)={lhs[i]:.6g} < f(x)+f(y)={rhs[i]:.6g}",
    )


def _log_psi_values(g, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if isinstance(g, ArchimedeanGenerator):
        vals = np.asarray(g.log_psi(t))
    else:
        with np.errstate(divide="ignore"):
            vals = np.log(np.asarray([float(g(ti)) for ti in t]))
    keep = np.isfinite(vals)  # drops the underflow region
    return t[keep], vals[keep]


def log_convexity_check(g, grid=None, tol: float = 1e-9) -> CheckResult:
    """Second divided differences of ``t -> log psi(t)`` must be ``>= -tol``.

    ``g`` is a generator or any callable standing in for ``psi``.
    """
    t = require_increasing(default_check_grid() if grid is None else grid, 3)
    t, lp = _log_psi_values(g, t)
    if t.size < 3:
        raise UnsupportedOrderError("fewer than 3 grid points outside the underflow region")
    d2 = divided_differences(t, lp, 2)
    if np.all(d2 >= -tol):
        return CheckResult(True, detail=f"min second difference {d2.min():.3g}")
    i = int(np.argmin(d2))
    return CheckResult(False, witness=(float(t[i]), float(t[i + 2])), detail=f"second difference {d2[i]:.3g}")


def d_monotone_check(g, d: int, grid=None, tol: float = 1e-7) -> CheckResult:
    """Grid check that ``psi`` is d-monotone.

    Signed differences ``(-1)^k D^k psi`` must be ``>= -tol`` for ``k = 0..d-2``;
    the ``(d-2)``-th one must further be nonincreasing and convex, which are the
    sign conditions for ``k = d-1`` and ``k = d``.  Differences are divided
    differences rescaled to the size of plain differences.
    """
    d = int(d)
    if d < 2:
        raise UnsupportedOrderError("d-monotonicity needs d >= 2")
    if d > 6:
        raise UnsupportedOrderError(f"d={d} exceeds the finite-difference limit of 6")
    t = require_increasing(default_check_grid() if grid is None else grid, d + 2)
    fn = g.psi if isinstance(g, ArchimedeanGenerator) else g
    vals = evaluate_on(fn, t)
    for k in range(0, d + 1):
        signed = (-1) ** k * (vals if k == 0 else scaled_differences(t, vals, k))
        if np.any(signed < -tol):
            i = int(np.argmin(signed))
            what = "sign" if k <= d - 2 else ("nonincreasing" if k == d - 1 else "convexity")
            return CheckResult(
                False,
                witness=(k, float(t[i]), float(t[min(i + k, t.size - 1)])),
                detail=f"order {k} ({what}) violated: {signed[i]:.3g}",
            )
    return CheckResult(True, detail=f"alternating signs hold through order {d}")
