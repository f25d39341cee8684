"""Weibull-G distributions and stochastic orders of heterogeneous series-system minima."""

from .baseline import BaselineModel, Family, OddsFunction, odds, odds_derivative
from .copula import ArchimedeanGenerator, GeneratorFamily
from .errors import (
    ConfigError,
    DimensionError,
    EvaluationError,
    GenerationExhaustedError,
    GeneratorError,
    ParameterDomainError,
    SaturationError,
    UnsupportedOrderError,
    UnsupportedRegimeError,
    WGOrderError,
)
from .grid import Grid
from .majorization import majorizes, r_convexity_check, random_majorization_pair, schur_probe
from .orderlab import OrderVerdict, Relation, Status, check_hr, check_lr, check_st, monotonicity_report
from .systems import Regime, SystemSpec, min_hazard, min_pdf, min_sample, min_survival
from .theorems import Theorem, certify, verify_theorem
from .weibull_g import WeibullGParams, wg_cdf, wg_hazard, wg_pdf, wg_quantile, wg_sample, wg_survival

__version__ = "0.1.0"

__all__ = [
    "ArchimedeanGenerator",
    "BaselineModel",
    "ConfigError",
    "DimensionError",
    "EvaluationError",
    "Family",
    "GenerationExhaustedError",
    "GeneratorError",
    "GeneratorFamily",
    "Grid",
    "OddsFunction",
    "OrderVerdict",
    "ParameterDomainError",
    "Regime",
    "Relation",
    "SaturationError",
    "Status",
    "SystemSpec",
    "Theorem",
    "UnsupportedOrderError",
    "UnsupportedRegimeError",
    "WGOrderError",
    "WeibullGParams",
    "certify",
    "check_hr",
    "check_lr",
    "check_st",
    "majorizes",
    "min_hazard",
    "min_pdf",
    "min_sample",
    "min_survival",
    "monotonicity_report",
    "odds",
    "odds_derivative",
    "r_convexity_check",
    "random_majorization_pair",
    "schur_probe",
    "verify_theorem",
    "wg_cdf",
    "wg_hazard",
    "wg_pdf",
    "wg_quantile",
    "wg_sample",
    "wg_survival",
]
