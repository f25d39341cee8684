"""Randomised verification of the ordering theorems for series-system minima.

Each theorem pairs a list of hypotheses on two systems ``a`` (parameters
alpha, gamma) and ``b`` (lambda, delta) with a concluded order ``a <= b``.
:func:`certify` checks the hypotheses numerically before running the
concluded order check; :func:`verify_theorem` draws random configurations
satisfying the hypotheses and certifies each one.

Hypotheses per theorem (D+/E+ are the decreasing/increasing positive cones):

=====  =============================================================  ======
T3.1   shared gamma, alpha majorizes lambda, common cone, beta >= 1,    hr
       convex odds
T3.2   shared alpha, gamma majorizes delta, common cone, beta >= 2,     hr
       convex odds with increasing w''
T3.3   T3.1 plus a common two-block (multiple-outlier) structure,       lr
       x w'/w and x w''/w' decreasing
T3.4   T3.1 under random shocks with prod p <= prod p*                 hr
T3.5   T3.3 under random shocks with prod p <= prod p*                 lr
T3.6   shared gamma, alpha majorizes lambda, common cone, Archimedean   st
       copulas with phi_b o psi_a super-additive and psi_b log-convex
T3.7   shared alpha, gamma majorizes delta, common cone, beta >= 1,     st
       convex odds, copula conditions of T3.6
=====  =============================================================  ======
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .baseline import U_MAX, BaselineModel, OddsFunction
from .copula import ArchimedeanGenerator, compose_phi_psi, log_convexity_check, super_additive_check
from .errors import GenerationExhaustedError, SaturationError, UnsupportedRegimeError, WGOrderError
from .grid import Grid
from .majorization import Cone, arrange, in_cone, majorizes, r_convexity_check, random_majorization_pair
from .orderlab import CHECKS, OrderVerdict, Relation, Status, Trend, monotonicity_report
from .systems import Regime, SystemSpec

MAX_ATTEMPTS = 200


class Theorem(str, enum.Enum):
    T3_1 = "T3.1"
    T3_2 = "T3.2"
    T3_3 = "T3.3"
    T3_4 = "T3.4"
    T3_5 = "T3.5"
    T3_6 = "T3.6"
    T3_7 = "T3.7"

    @classmethod
    def parse(cls, text: str | Theorem) -> Theorem:
        if isinstance(text, Theorem):
            return text
        return cls(str(text).strip().upper())

    @property
    def conclusion(self) -> Relation:
        return _CONCLUSION[self]

    @property
    def compares_gamma(self) -> bool:
        """True when the majorized vector is the baseline scale (gamma vs delta)."""
        return self in (Theorem.T3_2, Theorem.T3_7)

    @property
    def outlier(self) -> bool:
        return self in (Theorem.T3_3, Theorem.T3_5)

    @property
    def shocked(self) -> bool:
        return self in (Theorem.T3_4, Theorem.T3_5)

    @property
    def copula(self) -> bool:
        return self in (Theorem.T3_6, Theorem.T3_7)


_CONCLUSION = {
    Theorem.T3_1: Relation.HR,
    Theorem.T3_2: Relation.HR,
    Theorem.T3_3: Relation.LR,
    Theorem.T3_4: Relation.HR,
    Theorem.T3_5: Relation.LR,
    Theorem.T3_6: Relation.ST,
    Theorem.T3_7: Relation.ST,
}

_MIN_BETA = {
    Theorem.T3_1: 1.0,
    Theorem.T3_2: 2.0,
    Theorem.T3_3: 1.0,
    Theorem.T3_4: 1.0,
    Theorem.T3_5: 1.0,
    Theorem.T3_7: 1.0,
}


# -- hypothesis checks ----------------------------------------------------------


@dataclass(frozen=True)
class Hypothesis:
    name: str
    ok: bool
    detail: str = ""


def _two_block_splits(sys: SystemSpec) -> set[int]:
    """Every ``n1`` for which units ``1..n1`` and ``n1+1..n`` are each identical."""
    if sys.outlier_split is not None:
        return {sys.outlier_split[0]}
    u = sys.units
    return {n1 for n1 in range(1, sys.n) if len(set(u[:n1])) == 1 and len(set(u[n1:])) == 1}


def _odds_points(grid: Grid, *systems: SystemSpec) -> np.ndarray:
    scales = np.unique(np.concatenate([s.gammas for s in systems]))
    return np.unique(np.concatenate([g * grid.x for g in scales]))


def _odds_shape_hypotheses(theorem: Theorem, baseline: BaselineModel, pts: np.ndarray) -> list[Hypothesis]:
    w = OddsFunction(baseline)
    out = []
    res = r_convexity_check(w, 2, pts)
    out.append(Hypothesis("odds convex", res.ok, res.detail))
    if theorem is Theorem.T3_2:
        res = r_convexity_check(w, 3, pts)
        out.append(Hypothesis("odds w'' increasing", res.ok, res.detail))
    if theorem.outlier:
        for label, fn in (
            ("x w'/w decreasing", lambda z: z * w.derivative(z, 1) / w(z)),
            ("x w''/w' decreasing", lambda z: z * w.derivative(z, 2) / w.derivative(z, 1)),
        ):
            rep = monotonicity_report(fn, pts)
            out.append(Hypothesis(label, rep.trend in (Trend.DECREASING, Trend.FLAT), rep.trend.value))
    return out


def theorem_hypotheses(theorem: Theorem | str, a: SystemSpec, b: SystemSpec, grid: Grid | None = None) -> list[Hypothesis]:
    """Evaluate every hypothesis of ``theorem`` for the pair ``(a, b)``."""
    theorem = Theorem.parse(theorem)
    grid = grid or Grid.uniform()
    hyps: list[Hypothesis] = []

    def add(name, ok, detail=""):
        hyps.append(Hypothesis(name, bool(ok), detail))

    add("equal sizes", a.n == b.n, f"{a.n} vs {b.n}")
    add("common beta", a.beta == b.beta, f"{a.beta} vs {b.beta}")
    add("common baseline", a.baseline == b.baseline, f"{a.baseline} vs {b.baseline}")
    if not all(h.ok for h in hyps):
        return hyps

    if theorem.copula:
        add("copula regime", a.regime is Regime.COPULA and b.regime is Regime.COPULA)
    elif theorem.shocked:
        add("no copula", a.regime is not Regime.COPULA and b.regime is not Regime.COPULA)
        add(
            "prod p <= prod p*",
            a.survival_at_zero <= b.survival_at_zero,
            f"{a.survival_at_zero:.6g} vs {b.survival_at_zero:.6g}",
        )
    else:
        add("independent regime", a.regime is Regime.INDEPENDENT and b.regime is Regime.INDEPENDENT)

    if theorem.compares_gamma:
        x_vec, y_vec = a.gammas, b.gammas
        add("shared alpha", np.array_equal(a.alphas, b.alphas))
        vectors = (a.alphas, a.gammas, b.gammas)
    else:
        x_vec, y_vec = a.alphas, b.alphas
        add("shared gamma", np.array_equal(a.gammas, b.gammas))
        vectors = (a.alphas, b.alphas, a.gammas)
    label = "gamma majorizes delta" if theorem.compares_gamma else "alpha majorizes lambda"
    add(label, majorizes(x_vec, y_vec), f"{x_vec.tolist()} vs {y_vec.tolist()}")
    cone_ok = any(all(in_cone(v, c) for v in vectors) for c in (Cone.DECREASING, Cone.INCREASING))
    add("common ordered cone", cone_ok)

    if theorem in _MIN_BETA:
        add(f"beta >= {_MIN_BETA[theorem]:g}", a.beta >= _MIN_BETA[theorem], f"beta={a.beta}")

    if theorem.outlier:
        common = _two_block_splits(a) & _two_block_splits(b)
        add("multiple-outlier structure", bool(common), f"splits {sorted(common)}")

    if theorem is not Theorem.T3_6:
        try:
            hyps.extend(_odds_shape_hypotheses(theorem, a.baseline, _odds_points(grid, a, b)))
        except SaturationError as exc:
            add("odds evaluable on grid", False, str(exc))

    if theorem.copula and a.regime is Regime.COPULA and b.regime is Regime.COPULA:
        res = super_additive_check(compose_phi_psi(b.generator, a.generator))
        add("phi_b o psi_a super-additive", res.ok, res.detail)
        res = log_convexity_check(b.generator)
        add("psi_b log-convex", res.ok, res.detail)
    return hyps


class CertStatus(str, enum.Enum):
    CERTIFIED = "certified"
    VIOLATED = "theorem-violated"
    INCONCLUSIVE = "inconclusive"
    HYPOTHESIS_NOT_MET = "hypothesis-not-met"


@dataclass(frozen=True)
class Certification:
    theorem: Theorem
    status: CertStatus
    hypotheses: tuple[Hypothesis, ...]
    verdict: OrderVerdict | None = None

    @property
    def unmet(self) -> list[Hypothesis]:
        return [h for h in self.hypotheses if not h.ok]


def certify(theorem: Theorem | str, a: SystemSpec, b: SystemSpec, grid: Grid | None = None) -> Certification:
    """Run the theorem's concluded check only if its hypotheses hold for ``(a, b)``."""
    theorem = Theorem.parse(theorem)
    grid = grid or Grid.uniform()
    hyps = tuple(theorem_hypotheses(theorem, a, b, grid))
    if not all(h.ok for h in hyps):
        return Certification(theorem, CertStatus.HYPOTHESIS_NOT_MET, hyps)
    verdict = CHECKS[theorem.conclusion](a, b, grid)
    status = {
        Status.HOLDS: CertStatus.CERTIFIED,
        Status.FAILS: CertStatus.VIOLATED,
        Status.INCONCLUSIVE: CertStatus.INCONCLUSIVE,
    }[verdict.status]
    return Certification(theorem, status, hyps, verdict)


# -- random configurations ---------------------------------------------------------


def _convex_baseline(rng: np.random.Generator, reach: float) -> BaselineModel:
    """Exponential or Weibull (shape >= 1) kept clear of odds saturation up to ``reach``."""
    if rng.random() < 0.4:
        return BaselineModel.exponential(rng.uniform(0.5, min(2.0, 0.8 * U_MAX / reach)))
    shape = rng.uniform(1.0, 3.0)
    cap = min(1.0, 0.8 * U_MAX / reach**shape)
    return BaselineModel.weibull(float(np.exp(rng.uniform(np.log(cap / 50), np.log(cap)))), shape)


def _outlier_baseline(rng: np.random.Generator) -> BaselineModel:
    """Burr XII with ``c > 1`` and ``1/c <= k < 1``: convex odds with decreasing
    ``x w'/w`` and ``x w''/w'``."""
    c = rng.uniform(2.0, 5.0)
    return BaselineModel.burr(c, rng.uniform(1.0 / c, 1.0))


def _any_baseline(rng: np.random.Generator, reach: float) -> BaselineModel:
    kind = rng.integers(4)
    if kind < 2:
        return _convex_baseline(rng, reach)
    if kind == 2:
        return BaselineModel.burr(rng.uniform(0.5, 5.0), rng.uniform(0.2, 2.0))
    return BaselineModel.lomax(rng.uniform(0.5, 3.0))


def _generator_pair(rng: np.random.Generator) -> tuple[ArchimedeanGenerator, ArchimedeanGenerator]:
    kind = rng.integers(6)
    indep = ArchimedeanGenerator.independence()
    if kind == 0:
        return indep, indep
    if kind == 1:
        return indep, ArchimedeanGenerator.clayton(rng.uniform(0.2, 5.0))
    if kind == 2:
        t1, t2 = np.sort(rng.uniform(0.2, 5.0, 2))
        return ArchimedeanGenerator.clayton(t1), ArchimedeanGenerator.clayton(t2)
    if kind == 3:
        t1, t2 = np.sort(rng.uniform(1.0, 4.0, 2))
        return ArchimedeanGenerator.gumbel(t1), ArchimedeanGenerator.gumbel(t2)
    if kind == 4:
        return indep, ArchimedeanGenerator.gumbel(rng.uniform(1.0, 4.0))
    g = ArchimedeanGenerator.clayton(rng.uniform(0.2, 5.0))
    return g, g


def _outlier_vectors(rng, n: int, cone: Cone) -> tuple[list[float], list[float], list[float], tuple[int, int]]:
    n1 = int(rng.integers(1, n))
    n2 = n - n1
    hi, lo = np.sort(rng.uniform(0.2, 3.0, 2))[::-1]
    total = n1 * hi + n2 * lo
    mean = total / n
    lam_hi = hi + rng.uniform(0.0, 1.0) * (mean - hi)
    lam_lo = (total - n1 * lam_hi) / n2
    g_hi, g_lo = np.sort(rng.uniform(0.5, 2.5, 2))[::-1]
    if cone is Cone.INCREASING:
        hi, lo, lam_hi, lam_lo, g_hi, g_lo = lo, hi, lam_lo, lam_hi, g_lo, g_hi
    alpha = [hi] * n1 + [lo] * n2
    lam = [lam_hi] * n1 + [lam_lo] * n2
    gamma = [g_hi] * n1 + [g_lo] * n2
    return alpha, lam, gamma, (n1, n2)


def random_configuration(
    theorem: Theorem | str,
    rng: np.random.Generator,
    grid: Grid,
    generators: tuple[ArchimedeanGenerator, ArchimedeanGenerator] | None = None,
) -> tuple[SystemSpec, SystemSpec]:
    """One draw of ``(a, b)`` aimed at the theorem's hypotheses (not yet checked)."""
    theorem = Theorem.parse(theorem)
    n = int(rng.integers(2, 6))
    cone = Cone.DECREASING if rng.random() < 0.5 else Cone.INCREASING
    beta_lo = _MIN_BETA.get(theorem, 0.5)
    beta = float(rng.uniform(beta_lo, 6.0))
    reach = 2.5 * float(grid.x[-1])
    split = None

    if theorem.outlier:
        alpha, lam, gamma, split = _outlier_vectors(rng, n, cone)
        delta = gamma
        baseline = _outlier_baseline(rng)
    elif theorem.compares_gamma:
        gamma, delta = random_majorization_pair(rng, rng.uniform(0.5, 2.5, n), int(rng.integers(1, 7)), cone)
        alpha = lam = arrange(rng.uniform(0.2, 3.0, n), cone)
        baseline = _convex_baseline(rng, reach)
    else:
        alpha, lam = random_majorization_pair(rng, rng.uniform(0.2, 3.0, n), int(rng.integers(1, 7)), cone)
        gamma = delta = arrange(rng.uniform(0.5, 2.5, n), cone)
        baseline = _any_baseline(rng, reach) if theorem is Theorem.T3_6 else _convex_baseline(rng, reach)

    kw_a: dict = {"outlier_split": split}
    kw_b: dict = {"outlier_split": split}
    if theorem.shocked:
        p, q = rng.uniform(0.5, 1.0, n), rng.uniform(0.5, 1.0, n)
        if np.prod(p) > np.prod(q):
            p, q = q, p
        kw_a["shock_probs"], kw_b["shock_probs"] = p.tolist(), q.tolist()
    if theorem.copula:
        g1, g2 = generators if generators is not None else _generator_pair(rng)
        kw_a["generator"], kw_b["generator"] = g1, g2
    a = SystemSpec.from_vectors(list(alpha), list(gamma), beta, baseline, **kw_a)
    b = SystemSpec.from_vectors(list(lam), list(delta), beta, baseline, **kw_b)
    return a, b


# -- verification sweep ----------------------------------------------------------------


@dataclass
class TrialRecord:
    index: int
    attempts: int
    a: SystemSpec
    b: SystemSpec
    verdicts: dict[Relation, OrderVerdict]
    status: CertStatus

    @property
    def passed(self) -> bool:
        return self.status is CertStatus.CERTIFIED

    def to_dict(self) -> dict:
        return {
            "trial": self.index,
            "attempts": self.attempts,
            "status": self.status.value,
            "a": self.a.to_dict(),
            "b": self.b.to_dict(),
            "verdicts": {r.value: v.to_dict() for r, v in self.verdicts.items()},
        }


@dataclass
class TheoremReport:
    theorem: Theorem
    seed: int
    trials: int
    grid: Grid
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def passes(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def failures(self) -> list[TrialRecord]:
        return [r for r in self.records if r.status is CertStatus.VIOLATED]

    @property
    def inconclusive(self) -> list[TrialRecord]:
        return [r for r in self.records if r.status is CertStatus.INCONCLUSIVE]

    @property
    def ok(self) -> bool:
        return self.passes == self.trials

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem.value,
            "conclusion": self.theorem.conclusion.value,
            "seed": self.seed,
            "trials": self.trials,
            "grid": self.grid.to_dict(),
            "passes": self.passes,
            "failures": len(self.failures),
            "inconclusive": len(self.inconclusive),
            "hierarchy_violations": hierarchy_violations(self.records),
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [
            f"{self.theorem.value} ({self.theorem.conclusion.value} order), seed {self.seed}",
            f"  trials: {self.trials}  passes: {self.passes}  failures: {len(self.failures)}"
            f"  inconclusive: {len(self.inconclusive)}",
        ]
        for rec in self.failures + self.inconclusive:
            v = rec.verdicts[self.theorem.conclusion]
            lines.append(f"  trial {rec.index}: {rec.status.value} witness={v.witness} {v.detail}")
            lines.append(f"    a = {json.dumps(rec.a.to_dict(), sort_keys=True)}")
            lines.append(f"    b = {json.dumps(rec.b.to_dict(), sort_keys=True)}")
        return "\n".join(lines) + "\n"


def hierarchy_violations(records: list[TrialRecord]) -> list[int]:
    """Trials where lr holds without hr, or hr holds without st."""
    bad = []
    for rec in records:
        v = rec.verdicts
        lr, hr, st = (v.get(r) for r in (Relation.LR, Relation.HR, Relation.ST))
        if (lr is not None and lr.holds and not (hr is not None and hr.holds)) or (
            hr is not None and hr.holds and not (st is not None and st.holds)
        ):
            bad.append(rec.index)
    return bad


def all_verdicts(a: SystemSpec, b: SystemSpec, grid: Grid) -> dict[Relation, OrderVerdict]:
    out = {}
    for rel, fn in CHECKS.items():
        try:
            out[rel] = fn(a, b, grid)
        except UnsupportedRegimeError:
            continue
    return out


def verify_theorem(
    theorem: Theorem | str,
    seed: int,
    trials: int,
    *,
    grid: Grid | None = None,
    generators: tuple[ArchimedeanGenerator, ArchimedeanGenerator] | None = None,
    max_attempts: int = MAX_ATTEMPTS,
) -> TheoremReport:
    """Certify ``trials`` random configurations meeting the theorem's hypotheses.

    Trial ``i`` draws from ``numpy.random.default_rng([seed, i])``, so reports
    are reproducible and trials independent.  A draw is kept only once every
    hypothesis has been confirmed numerically.
    """
    theorem = Theorem.parse(theorem)
    if int(trials) < 1:
        raise ValueError("trials must be at least 1")
    grid = grid or Grid.uniform()
    report = TheoremReport(theorem, int(seed), int(trials), grid)
    for i in range(int(trials)):
        rng = np.random.default_rng([int(seed), i])
        for attempt in range(1, max_attempts + 1):
            try:
                a, b = random_configuration(theorem, rng, grid, generators)
                hyps = theorem_hypotheses(theorem, a, b, grid)
            except (SaturationError, WGOrderError):
                continue
            if all(h.ok for h in hyps):
                break
        else:
            raise GenerationExhaustedError(
                f"{theorem.value} trial {i}: no configuration met the hypotheses in {max_attempts} attempts"
            )
        verdicts = all_verdicts(a, b, grid)
        status = {
            Status.HOLDS: CertStatus.CERTIFIED,
            Status.FAILS: CertStatus.VIOLATED,
            Status.INCONCLUSIVE: CertStatus.INCONCLUSIVE,
        }[verdicts[theorem.conclusion].status]
        report.records.append(TrialRecord(i, attempt, a, b, verdicts, status))
    return report

