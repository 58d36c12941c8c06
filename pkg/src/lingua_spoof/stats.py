"""Regression, collinearity screening, and test statistics for feature analysis.

Implements the analysis battery end to end: column standardization,
variance inflation factors, logistic regression with Wald inference,
Welch's unequal-variance t-test with one-sided p-values, and per-class
precision/recall/F1 reports.  Everything is deterministic and pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

SPOOF = "spoof"
BONAFIDE = "bonafide"
_CLASSES = (BONAFIDE, SPOOF)

VIF_CUTOFF = 10.0


class LengthMismatchError(ValueError):
    """Paired sequences have different lengths."""


class ConstantColumnError(ValueError):
    """A column has zero variance and cannot be standardized."""


class DegenerateSampleError(ValueError):
    """A sample is too small or has zero variance."""


@dataclass(eq=False)
class DesignMatrix:
    """n x p data with named columns and an optional binary outcome.

    y follows the convention 1 = classified bona fide under attack.
    """

    rows: np.ndarray
    column_names: tuple[str, ...]
    y: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.rows = np.asarray(self.rows, dtype=np.float64)
        if self.rows.ndim != 2:
            raise ValueError("rows must be 2-D")
        if len(self.column_names) != self.rows.shape[1]:
            raise ValueError("column_names length must match column count")
        if not np.all(np.isfinite(self.rows)):
            raise ValueError("rows contain non-finite values")
        if self.y is not None:
            self.y = np.asarray(self.y, dtype=np.float64)
            if self.y.shape != (self.rows.shape[0],):
                raise LengthMismatchError("y length must match row count")
            if not np.all((self.y == 0.0) | (self.y == 1.0)):
                raise ValueError("y must be binary 0/1")

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def p(self) -> int:
        return self.rows.shape[1]


def standardize(m: DesignMatrix) -> tuple[DesignMatrix, np.ndarray, np.ndarray]:
    """Zero-mean unit-std columns (population std). Returns (matrix, means, stds)."""
    means = m.rows.mean(axis=0)
    stds = m.rows.std(axis=0)  # ddof=0
    for name, s in zip(m.column_names, stds):
        if s == 0.0:
            raise ConstantColumnError(f"column {name!r} is constant")
    scaled = (m.rows - means) / stds
    return DesignMatrix(scaled, m.column_names, m.y), means, stds


def vif(m: DesignMatrix) -> list[float]:
    """Variance inflation factor per column; +inf marks exact collinearity."""
    n, p = m.n, m.p
    if n <= p:
        raise ValueError(f"need n > p for VIF (n={n}, p={p})")
    if p == 1:
        return [1.0]
    out: list[float] = []
    for j in range(p):
        target = m.rows[:, j]
        others = np.delete(m.rows, j, axis=1)
        design = np.column_stack([np.ones(n), others])
        coef, *_ = np.linalg.lstsq(design, target, rcond=None)
        resid = target - design @ coef
        ss_res = float(resid @ resid)
        centered = target - target.mean()
        ss_tot = float(centered @ centered)
        if ss_tot == 0.0:
            out.append(math.inf)
            continue
        r2 = 1.0 - ss_res / ss_tot
        denom = 1.0 - r2
        out.append(math.inf if denom <= 1e-12 else 1.0 / denom)
    return out


def drop_high_vif(
    m: DesignMatrix, cutoff: float = VIF_CUTOFF
) -> tuple[DesignMatrix, list[str]]:
    """Iteratively remove the max-VIF column while the max exceeds cutoff."""
    current = m
    dropped: list[str] = []
    while current.p > 1:
        factors = vif(current)
        worst = max(range(len(factors)), key=lambda i: factors[i])
        if factors[worst] <= cutoff:
            break
        dropped.append(current.column_names[worst])
        current = DesignMatrix(
            np.delete(current.rows, worst, axis=1),
            tuple(nm for i, nm in enumerate(current.column_names) if i != worst),
            current.y,
        )
    return current, dropped


@dataclass(frozen=True)
class RegressionSummary:
    """Wald table for a fitted logistic model (intercept row first)."""

    names: tuple[str, ...]
    coef: tuple[float, ...]
    std_err: tuple[float, ...]
    z: tuple[float, ...]
    p_two_sided: tuple[float, ...]
    converged: bool
    iterations: int
    quasi_separation: bool
    dropped_for_vif: tuple[str, ...] = ()

    def coefficient(self, name: str) -> float:
        return self.coef[self.names.index(name)]


def _sigmoid(z: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(z, -60.0, 60.0)))


def logistic_fit(
    m: DesignMatrix, max_iter: int = 100, tol: float = 1e-8
) -> RegressionSummary:
    """Newton (IRLS) maximum likelihood with an intercept.

    Convergence is declared when the score vector's max-norm drops below
    tol.  A stalled fit is returned flagged rather than raised; coefficient
    blow-up past |30| marks quasi-separation.
    """
    if m.y is None:
        raise ValueError("logistic_fit needs a y column")
    n, p = m.n, m.p
    if n <= p + 1:
        raise ValueError(f"need n > p for inference (n={n}, p={p})")
    x = np.column_stack([np.ones(n), m.rows])
    y = m.y
    beta = np.zeros(p + 1)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        mu = _sigmoid(x @ beta)
        grad = x.T @ (y - mu)
        if float(np.max(np.abs(grad))) < tol:
            converged = True
            break
        w = mu * (1.0 - mu)
        hess = x.T @ (x * w[:, None])
        try:
            step = np.linalg.solve(hess, grad)
        except np.linalg.LinAlgError:
            step = np.linalg.solve(hess + 1e-10 * np.eye(p + 1), grad)
        beta = beta + step

    mu = _sigmoid(x @ beta)
    w = mu * (1.0 - mu)
    hess = x.T @ (x * w[:, None])
    try:
        cov = np.linalg.inv(hess)
        se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    except np.linalg.LinAlgError:
        se = np.full(p + 1, math.inf)
    # An interior MLE keeps every fitted probability strictly inside (0, 1);
    # residuals at float zero mean the data are (quasi-)separated.
    saturated = bool(np.max(np.abs(y - mu)) < 1e-8)
    quasi = saturated or ((not converged) and bool(np.any(np.abs(beta) > 30.0)))
    zs = np.divide(beta, se, out=np.zeros_like(beta), where=se > 0)
    pvals = np.array([math.erfc(abs(zv) / math.sqrt(2.0)) for zv in zs])
    return RegressionSummary(
        names=("intercept", *m.column_names),
        coef=tuple(float(b) for b in beta),
        std_err=tuple(float(s) for s in se),
        z=tuple(float(zv) for zv in zs),
        p_two_sided=tuple(float(pv) for pv in pvals),
        converged=converged,
        iterations=iterations,
        quasi_separation=quasi,
    )


# Regularized incomplete beta via Lentz's continued fraction; the t-CDF
# reduction needs |error| well under 1e-10 across the acceptance range.
_BETA_EPS = 3e-14
_BETA_TINY = 1e-300
_BETA_MAX_ITER = 400


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _BETA_TINY:
        d = _BETA_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _BETA_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_TINY:
            d = _BETA_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETA_TINY:
            c = _BETA_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _BETA_TINY:
            d = _BETA_TINY
        c = 1.0 + aa / c
        if abs(c) < _BETA_TINY:
            c = _BETA_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _BETA_EPS:
            return h
    raise RuntimeError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(a: float, b: float, x: float) -> float:
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if a <= 0.0 or b <= 0.0:
        raise ValueError("shape parameters must be positive")
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _t_sf(t: float, df: float) -> float:
    """P(T_df > t) for Student's t."""
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    half_tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x)
    return half_tail if t > 0.0 else 1.0 - half_tail


@dataclass(frozen=True)
class TTestResult:
    delta: float
    t: float
    p_one_sided: float
    df: float


def welch_t_test(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Unequal-variance two-sample test; p is the upper-tail P(T > t)."""
    xa = np.asarray(a, dtype=np.float64)
    xb = np.asarray(b, dtype=np.float64)
    if xa.size < 2 or xb.size < 2:
        raise DegenerateSampleError("each sample needs at least 2 observations")
    va = float(xa.var(ddof=1))
    vb = float(xb.var(ddof=1))
    if va == 0.0 or vb == 0.0:
        raise DegenerateSampleError("zero-variance sample")
    na, nb = xa.size, xb.size
    sa = va / na
    sb = vb / nb
    delta = float(xa.mean() - xb.mean())
    t = delta / math.sqrt(sa + sb)
    df = (sa + sb) ** 2 / (sa * sa / (na - 1) + sb * sb / (nb - 1))
    return TTestResult(delta=delta, t=t, p_one_sided=_t_sf(t, df), df=df)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    per_class: dict[str, ClassMetrics]

    def __getitem__(self, label: str) -> ClassMetrics:
        return self.per_class[label]


def f1_score(precision: float, recall: float) -> float:
    """Harmonic mean with the 0-convention for an empty denominator."""
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def classification_report(
    y_true: Sequence[str], y_pred: Sequence[str]
) -> ClassificationReport:
    """Per-class precision/recall/F1 over the bona-fide/spoof label pair."""
    if len(y_true) != len(y_pred):
        raise LengthMismatchError(
            f"y_true has {len(y_true)} labels, y_pred has {len(y_pred)}"
        )
    for label in (*y_true, *y_pred):
        if label not in _CLASSES:
            raise ValueError(f"unknown label {label!r}")
    per_class: dict[str, ClassMetrics] = {}
    for cls in _CLASSES:
        tp = sum(1 for yt, yp in zip(y_true, y_pred) if yt == cls and yp == cls)
        fp = sum(1 for yt, yp in zip(y_true, y_pred) if yt != cls and yp == cls)
        fn = sum(1 for yt, yp in zip(y_true, y_pred) if yt == cls and yp != cls)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        per_class[cls] = ClassMetrics(
            precision=precision,
            recall=recall,
            f1=f1_score(precision, recall),
            support=tp + fn,
        )
    return ClassificationReport(per_class=per_class)


def regression_csv(summary: RegressionSummary) -> str:
    lines = ["name,coef,std_err,z,p_two_sided"]
    for i, name in enumerate(summary.names):
        lines.append(
            f"{name},{summary.coef[i]:.10g},{summary.std_err[i]:.10g},"
            f"{summary.z[i]:.10g},{summary.p_two_sided[i]:.10g}"
        )
    return "\n".join(lines) + "\n"


def regression_markdown(summary: RegressionSummary) -> str:
    """Wald table laid out with coef / std err / z / P>|z| columns."""
    lines = [
        "| feature | coef | std err | z | P>|z| |",
        "| --- | ---: | ---: | ---: | ---: |",
    ]
    for i, name in enumerate(summary.names):
        lines.append(
            f"| {name} | {summary.coef[i]:.4f} | {summary.std_err[i]:.4f} "
            f"| {summary.z[i]:.3f} | {summary.p_two_sided[i]:.3f} |"
        )
    if summary.dropped_for_vif:
        lines.append("")
        lines.append(
            "Dropped for collinearity: " + ", ".join(summary.dropped_for_vif)
        )
    return "\n".join(lines) + "\n"


def ttest_csv(rows: dict[str, TTestResult]) -> str:
    lines = ["feature,delta,t,df,p_one_sided"]
    for name, r in rows.items():
        lines.append(f"{name},{r.delta:.10g},{r.t:.10g},{r.df:.10g},{r.p_one_sided:.10g}")
    return "\n".join(lines) + "\n"


def ttest_markdown(rows: dict[str, TTestResult]) -> str:
    lines = [
        "| feature | delta | t | df | p(one-sided) |",
        "| --- | ---: | ---: | ---: | ---: |",
    ]
    for name, r in rows.items():
        lines.append(
            f"| {name} | {r.delta:.4f} | {r.t:.3f} | {r.df:.2f} | {r.p_one_sided:.4f} |"
        )
    return "\n".join(lines) + "\n"
