"""t and F distributions, one-way ANOVA and the paired-sample t test.

Everything rests on :func:`reg_inc_beta`, evaluated by a Lentz continued
fraction, and a 15-term Lanczos log-gamma.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InsufficientData,
    LengthMismatch,
    NumericError,
    ZeroVarianceDifferences,
    ZeroWithinVariance,
)

_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def ln_gamma(x: float) -> float:
    """log Gamma(x) for x > 0 (Lanczos, g = 607/128)."""
    if not x > 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x}")
    if x < 0.5:
        # reflection keeps the series in its accurate range
        return math.log(math.pi / math.sin(math.pi * x)) - ln_gamma(1.0 - x)
    z = x - 1.0
    s = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        s += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * math.log(t) - t + math.log(s)


def ln_beta(a: float, b: float) -> float:
    return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)


def _beta_cf(x: float, a: float, b: float) -> float:
    tiny = 1e-300
    eps = 1e-16
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 20001):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise NumericError(f"incomplete beta continued fraction did not converge (x={x}, a={a}, b={b})")


def reg_inc_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if not (a > 0 and b > 0) or not (0.0 <= x <= 1.0):
        raise DomainError(f"reg_inc_beta domain: x in [0,1], a, b > 0; got x={x}, a={a}, b={b}")
    return _ibeta(x, 1.0 - x, a, b)


def _ibeta(x: float, y: float, a: float, b: float) -> float:
    # y = 1 - x, passed separately so callers can supply it without cancellation
    if x <= 0.0:
        return 0.0
    if y <= 0.0:
        return 1.0
    log_front = a * math.log(x) + b * math.log(y) - ln_beta(a, b)
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _beta_cf(x, a, b) / a
    return 1.0 - math.exp(log_front) * _beta_cf(y, b, a) / b


def _check_df(*dfs: float) -> None:
    for df in dfs:
        if not (df >= 1 and math.isfinite(df)):
            raise DomainError(f"degrees of freedom must be finite and >= 1, got {df}")


def t_cdf(t: float, df: float) -> float:
    """Student t cumulative distribution function."""
    _check_df(df)
    if math.isnan(t):
        raise DomainError("t is NaN")
    if t == 0:
        return 0.5
    if math.isinf(t):
        return 1.0 if t > 0 else 0.0
    tail = 0.5 * _ibeta(df / (df + t * t), t * t / (df + t * t), 0.5 * df, 0.5)
    return 1.0 - tail if t > 0 else tail


def t_two_tailed_p(t: float, df: float) -> float:
    """P(|T| >= |t|), computed from the tail directly to avoid cancellation."""
    _check_df(df)
    if math.isinf(t):
        return 0.0
    if t == 0:
        return 1.0
    return _ibeta(df / (df + t * t), t * t / (df + t * t), 0.5 * df, 0.5)


def t_quantile(p: float, df: float) -> float:
    """Inverse of :func:`t_cdf` by bisection."""
    _check_df(df)
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile probability must lie in (0, 1), got {p}")
    if p == 0.5:
        return 0.0
    lo, hi = -1.0, 1.0
    while t_cdf(lo, df) > p:
        lo *= 2.0
    while t_cdf(hi, df) < p:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if t_cdf(mid, df) < p:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-13 * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def f_cdf(f: float, df1: float, df2: float) -> float:
    """F distribution cumulative distribution function."""
    _check_df(df1, df2)
    if not f >= 0:
        raise DomainError(f"F statistic must be >= 0, got {f}")
    if math.isinf(f):
        return 1.0
    return _ibeta(df1 * f / (df1 * f + df2), df2 / (df1 * f + df2), 0.5 * df1, 0.5 * df2)


def f_sf(f: float, df1: float, df2: float) -> float:
    """Upper-tail probability P(F >= f)."""
    _check_df(df1, df2)
    if not f >= 0:
        raise DomainError(f"F statistic must be >= 0, got {f}")
    if math.isinf(f):
        return 0.0
    if f == 0:
        return 1.0
    return _ibeta(df2 / (df2 + df1 * f), df1 * f / (df2 + df1 * f), 0.5 * df2, 0.5 * df1)


@dataclass(frozen=True)
class AnovaResult:
    ss_between: float
    ss_within: float
    ss_total: float
    df_between: int
    df_within: int
    ms_between: float
    ms_within: float
    f: float
    p: float
    reject_at_05: bool
    group_sizes: tuple[int, ...] = ()
    group_means: tuple[float, ...] = ()

    @property
    def df_total(self) -> int:
        return self.df_between + self.df_within


def one_way_anova(groups: Sequence[Sequence[float]]) -> AnovaResult:
    """Classic fixed-effects one-way ANOVA across ``groups``."""
    arrays = [np.asarray(g, dtype=float).ravel() for g in groups]
    k = len(arrays)
    if k < 2:
        raise InsufficientData("one-way ANOVA needs at least two groups")
    if any(a.size == 0 for a in arrays):
        raise InsufficientData("every ANOVA group needs at least one value")
    if not all(np.all(np.isfinite(a)) for a in arrays):
        raise DomainError("non-finite value in ANOVA input")
    n_total = sum(a.size for a in arrays)
    if n_total - k < 1:
        raise InsufficientData(f"ANOVA needs N - k >= 1 (N={n_total}, k={k})")
    everything = np.concatenate(arrays)
    grand = everything.mean()
    means = [a.mean() for a in arrays]
    ss_between = float(sum(a.size * (m - grand) ** 2 for a, m in zip(arrays, means)))
    ss_within = float(sum(np.sum((a - m) ** 2) for a, m in zip(arrays, means)))
    ss_total = float(np.sum((everything - grand) ** 2))
    df_b, df_w = k - 1, n_total - k
    ms_b, ms_w = ss_between / df_b, ss_within / df_w
    if ss_within == 0.0:
        if ss_between == 0.0:
            raise ZeroWithinVariance("all values identical: F statistic is undefined")
        f, p = math.inf, 0.0
    else:
        f = ms_b / ms_w
        p = f_sf(f, df_b, df_w)
    return AnovaResult(
        ss_between=ss_between,
        ss_within=ss_within,
        ss_total=ss_total,
        df_between=df_b,
        df_within=df_w,
        ms_between=ms_b,
        ms_within=ms_w,
        f=f,
        p=p,
        reject_at_05=p < 0.05,
        group_sizes=tuple(a.size for a in arrays),
        group_means=tuple(float(m) for m in means),
    )


@dataclass(frozen=True)
class PairedTResult:
    n: int
    mean_diff: float
    sd_diff: float
    se: float
    ci_low: float
    ci_high: float
    t: float
    df: int
    p: float
    reject_at_05: bool
    alpha: float = 0.05
    confidence: float = 0.95

    @property
    def reject(self) -> bool:
        """Decision at the configured ``alpha``."""
        return self.p < self.alpha


def t_interval(mean: float, se: float, df: float, confidence: float = 0.95) -> tuple[float, float]:
    """Two-sided confidence interval ``mean -/+ q * se``."""
    q = t_quantile(0.5 + 0.5 * confidence, df)
    return mean - q * se, mean + q * se


def paired_t_test(
    a: Mapping | Sequence[float],
    b: Mapping | Sequence[float],
    alpha: float = 0.05,
    confidence: float = 0.95,
) -> PairedTResult:
    """Paired-sample t test of mean(a - b) = 0, two-tailed.

    Mappings are aligned by key and must share exactly the same keys, so
    observations are matched by (bank, year) rather than by position.
    Plain sequences are taken as already aligned.
    """
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if isinstance(a, Mapping) or isinstance(b, Mapping):
        if not (isinstance(a, Mapping) and isinstance(b, Mapping)):
            raise LengthMismatch("cannot pair a keyed series with an unkeyed one")
        if set(a) != set(b):
            only = sorted(set(a) ^ set(b), key=repr)[:5]
            raise LengthMismatch(f"paired series have different keys, e.g. {only}")
        keys = sorted(a, key=repr)
        av = np.array([a[k] for k in keys], dtype=float)
        bv = np.array([b[k] for k in keys], dtype=float)
    else:
        av = np.asarray(a, dtype=float).ravel()
        bv = np.asarray(b, dtype=float).ravel()
        if av.size != bv.size:
            raise LengthMismatch(f"paired series have lengths {av.size} and {bv.size}")
    n = av.size
    if n < 2:
        raise InsufficientData(f"paired t test needs at least 2 pairs, got {n}")
    d = av - bv
    if not np.all(np.isfinite(d)):
        raise DomainError("non-finite value in paired t test input")
    mean = float(d.mean())
    sd = float(d.std(ddof=1))
    if sd == 0.0:
        raise ZeroVarianceDifferences("all paired differences are equal; t is undefined")
    se = sd / math.sqrt(n)
    df = n - 1
    t = mean / se
    p = t_two_tailed_p(t, df)
    lo, hi = t_interval(mean, se, df, confidence)
    return PairedTResult(
        n=n,
        mean_diff=mean,
        sd_diff=sd,
        se=se,
        ci_low=lo,
        ci_high=hi,
        t=t,
        df=df,
        p=p,
        reject_at_05=p < 0.05,
        alpha=alpha,
        confidence=confidence,
    )
