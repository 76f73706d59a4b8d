"""Centroid distribution analysis and significance testing.

Covers the full validation chain for the Gaussian center model: mask centroids,
the polar decomposition around the image center, Q-Q pair generation against
uniform / Gaussian / half-Gaussian references, probability plot correlation
coefficients with tabulated critical values, the correlation t-test, and the
two-sample t-tests used to compare per-image scores of two algorithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betainc, ndtri

from . import ppcc_tables

QQ_DISTRIBUTIONS = ("uniform", "gaussian", "half-gaussian")


@dataclass
class PolarSample:
    """Polar coordinates around (0.5, 0.5), plus the folded signed form.

    The folded form maps angles in [-pi, 0) to [0, pi) by adding pi and
    negating the radius, so both forms denote the same points while the signed
    radii of a half-Gaussian radius model become plain Gaussian.
    """

    theta: np.ndarray  # [-pi, pi]
    radius: np.ndarray  # >= 0
    theta_folded: np.ndarray  # [0, pi]
    radius_signed: np.ndarray


@dataclass
class QQData:
    theoretical: np.ndarray  # sorted reference quantiles
    sample: np.ndarray  # sorted observations
    dist: str


@dataclass
class TestResult:
    statistic: float
    p_value: float | None
    reject: bool
    alpha: float
    tails: str
    df: float | None = None
    critical: float | None = None


def mask_centroid(mask: np.ndarray) -> np.ndarray:
    """Mean pixel-center position of the object, normalized to [0, 1]^2."""
    ys, xs = np.nonzero(mask)
    if xs.size == 0:
        raise ValueError("mask has no salient pixels")
    h, w = mask.shape
    return np.array([(xs + 0.5).mean() / w, (ys + 0.5).mean() / h])


def to_polar(centroids: np.ndarray) -> PolarSample:
    """Polar decomposition of normalized centroids around the pole (0.5, 0.5)."""
    pts = np.atleast_2d(np.asarray(centroids, dtype=np.float64))
    dx = pts[:, 0] - 0.5
    dy = pts[:, 1] - 0.5
    theta = np.arctan2(dy, dx)  # 0 at the pole by atan2 convention
    radius = np.hypot(dx, dy)
    negative = theta < 0
    theta_folded = np.where(negative, theta + np.pi, theta)
    radius_signed = np.where(negative, -radius, radius)
    return PolarSample(theta=theta, radius=radius, theta_folded=theta_folded, radius_signed=radius_signed)


def filliben_positions(n: int) -> np.ndarray:
    """Order-statistic medians: m_i = (i - 0.3175)/(n + 0.365), endpoints adjusted."""
    if n < 3:
        raise ValueError("need at least 3 samples")
    m = (np.arange(1, n + 1) - 0.3175) / (n + 0.365)
    m[-1] = 0.5 ** (1.0 / n)
    m[0] = 1.0 - m[-1]
    return m


def _reference_quantiles(dist: str, probs: np.ndarray) -> np.ndarray:
    if dist == "uniform":
        return -np.pi + 2.0 * np.pi * probs
    if dist == "gaussian":
        return ndtri(probs)
    if dist == "half-gaussian":
        return ndtri((1.0 + probs) / 2.0)
    raise ValueError(f"unknown distribution {dist!r}")


def qq_pairs(
    samples: np.ndarray,
    dist: str,
    mode: str = "medians",
    rng: np.random.Generator | None = None,
) -> QQData:
    """Paired quantiles of the sample against a reference distribution.

    mode="medians" uses deterministic Filliben positions; mode="random" draws a
    reference sample of the same size instead (requires rng), mirroring Q-Q
    plots built from random reference draws.
    """
    samples = np.sort(np.asarray(samples, dtype=np.float64))
    n = samples.size
    if n < 3:
        raise ValueError("need at least 3 samples")
    if mode == "medians":
        theoretical = _reference_quantiles(dist, filliben_positions(n))
    elif mode == "random":
        if rng is None:
            raise ValueError("random mode needs a generator")
        if dist == "uniform":
            theoretical = np.sort(rng.uniform(-np.pi, np.pi, n))
        elif dist == "gaussian":
            theoretical = np.sort(rng.standard_normal(n))
        elif dist == "half-gaussian":
            theoretical = np.sort(np.abs(rng.standard_normal(n)))
        else:
            raise ValueError(f"unknown distribution {dist!r}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return QQData(theoretical=theoretical, sample=samples, dist=dist)


def ppcc(qq: QQData) -> float:
    """Pearson correlation between the paired quantiles."""
    t, s = qq.theoretical, qq.sample
    if t.size < 3:
        raise ValueError("need at least 3 samples")
    tc = t - t.mean()
    sc = s - s.mean()
    denom = math.sqrt(float((tc**2).sum() * (sc**2).sum()))
    if denom == 0.0:
        raise ValueError("zero variance in the paired quantiles")
    return float(tc @ sc / denom)


def ppcc_critical(n: int, dist: str) -> float:
    """Tabulated critical value, linearly interpolated in n within [3, 1000]."""
    if not ppcc_tables.N_MIN <= n <= ppcc_tables.N_MAX:
        raise ValueError(
            f"n={n} outside the tabulated range [{ppcc_tables.N_MIN}, {ppcc_tables.N_MAX}]"
        )
    if dist == "uniform":
        return ppcc_tables.UNIFORM_CRITICAL
    if dist == "gaussian":
        ns = np.array(sorted(ppcc_tables.NORMAL_CRITICAL_05))
        vals = np.array([ppcc_tables.NORMAL_CRITICAL_05[k] for k in ns])
        return float(np.interp(n, ns, vals))
    raise ValueError(f"no critical-value table for distribution {dist!r}")


def ppcc_test(r: float, n: int, dist: str, alpha: float = 0.05) -> TestResult:
    """Reject the distributional hypothesis iff the PPCC falls below the critical value."""
    critical = ppcc_critical(n, dist)
    return TestResult(
        statistic=float(r),
        p_value=None,
        reject=bool(r < critical),
        alpha=alpha,
        tails="one",
        critical=critical,
    )


def inverse_normal_cdf(p: float) -> float:
    """Standard normal quantile function."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie strictly between 0 and 1")
    return float(ndtri(p))


def student_t_tail(t: float, df: float) -> float:
    """Upper tail P(T >= t) of Student's t via the regularized incomplete beta."""
    if df <= 0:
        raise ValueError("df must be positive")
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0
    half = 0.5 * float(betainc(df / 2.0, 0.5, df / (df + t * t)))
    return half if t >= 0 else 1.0 - half


def correlation_t_test(r: float, n: int, alpha: float = 0.05) -> TestResult:
    """Two-tailed test of zero correlation via t = r sqrt((n-2)/(1-r^2))."""
    if n < 3:
        raise ValueError("need at least 3 samples")
    df = n - 2
    if abs(r) >= 1.0:
        return TestResult(
            statistic=math.copysign(math.inf, r), p_value=0.0, reject=True, alpha=alpha, tails="two", df=df
        )
    t = r * math.sqrt(df / (1.0 - r * r))
    p = 2.0 * student_t_tail(abs(t), df)
    return TestResult(statistic=t, p_value=p, reject=bool(p <= alpha), alpha=alpha, tails="two", df=df)


def _welch_stat(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    na, nb = a.size, b.size
    va, vb = a.var(ddof=1), b.var(ddof=1)
    se_sq = va / na + vb / nb
    delta = a.mean() - b.mean()
    if se_sq == 0.0:
        return (0.0 if delta == 0.0 else math.copysign(math.inf, delta)), float(na + nb - 2)
    df = se_sq**2 / ((va / na) ** 2 / (na - 1) + (vb / nb) ** 2 / (nb - 1))
    return delta / math.sqrt(se_sq), df


def _paired_stat(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    if a.size != b.size:
        raise ValueError("paired test needs samples of equal length")
    d = a - b
    n = d.size
    sd = d.std(ddof=1)
    mean = d.mean()
    if sd == 0.0:
        return (0.0 if mean == 0.0 else math.copysign(math.inf, mean)), float(n - 1)
    return mean / (sd / math.sqrt(n)), float(n - 1)


def two_sample_t_test(
    a, b, mode: str = "welch", tails: str = "two", alpha: float = 0.05
) -> TestResult:
    """Compare two score samples.

    mode is "welch" (independent, unequal variances) or "paired". tails is
    "two" for the equal-means test or "lower" for the one-sided test whose
    small p-values indicate that the mean of `a` is below the mean of `b`.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.size < 2 or b.size < 2:
        raise ValueError("need at least 2 observations per sample")
    if mode == "welch":
        t, df = _welch_stat(a, b)
    elif mode == "paired":
        t, df = _paired_stat(a, b)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if tails == "two":
        p = 2.0 * student_t_tail(abs(t), df)
    elif tails == "lower":
        p = student_t_tail(-t, df)  # P(T <= t)
    else:
        raise ValueError(f"unknown tails {tails!r}")
    p = min(p, 1.0)
    return TestResult(statistic=t, p_value=p, reject=bool(p <= alpha), alpha=alpha, tails=tails, df=df)


def analyze_centroid_distribution(
    centroids: np.ndarray,
    alpha: float = 0.05,
    qq_mode: str = "medians",
    rng: np.random.Generator | None = None,
) -> tuple[dict, dict[str, QQData]]:
    """Full centroid analysis: moments, polar model fit, PPCC tests, t-tests.

    Returns a JSON-ready summary plus the Q-Q pair data for the angle, radius
    and signed-radius comparisons.
    """
    centroids = np.asarray(centroids, dtype=np.float64)
    n = centroids.shape[0]
    if n < 3:
        raise ValueError("need at least 3 centroids")
    polar = to_polar(centroids)
    degenerate_radii = bool(np.allclose(polar.radius, 0.0))

    qq = {
        "angle": qq_pairs(polar.theta, "uniform", qq_mode, rng),
        "radius": qq_pairs(polar.radius, "half-gaussian", qq_mode, rng),
        "radius_signed": qq_pairs(polar.radius_signed, "gaussian", qq_mode, rng),
    }
    summary: dict = {
        "n": n,
        "mean": centroids.mean(axis=0).tolist(),
        "covariance": np.cov(centroids.T, ddof=1).tolist(),
        "degenerate_radii": degenerate_radii,
    }
    if degenerate_radii:
        return summary, qq

    r_angle = ppcc(qq["angle"])
    r_signed = ppcc(qq["radius_signed"])
    r_half = ppcc(qq["radius"])

    def _result_dict(res: TestResult) -> dict:
        return {
            "statistic": res.statistic,
            "p_value": res.p_value,
            "reject": res.reject,
            "critical": res.critical,
            "df": res.df,
            "tails": res.tails,
        }

    summary["ppcc"] = {"angle": r_angle, "radius": r_half, "radius_signed": r_signed}
    summary["tests"] = {
        "angle_uniform": _result_dict(ppcc_test(r_angle, n, "uniform", alpha)),
        "radius_signed_gaussian": _result_dict(ppcc_test(r_signed, n, "gaussian", alpha)),
        "angle_correlation": _result_dict(correlation_t_test(r_angle, n, alpha)),
        "radius_signed_correlation": _result_dict(correlation_t_test(r_signed, n, alpha)),
    }
    return summary, qq
