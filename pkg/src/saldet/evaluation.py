"""Binary-classifier evaluation of saliency maps against ground-truth masks.

Maps are quantized to 8 bits and swept over all 256 threshold levels. Per image
this yields exact confusion counts, from which five measures are derived: the
maximum F1 and F_beta scores, the area under the interpolated precision-recall
curve, the area under the ROC curve and a hit indicator (does the most salient
pixel fall inside the object). Dataset aggregation macro-averages the
per-threshold precision/recall/FPR/TPR across images and recomputes curve
measures on the averaged curves; the mean of per-image areas is reported
alongside as a secondary view.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .maps import quantize_u8

DEFAULT_BETA_SQ = 0.3  # weights precision more than recall
N_LEVELS = 256


@dataclass
class ConfusionSeries:
    """Exact confusion counts for thresholds t = 0..255 (positive iff round(255*s) >= t)."""

    tp: np.ndarray
    fp: np.ndarray
    tn: np.ndarray
    fn: np.ndarray
    positives: int
    negatives: int

    @property
    def has_positives(self) -> bool:
        return self.positives > 0

    @property
    def has_negatives(self) -> bool:
        return self.negatives > 0


def sweep_confusion(smap: np.ndarray, gt: np.ndarray) -> ConfusionSeries:
    """Threshold sweep over the 8-bit quantized map; counts are exact."""
    if smap.shape != gt.shape:
        raise ValueError("saliency map and mask dimensions do not match")
    q = quantize_u8(smap).astype(np.int64)
    pos_hist = np.bincount(q[gt], minlength=N_LEVELS)
    neg_hist = np.bincount(q[~gt], minlength=N_LEVELS)
    # tp[t] counts positives with level >= t: reverse cumulative sum.
    tp = pos_hist[::-1].cumsum()[::-1]
    fp = neg_hist[::-1].cumsum()[::-1]
    positives = int(pos_hist.sum())
    negatives = int(neg_hist.sum())
    return ConfusionSeries(
        tp=tp, fp=fp, tn=negatives - fp, fn=positives - tp, positives=positives, negatives=negatives
    )


def precision_recall_arrays(series: ConfusionSeries) -> tuple[np.ndarray, np.ndarray]:
    """Per-threshold precision and recall; precision is 0 where nothing is predicted."""
    denom = series.tp + series.fp
    precision = np.divide(series.tp, denom, out=np.zeros(N_LEVELS), where=denom > 0)
    recall = series.tp / series.positives if series.positives else np.zeros(N_LEVELS)
    return precision, recall


def fpr_tpr_arrays(series: ConfusionSeries) -> tuple[np.ndarray, np.ndarray]:
    fpr = series.fp / series.negatives if series.negatives else np.zeros(N_LEVELS)
    tpr = series.tp / series.positives if series.positives else np.zeros(N_LEVELS)
    return fpr, tpr


def _operating_points(series: ConfusionSeries) -> tuple[np.ndarray, np.ndarray]:
    # Threshold descending, prefixed with the virtual empty prediction (0, 0),
    # consecutive duplicates dropped.
    tp = np.concatenate(([0], series.tp[::-1]))
    fp = np.concatenate(([0], series.fp[::-1]))
    keep = np.ones(tp.size, dtype=bool)
    keep[1:] = (np.diff(tp) != 0) | (np.diff(fp) != 0)
    return tp[keep], fp[keep]


def pr_curve_and_auc(series: ConfusionSeries) -> tuple[np.ndarray, float]:
    """Precision-recall curve and the area under its interpolated form.

    Between adjacent operating points the true-positive count is interpolated
    continuously and the false positives follow linearly with local slope
    s = dFP/dTP, so precision along a segment is (TP_a+t) / (TP_a+FP_a+(1+s)t).
    The area contribution of each segment has the closed form
    dTP/m + (TP_a*m - c)/m^2 * ln((c + m*dTP)/c) with m = 1+s, c = TP_a+FP_a,
    all divided by the number of positives. The virtual empty prediction
    anchors the curve at recall 0 and the all-positive threshold at recall 1.
    """
    if not series.has_positives:
        raise ValueError("PR curve undefined without positive ground-truth pixels")
    tp, fp = _operating_points(series)
    p = float(series.positives)
    area = 0.0
    for i in range(1, tp.size):
        dtp = float(tp[i] - tp[i - 1])
        if dtp == 0.0:
            continue
        slope = float(fp[i] - fp[i - 1]) / dtp
        m = 1.0 + slope
        c = float(tp[i - 1] + fp[i - 1])
        if c == 0.0:
            area += dtp / m
        else:
            area += dtp / m + (tp[i - 1] * m - c) / (m * m) * math.log((c + m * dtp) / c)
    # Curve points (recall, precision); the anchor takes the first achievable
    # precision, matching the interpolation limit.
    recall = tp / p
    denom = tp + fp
    precision = np.divide(tp, denom, out=np.zeros(tp.size), where=denom > 0)
    if denom[0] == 0 and precision.size > 1:
        precision[0] = precision[1]
    return np.stack([recall, precision], axis=1), area / p


def roc_curve_and_auc(series: ConfusionSeries) -> tuple[np.ndarray, float]:
    """ROC curve (FPR, TPR) with trapezoidal area."""
    if not (series.has_positives and series.has_negatives):
        raise ValueError("ROC curve needs at least one positive and one negative pixel")
    tp, fp = _operating_points(series)
    tpr = tp / series.positives
    fpr = fp / series.negatives
    auc = float(np.trapezoid(tpr, fpr))
    return np.stack([fpr, tpr], axis=1), auc


def fbeta_score(precision, recall, beta_sq: float):
    """(1+b^2) * P * R / (b^2 * P + R), defined as 0 where the denominator vanishes."""
    precision = np.asarray(precision, dtype=np.float64)
    recall = np.asarray(recall, dtype=np.float64)
    denom = beta_sq * precision + recall
    out = np.zeros(np.broadcast(precision, recall).shape)
    np.divide((1.0 + beta_sq) * precision * recall, denom, out=out, where=denom > 0)
    return out if out.ndim else float(out)


def max_f_scores(series: ConfusionSeries, beta_sq: float = DEFAULT_BETA_SQ) -> tuple[float, float]:
    """Maximum F1 and F_beta over all 256 thresholds."""
    if not series.has_positives:
        raise ValueError("F scores undefined without positive ground-truth pixels")
    precision, recall = precision_recall_arrays(series)
    f1 = fbeta_score(precision, recall, 1.0)
    fb = fbeta_score(precision, recall, beta_sq)
    return float(np.max(f1)), float(np.max(fb))


def hit_indicator(smap: np.ndarray, gt: np.ndarray) -> int:
    """1 if any pixel attaining the map's global maximum lies inside the object.

    Ties are resolved on the 8-bit quantized map, the same representation the
    threshold sweep uses, so persisted and in-memory maps agree exactly.
    """
    if smap.shape != gt.shape:
        raise ValueError("saliency map and mask dimensions do not match")
    q = quantize_u8(smap)
    return int(bool(gt[q == q.max()].any()))


@dataclass
class ImageEval:
    stem: str
    series: ConfusionSeries
    f1: float | None
    fbeta: float | None
    pr_auc: float | None
    roc_auc: float | None
    hit: int | None

    def scalar_dict(self) -> dict:
        return {
            "f1": self.f1,
            "fbeta": self.fbeta,
            "pr_auc": self.pr_auc,
            "roc_auc": self.roc_auc,
            "hit": self.hit,
        }


def evaluate_image(
    smap: np.ndarray, gt: np.ndarray, stem: str = "", beta_sq: float = DEFAULT_BETA_SQ
) -> ImageEval:
    """All per-image measures; degenerate masks yield None for undefined measures."""
    series = sweep_confusion(smap, gt)
    f1 = fbeta = pr_auc = roc_auc = hit = None
    if series.has_positives:
        f1, fbeta = max_f_scores(series, beta_sq)
        _, pr_auc = pr_curve_and_auc(series)
        hit = hit_indicator(smap, gt)
        if series.has_negatives:
            _, roc_auc = roc_curve_and_auc(series)
    return ImageEval(stem=stem, series=series, f1=f1, fbeta=fbeta, pr_auc=pr_auc, roc_auc=roc_auc, hit=hit)


@dataclass
class EvalReport:
    n_images: int
    n_no_positives: int
    n_no_negatives: int
    aggregate: dict
    mean_per_image: dict
    per_image: dict
    curves: dict = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "n_images": self.n_images,
            "n_no_positives": self.n_no_positives,
            "n_no_negatives": self.n_no_negatives,
            "aggregate": self.aggregate,
            "mean_per_image": self.mean_per_image,
            "per_image": self.per_image,
            "curves": {k: np.asarray(v).tolist() for k, v in self.curves.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvalReport":
        return cls(
            n_images=data["n_images"],
            n_no_positives=data["n_no_positives"],
            n_no_negatives=data["n_no_negatives"],
            aggregate=data["aggregate"],
            mean_per_image=data["mean_per_image"],
            per_image=data["per_image"],
            curves={k: np.asarray(v) for k, v in data["curves"].items()},
        )


def anchored_trapezoid(x: np.ndarray, y: np.ndarray, anchor: tuple[float, float]) -> float:
    """Trapezoidal area under (x, y) with an extra left anchor point prepended."""
    x = np.concatenate(([anchor[0]], x))
    y = np.concatenate(([anchor[1]], y))
    return float(np.trapezoid(y, x))


def aggregate_dataset(evals: list[ImageEval], beta_sq: float = DEFAULT_BETA_SQ) -> EvalReport:
    """Macro-average per-threshold curves over images and score the averaged curves.

    Images without positive pixels are excluded from all recall-based numbers;
    images without negative pixels are additionally excluded from the ROC side.
    """
    if not evals:
        raise ValueError("nothing to aggregate")
    pr_valid = [e for e in evals if e.series.has_positives]
    roc_valid = [e for e in pr_valid if e.series.has_negatives]
    if not pr_valid:
        raise ValueError("no image has positive ground-truth pixels")

    precision = np.mean([precision_recall_arrays(e.series)[0] for e in pr_valid], axis=0)
    recall = np.mean([precision_recall_arrays(e.series)[1] for e in pr_valid], axis=0)
    f1_curve = fbeta_score(precision, recall, 1.0)
    fb_curve = fbeta_score(precision, recall, beta_sq)

    # Threshold-descending order gives recall ascending; anchor at recall 0
    # with the first achievable precision, like the per-image interpolation.
    pr_auc = anchored_trapezoid(recall[::-1], precision[::-1], (0.0, precision[-1]))

    aggregate = {
        "f1": float(np.max(f1_curve)),
        "fbeta": float(np.max(fb_curve)),
        "pr_auc": pr_auc,
        "roc_auc": None,
        "hit_rate": float(np.mean([e.hit for e in pr_valid])),
    }
    curves = {
        "threshold": np.arange(N_LEVELS),
        "precision": precision,
        "recall": recall,
        "fpr": np.full(N_LEVELS, np.nan),
        "tpr": np.full(N_LEVELS, np.nan),
    }
    if roc_valid:
        fpr = np.mean([fpr_tpr_arrays(e.series)[0] for e in roc_valid], axis=0)
        tpr = np.mean([fpr_tpr_arrays(e.series)[1] for e in roc_valid], axis=0)
        aggregate["roc_auc"] = anchored_trapezoid(fpr[::-1], tpr[::-1], (0.0, 0.0))
        curves["fpr"] = fpr
        curves["tpr"] = tpr

    def _mean(vals):
        vals = [v for v in vals if v is not None]
        return float(np.mean(vals)) if vals else None

    mean_per_image = {
        "f1": _mean([e.f1 for e in evals]),
        "fbeta": _mean([e.fbeta for e in evals]),
        "pr_auc": _mean([e.pr_auc for e in evals]),
        "roc_auc": _mean([e.roc_auc for e in evals]),
    }
    return EvalReport(
        n_images=len(evals),
        n_no_positives=len(evals) - len(pr_valid),
        n_no_negatives=len(pr_valid) - len(roc_valid),
        aggregate=aggregate,
        mean_per_image=mean_per_image,
        per_image={e.stem: e.scalar_dict() for e in evals},
        curves=curves,
    )
