"""Batch pipeline front-end.

Subcommands: saliency (compute per-image maps), evaluate (score a map
directory against the masks), sweep-weight (center-bias weight sweep),
analyze-distribution (centroid statistics and Q-Q data) and significance
(pairwise t-tests between two evaluation reports).

Exit codes: 0 success, 1 fatal error, 2 completed with warnings.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

import numpy as np
from PIL import Image

from . import centerbias, evaluation, maps, pixel_saliency, region_saliency, segmentation, stats
from .dataset import DatasetError, DatasetIndex, index_dataset, load_mask, load_pair, rgb_to_lab

log = logging.getLogger("saldet")

EXIT_OK = 0
EXIT_FATAL = 1
EXIT_WARNINGS = 2

ALGORITHMS = ("MSSS", "RC", "LDRC", "CB_P", "CB_S", "MSSS+CB", "RC+CB", "LDRC+CB")
SEGMENT_ALGORITHMS = ("RC", "LDRC", "CB_S", "RC+CB", "LDRC+CB")
MEASURES = ("f1", "fbeta", "pr_auc", "roc_auc", "hit_rate")
SCORE_KEYS = ("f1", "fbeta", "pr_auc", "roc_auc")

MEAN_MASK_SIZE = 256  # masks are resized to a common square grid for the mean mask


@dataclass(frozen=True)
class RunConfig:
    algorithm: str = "LDRC+CB"
    scheme: str = "convex"
    center_weight: float = 0.5
    sigma_sq: float = region_saliency.DEFAULT_SIGMA_SQ
    seg_k: float = 50.0
    seg_sigma: float = 0.5
    seg_min_size: int = 50
    bins_per_channel: int = region_saliency.DEFAULT_BINS_PER_CHANNEL
    coverage: float = region_saliency.DEFAULT_COVERAGE
    sigma_x_fraction: float = centerbias.DEFAULT_SIGMA_X_FRACTION
    sigma_y_fraction: float = centerbias.DEFAULT_SIGMA_Y_FRACTION
    threads: int = 1
    seed: int = 0

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.scheme not in centerbias.SCHEME_KINDS:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if not 0.0 <= self.center_weight <= 1.0:
            raise ValueError("center weight must lie in [0, 1]")
        if self.sigma_sq <= 0 or self.seg_k <= 0 or self.seg_min_size < 1:
            raise ValueError("spatial and segmentation parameters must be positive")
        if self.bins_per_channel < 2 or not 0 < self.coverage <= 1:
            raise ValueError("invalid palette parameters")
        if self.threads < 1:
            raise ValueError("thread count must be at least 1")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def content_hash(self) -> str:
        # threads affect scheduling only, never the outputs
        payload = {k: v for k, v in self.to_dict().items() if k != "threads"}
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


def compute_components(rgb: np.ndarray, config: RunConfig) -> tuple[np.ndarray | None, np.ndarray | None]:
    """(bottom-up map, center-prior map) for the configured algorithm; either may be None."""
    h, w = rgb.shape[:2]
    alg = config.algorithm
    model = centerbias.default_center_model(w, h, config.sigma_x_fraction, config.sigma_y_fraction)

    bottomup = center = None
    if alg in ("MSSS", "MSSS+CB"):
        bottomup = pixel_saliency.msss(rgb_to_lab(rgb))
        if alg == "MSSS+CB":
            center = centerbias.gaussian_center_map(model, w, h)
    elif alg == "CB_P":
        center = centerbias.gaussian_center_map(model, w, h)
    elif alg in SEGMENT_ALGORITHMS:
        lab = rgb_to_lab(rgb)
        seg = segmentation.felzenszwalb_segment(lab, config.seg_k, config.seg_sigma, config.seg_min_size)
        palette, index_img = region_saliency.build_palette(rgb, config.bins_per_channel, config.coverage)
        table = segmentation.region_stats(seg, index_img, palette.size)
        if alg == "CB_S":
            center = centerbias.region_center_prior(seg, table, model)
        else:
            weights = region_saliency.spatial_weights(
                table, config.sigma_sq, debiased=alg.startswith("LDRC")
            )
            result = region_saliency.region_contrast(table, weights, palette, seg)
            if result.single_region:
                log.warning("single-region segmentation, contrast map is all zero")
            bottomup = result.smap
            if alg.endswith("+CB"):
                center = centerbias.region_center_prior(seg, table, model)
    else:
        raise ValueError(f"unknown algorithm {alg!r}")
    return bottomup, center


def compute_saliency_map(rgb: np.ndarray, config: RunConfig) -> np.ndarray:
    bottomup, center = compute_components(rgb, config)
    if bottomup is not None and center is not None:
        scheme = centerbias.CombinationScheme(config.scheme, config.center_weight)
        return centerbias.combine(center, bottomup, scheme)
    return bottomup if bottomup is not None else center


def _run_jobs(fn, jobs, threads: int):
    """Apply fn over jobs; results always come back in job order."""
    if threads <= 1 or len(jobs) <= 1:
        for job in jobs:
            yield fn(job)
        return
    chunksize = max(1, len(jobs) // (threads * 8))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(fn, jobs, chunksize=chunksize)


# ---------------------------------------------------------------- saliency --


def _saliency_job(args):
    entry, cfg_dict, out_dir = args
    config = RunConfig.from_dict(cfg_dict)
    try:
        rgb, _ = load_pair(entry)
        smap = compute_saliency_map(rgb, config)
        name = f"{entry.stem}_{config.algorithm}.png"
        maps.save_map_png(smap, Path(out_dir) / name)
        return entry.stem, name, None
    except Exception as exc:  # per-image failures must not kill the batch
        return entry.stem, None, f"{type(exc).__name__}: {exc}"


def cmd_saliency(args) -> int:
    config = _config_from_args(args)
    config.validate()
    index = index_dataset(args.images, args.masks)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    jobs = [(entry, config.to_dict(), str(out_dir)) for entry in index.entries]
    map_names: dict[str, str] = {}
    failures: dict[str, str] = {}
    for stem, name, error in _run_jobs(_saliency_job, jobs, config.threads):
        if error is None:
            map_names[stem] = name
        else:
            failures[stem] = error
            log.error("%s: %s", stem, error)

    manifest = {
        "config": config.to_dict(),
        "config_hash": config.content_hash(),
        "maps": map_names,
        "failures": failures,
    }
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
    log.info("wrote %d map(s) to %s (%d failed)", len(map_names), out_dir, len(failures))
    return EXIT_WARNINGS if failures else EXIT_OK


# ---------------------------------------------------------------- evaluate --


def _evaluate_job(args):
    entry, map_path = args
    gt = load_mask(entry.mask_path)
    smap = maps.load_map_png(map_path)
    if smap.shape != gt.shape:
        raise DatasetError(f"map {map_path} does not match mask {entry.mask_path}")
    return evaluation.evaluate_image(smap, gt, stem=entry.stem)


def _resolve_map_paths(index: DatasetIndex, map_dir: Path, force: bool) -> tuple[dict, str, list]:
    manifest_path = map_dir / "manifest.json"
    missing: list[str] = []
    paths: dict[str, Path] = {}
    if manifest_path.is_file():
        manifest = json.loads(manifest_path.read_text())
        config_hash = manifest.get("config_hash", "")
        for entry in index.entries:
            name = manifest.get("maps", {}).get(entry.stem)
            if name and (map_dir / name).is_file():
                paths[entry.stem] = map_dir / name
            else:
                missing.append(entry.stem)
    elif force:
        config_hash = ""
        for entry in index.entries:
            candidates = sorted(map_dir.glob(f"{entry.stem}_*.png"))
            if candidates:
                paths[entry.stem] = candidates[0]
            else:
                missing.append(entry.stem)
    else:
        raise DatasetError(
            f"no manifest.json in {map_dir}; refusing to evaluate unidentified maps (use --force)"
        )
    return paths, config_hash, missing


def _write_report(report: evaluation.EvalReport, config_hash: str, out_dir: Path, baseline=None) -> None:
    data = report.to_dict()
    data["config_hash"] = config_hash
    if baseline is not None:
        ours, theirs = report.aggregate, baseline["aggregate"]
        data["relative_to_baseline_pct"] = {
            m: (100.0 * ours[m] / theirs[m]) if ours[m] is not None and theirs.get(m) else None
            for m in MEASURES
        }
    (out_dir / "report.json").write_text(json.dumps(data, indent=2, sort_keys=True))
    with (out_dir / "curves.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "precision", "recall", "fpr", "tpr"])
        c = report.curves
        for i in range(evaluation.N_LEVELS):
            writer.writerow(
                [int(c["threshold"][i])]
                + [f"{c[k][i]:.9f}" for k in ("precision", "recall", "fpr", "tpr")]
            )


def cmd_evaluate(args) -> int:
    index = index_dataset(args.images, args.masks)
    if not index.entries:
        raise DatasetError("dataset index is empty")
    map_dir = Path(args.maps)
    if not map_dir.is_dir():
        raise DatasetError(f"map directory {map_dir} does not exist")
    paths, config_hash, missing = _resolve_map_paths(index, map_dir, args.force)
    if not paths:
        raise DatasetError(f"no usable maps in {map_dir}")
    for stem in missing:
        log.warning("no map for %s, image excluded", stem)

    jobs = [(e, paths[e.stem]) for e in index.entries if e.stem in paths]
    evals = list(_run_jobs(_evaluate_job, jobs, args.threads))
    report = evaluation.aggregate_dataset(evals)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    baseline = json.loads(Path(args.baseline).read_text()) if args.baseline else None
    _write_report(report, config_hash, out_dir, baseline)
    log.info("aggregate: %s", {m: report.aggregate[m] for m in MEASURES})
    return EXIT_WARNINGS if missing else EXIT_OK


# ------------------------------------------------------------ sweep-weight --


def _sweep_job(args):
    entry, cfg_dict, weight_list = args
    config = RunConfig.from_dict(cfg_dict)
    rgb, gt = load_pair(entry)
    bottomup, center = compute_components(rgb, config)
    rows = []
    for w in weight_list:
        scheme = centerbias.CombinationScheme(config.scheme, w)
        smap = centerbias.combine(center, bottomup, scheme)
        ev = evaluation.evaluate_image(smap, gt, stem=entry.stem)
        p, r = evaluation.precision_recall_arrays(ev.series)
        fpr, tpr = evaluation.fpr_tpr_arrays(ev.series)
        rows.append((p, r, fpr, tpr, ev.hit, ev.series.has_positives, ev.series.has_negatives))
    return rows


def cmd_sweep_weight(args) -> int:
    config = _config_from_args(args)
    config.validate()
    if not config.algorithm.endswith("+CB"):
        raise ValueError("weight sweeps only apply to the +CB algorithms")
    if not 0.0 < args.step <= 0.5:
        raise ValueError("step must lie in (0, 0.5]")
    index = index_dataset(args.images, args.masks)
    if not index.entries:
        raise DatasetError("dataset index is empty")

    weight_list = [round(w, 6) for w in np.arange(0.0, 1.0 + args.step / 2.0, args.step)]
    n_w = len(weight_list)
    sums = {k: np.zeros((n_w, evaluation.N_LEVELS)) for k in ("precision", "recall", "fpr", "tpr")}
    hit_sum = np.zeros(n_w)
    n_pr = np.zeros(n_w, dtype=int)
    n_roc = np.zeros(n_w, dtype=int)

    jobs = [(entry, config.to_dict(), weight_list) for entry in index.entries]
    for rows in _run_jobs(_sweep_job, jobs, config.threads):
        for i, (p, r, fpr, tpr, hit, has_pos, has_neg) in enumerate(rows):
            if not has_pos:
                continue
            sums["precision"][i] += p
            sums["recall"][i] += r
            hit_sum[i] += hit
            n_pr[i] += 1
            if has_neg:
                sums["fpr"][i] += fpr
                sums["tpr"][i] += tpr
                n_roc[i] += 1

    if not n_pr.all():
        raise DatasetError("all masks are empty, nothing to sweep")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows_out = []
    for i, w in enumerate(weight_list):
        precision = sums["precision"][i] / n_pr[i]
        recall = sums["recall"][i] / n_pr[i]
        row = {
            "w_c": w,
            "f1": float(np.max(evaluation.fbeta_score(precision, recall, 1.0))),
            "fbeta": float(np.max(evaluation.fbeta_score(precision, recall, evaluation.DEFAULT_BETA_SQ))),
            "pr_auc": evaluation.anchored_trapezoid(recall[::-1], precision[::-1], (0.0, precision[-1])),
            "roc_auc": None,
            "hit_rate": float(hit_sum[i] / n_pr[i]),
        }
        if n_roc[i]:
            fpr = sums["fpr"][i] / n_roc[i]
            tpr = sums["tpr"][i] / n_roc[i]
            row["roc_auc"] = evaluation.anchored_trapezoid(fpr[::-1], tpr[::-1], (0.0, 0.0))
        rows_out.append(row)

    with (out_dir / "sweep.csv").open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["w_c"] + list(MEASURES))
        writer.writeheader()
        for row in rows_out:
            writer.writerow(
                {
                    k: (f"{v:.3f}" if k == "w_c" else ("" if v is None else f"{v:.9f}"))
                    for k, v in row.items()
                }
            )
    best = {
        m: max((r for r in rows_out if r[m] is not None), key=lambda row: row[m], default={"w_c": None})["w_c"]
        for m in MEASURES
    }
    summary = {"config_hash": config.content_hash(), "best_weight": best, "n_images": int(n_pr[0])}
    (out_dir / "sweep_summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True))
    log.info("best weight per measure: %s", best)
    return EXIT_OK


# ---------------------------------------------------- analyze-distribution --


WEIGHT_FIELD_GRID = 64  # grid resolution of the exported implicit-bias field


def _write_weight_field_csv(path, sigma_sq: float) -> None:
    field = region_saliency.weight_sum_field(WEIGHT_FIELD_GRID, WEIGHT_FIELD_GRID, sigma_sq)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        for row in field:
            writer.writerow([f"{v:.9f}" for v in row])


def _centroid_job(entry):
    gt = load_mask(entry.mask_path)
    if not gt.any():
        return entry.stem, None, None
    small = np.asarray(
        Image.fromarray(gt.astype(np.uint8) * 255, mode="L").resize(
            (MEAN_MASK_SIZE, MEAN_MASK_SIZE), Image.BILINEAR
        ),
        dtype=np.float64,
    ) / 255.0
    return entry.stem, stats.mask_centroid(gt), small


def cmd_analyze_distribution(args) -> int:
    index = index_dataset(args.images, args.masks)
    if not index.entries:
        raise DatasetError("dataset index is empty")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    stems, centroids = [], []
    mean_mask = np.zeros((MEAN_MASK_SIZE, MEAN_MASK_SIZE))
    skipped = 0
    for stem, centroid, small in _run_jobs(_centroid_job, index.entries, args.threads):
        if centroid is None:
            skipped += 1
            log.warning("empty mask skipped: %s", stem)
            continue
        stems.append(stem)
        centroids.append(centroid)
        mean_mask += small
    if len(centroids) < 3:
        raise DatasetError("need at least 3 non-empty masks")
    centroids = np.asarray(centroids)

    rng = np.random.default_rng(args.seed)
    summary, qq = stats.analyze_centroid_distribution(centroids, qq_mode=args.qq_mode, rng=rng)
    summary["skipped_empty_masks"] = skipped

    with (out_dir / "centroids.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["stem", "x", "y"])
        for stem, (x, y) in zip(stems, centroids):
            writer.writerow([stem, f"{x:.9f}", f"{y:.9f}"])
    maps.save_map_png(mean_mask / len(centroids), out_dir / "mean_mask.png")
    for name, data in qq.items():
        with (out_dir / f"qq_{name}.csv").open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["theoretical", "sample"])
            for t, s in zip(data.theoretical, data.sample):
                writer.writerow([f"{t:.9f}", f"{s:.9f}"])
    (out_dir / "distribution.json").write_text(json.dumps(summary, indent=2, sort_keys=True))
    # illustration of the implicit bias of unnormalized spatial weighting
    _write_weight_field_csv(out_dir / "weight_field.csv", region_saliency.DEFAULT_SIGMA_SQ)
    if "ppcc" in summary:
        log.info(
            "mean=%s ppcc(angle)=%.4f ppcc(signed radius)=%.4f",
            np.round(summary["mean"], 4).tolist(),
            summary["ppcc"]["angle"],
            summary["ppcc"]["radius_signed"],
        )
    return EXIT_WARNINGS if skipped else EXIT_OK


# ------------------------------------------------------------- significance --


def cmd_significance(args) -> int:
    report_a = json.loads(Path(args.report_a).read_text())
    report_b = json.loads(Path(args.report_b).read_text())
    stems_a, stems_b = set(report_a["per_image"]), set(report_b["per_image"])
    if stems_a != stems_b:
        diff = sorted(stems_a.symmetric_difference(stems_b))
        raise DatasetError(f"reports cover different images, e.g. {diff[:10]}")
    stems = sorted(stems_a)

    def _result_dict(res: stats.TestResult) -> dict:
        return {"t": res.statistic, "df": res.df, "p": res.p_value, "reject": res.reject}

    out: dict = {
        "alpha": 0.05,
        "n_images": len(stems),
        "hypotheses": {
            "h_eq": "two-tailed: the two reports' per-image means are equal",
            "h_lower": "one-tailed: report A's per-image mean is lower than report B's",
        },
        "measures": {},
    }
    for measure in SCORE_KEYS:
        pairs = [
            (report_a["per_image"][s][measure], report_b["per_image"][s][measure]) for s in stems
        ]
        pairs = [(a, b) for a, b in pairs if a is not None and b is not None]
        a = np.array([p[0] for p in pairs])
        b = np.array([p[1] for p in pairs])
        entry: dict = {"n": len(pairs)}
        for mode in ("paired", "welch"):
            entry[mode] = {
                "h_eq": _result_dict(stats.two_sample_t_test(a, b, mode=mode, tails="two")),
                "h_lower": _result_dict(stats.two_sample_t_test(a, b, mode=mode, tails="lower")),
            }
        out["measures"][measure] = entry

    path = Path(args.out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(out, indent=2, sort_keys=True))
    for measure, entry in out["measures"].items():
        log.info(
            "%s: paired p(eq)=%.3g p(lower)=%.3g | welch p(eq)=%.3g p(lower)=%.3g",
            measure,
            entry["paired"]["h_eq"]["p"],
            entry["paired"]["h_lower"]["p"],
            entry["welch"]["h_eq"]["p"],
            entry["welch"]["h_lower"]["p"],
        )
    return EXIT_OK


# ------------------------------------------------------------------ driver --


def _config_from_args(args) -> RunConfig:
    config = RunConfig()
    if getattr(args, "config", None):
        config = RunConfig.from_dict(json.loads(Path(args.config).read_text()))
    overrides = {
        "algorithm": args.algorithm,
        "scheme": args.scheme,
        "center_weight": args.wc,
        "sigma_sq": args.sigma_s2,
        "seg_k": args.seg_k,
        "seg_sigma": args.seg_sigma,
        "seg_min_size": args.seg_min_size,
        "bins_per_channel": args.bins,
        "coverage": args.coverage,
        "sigma_x_fraction": args.sigma_x_frac,
        "sigma_y_fraction": args.sigma_y_frac,
        "threads": args.threads,
        "seed": args.seed,
    }
    return replace(config, **{k: v for k, v in overrides.items() if v is not None})


def _add_dataset_flags(parser) -> None:
    parser.add_argument("--images", required=True, help="directory with input images")
    parser.add_argument("--masks", required=True, help="directory with ground-truth masks")


def _add_config_flags(parser) -> None:
    parser.add_argument("--config", help="JSON run-configuration file; flags override it")
    parser.add_argument("--algorithm", choices=ALGORITHMS, help="saliency algorithm")
    parser.add_argument("--scheme", choices=centerbias.SCHEME_KINDS, help="center-bias combination scheme")
    parser.add_argument("--wc", type=float, help="center-bias weight in [0, 1]")
    parser.add_argument("--sigma-s2", type=float, dest="sigma_s2", help="spatial falloff scale")
    parser.add_argument("--seg-k", type=float, help="segmentation merge threshold scale")
    parser.add_argument("--seg-sigma", type=float, help="segmentation pre-smoothing stddev")
    parser.add_argument("--seg-min-size", type=int, help="minimum region size in pixels")
    parser.add_argument("--bins", type=int, help="palette bins per sRGB channel")
    parser.add_argument("--coverage", type=float, help="palette pixel coverage in (0, 1]")
    parser.add_argument("--sigma-x-frac", type=float, help="center prior sigma_x as a width fraction")
    parser.add_argument("--sigma-y-frac", type=float, help="center prior sigma_y as a height fraction")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized modes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saldet",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("saliency", help="compute one 8-bit grayscale PNG per image plus a manifest")
    _add_dataset_flags(p)
    _add_config_flags(p)
    p.add_argument("--out", required=True, help="output directory for maps and manifest.json")
    p.add_argument("--threads", type=int, default=None, help="worker process count")
    p.set_defaults(func=cmd_saliency)

    p = sub.add_parser(
        "evaluate",
        help="score a map directory; writes report.json and curves.csv",
        description="Score a saliency map directory against the ground-truth masks.",
        epilog="curves.csv columns: threshold, precision, recall, fpr, tpr "
        "(macro-averaged per 8-bit threshold level).",
    )
    _add_dataset_flags(p)
    p.add_argument("--maps", required=True, help="directory with saliency PNGs and manifest.json")
    p.add_argument("--out", required=True, help="output directory for the report")
    p.add_argument("--baseline", help="baseline report.json for relative percentages")
    p.add_argument("--force", action="store_true", help="evaluate without a manifest")
    p.add_argument("--threads", type=int, default=1, help="worker process count")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser(
        "sweep-weight",
        help="evaluate a +CB algorithm over a center-weight grid",
        description="Evaluate a center-biased algorithm over a grid of center weights.",
        epilog="sweep.csv columns: w_c, f1, fbeta, pr_auc, roc_auc, hit_rate "
        "(aggregate measures per weight).",
    )
    _add_dataset_flags(p)
    _add_config_flags(p)
    p.add_argument("--out", required=True, help="output directory for sweep.csv")
    p.add_argument("--step", type=float, default=0.025, help="weight grid step in (0, 0.5]")
    p.add_argument("--threads", type=int, default=None, help="worker process count")
    p.set_defaults(func=cmd_sweep_weight)

    p = sub.add_parser(
        "analyze-distribution",
        help="centroid statistics, Q-Q data and mean mask",
        description="Analyze the spatial distribution of object centroids.",
        epilog="centroids.csv columns: stem, x, y (normalized). qq_*.csv columns: "
        "theoretical, sample. weight_field.csv: a 64x64 grid of total spatial "
        "weight per cell. Also writes mean_mask.png and distribution.json.",
    )
    _add_dataset_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--qq-mode", choices=("medians", "random"), default="medians")
    p.add_argument("--seed", type=int, default=0, help="seed for --qq-mode random")
    p.add_argument("--threads", type=int, default=1, help="worker process count")
    p.set_defaults(func=cmd_analyze_distribution)

    p = sub.add_parser("significance", help="pairwise t-tests between two evaluation reports")
    p.add_argument("--report-a", required=True, help="baseline report.json")
    p.add_argument("--report-b", required=True, help="comparison report.json")
    p.add_argument("--out", required=True, help="output JSON path")
    p.set_defaults(func=cmd_significance)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DatasetError, ValueError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_FATAL


if __name__ == "__main__":
    sys.exit(main())
