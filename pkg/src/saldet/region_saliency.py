"""Segment-level saliency: spatially weighted region contrast and its debiased form.

Each region is scored by its color-histogram contrast to every other region,
weighted by the other region's size and by a Gaussian falloff in centroid
distance. Using the raw falloff weights reproduces the classic region-contrast
behavior, which implicitly favors central regions; row-normalizing the weights
removes that implicit center preference while keeping the locality of contrast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import srgb_to_lab
from .maps import max_normalize
from .segmentation import RegionTable, Segmentation

DEFAULT_BINS_PER_CHANNEL = 12
DEFAULT_COVERAGE = 0.95
DEFAULT_SIGMA_SQ = 0.4  # spatial falloff scale in normalized coordinate units


@dataclass
class ColorPalette:
    colors: np.ndarray  # (P, 3) Lab colors
    bins_per_channel: int

    @property
    def size(self) -> int:
        return self.colors.shape[0]

    def distance_matrix(self) -> np.ndarray:
        d = self.colors[:, None, :] - self.colors[None, :, :]
        return np.sqrt((d * d).sum(axis=2))


@dataclass
class SpatialWeights:
    matrix: np.ndarray  # (R, R)
    debiased: bool
    sigma_sq: float


@dataclass
class RegionSaliency:
    scores: np.ndarray  # (R,) raw per-region contrast values
    smap: np.ndarray  # (H, W) painted map, max-normalized
    single_region: bool


def build_palette(
    rgb: np.ndarray,
    bins_per_channel: int = DEFAULT_BINS_PER_CHANNEL,
    coverage: float = DEFAULT_COVERAGE,
) -> tuple[ColorPalette, np.ndarray]:
    """Quantize an sRGB image to a compact palette and index every pixel.

    Each channel is split into uniform bins; the most frequent quantized colors
    covering at least `coverage` of the pixels are kept, everything else is
    reassigned to the nearest kept color by Lab distance. Palette entries are
    the Lab coordinates of each kept bin's mean sRGB member.
    """
    if bins_per_channel < 2:
        raise ValueError("bins_per_channel must be at least 2")
    if not 0.0 < coverage <= 1.0:
        raise ValueError("coverage must lie in (0, 1]")
    h, w = rgb.shape[:2]
    b = bins_per_channel
    chans = rgb.reshape(-1, 3).astype(np.int64)
    quant = (chans * b) // 256  # channel value v -> bin floor(v*b/256)
    bin_id = (quant[:, 0] * b + quant[:, 1]) * b + quant[:, 2]

    n_bins = b**3
    counts = np.bincount(bin_id, minlength=n_bins)
    occupied = np.flatnonzero(counts)
    # Mean sRGB member per occupied bin, then its Lab coordinates.
    sums = np.stack(
        [np.bincount(bin_id, weights=chans[:, c], minlength=n_bins) for c in range(3)],
        axis=1,
    )
    mean_rgb = sums[occupied] / counts[occupied, None]
    bin_lab = srgb_to_lab(mean_rgb / 255.0)

    # Keep the most frequent bins until they cover the requested pixel fraction.
    by_freq = occupied[np.lexsort((occupied, -counts[occupied]))]
    cum = np.cumsum(counts[by_freq])
    n_keep = int(np.searchsorted(cum, coverage * (h * w) - 1e-9) + 1)
    kept = by_freq[:n_keep]

    pos_in_occupied = np.searchsorted(occupied, kept)
    palette_lab = bin_lab[pos_in_occupied]

    # Map every occupied bin to a palette index, dropped bins to the nearest
    # kept color in Lab.
    bin_to_palette = np.full(n_bins, -1, dtype=np.int64)
    bin_to_palette[kept] = np.arange(n_keep)
    dropped = by_freq[n_keep:]
    if dropped.size:
        dropped_lab = bin_lab[np.searchsorted(occupied, dropped)]
        d = dropped_lab[:, None, :] - palette_lab[None, :, :]
        nearest = np.argmin((d * d).sum(axis=2), axis=1)
        bin_to_palette[dropped] = nearest

    index_image = bin_to_palette[bin_id].reshape(h, w).astype(np.int32)
    return ColorPalette(colors=palette_lab, bins_per_channel=b), index_image


def color_distance(palette: ColorPalette, i: int, j: int) -> float:
    """Euclidean Lab distance between two palette colors."""
    d = palette.colors[i] - palette.colors[j]
    return float(np.sqrt((d * d).sum()))


def region_color_distance(hist_a: np.ndarray, hist_b: np.ndarray, palette: ColorPalette) -> float:
    """Histogram contrast: sum_ij f_a(i) f_b(j) D(c_i, c_j)."""
    return float(hist_a @ palette.distance_matrix() @ hist_b)


def spatial_weights(
    table: RegionTable, sigma_sq: float = DEFAULT_SIGMA_SQ, debiased: bool = False
) -> SpatialWeights:
    """Pairwise centroid-distance falloff exp(-dist / sigma_sq).

    With debiased=True every row is divided by its off-diagonal sum, so the
    total weight each region assigns to all the others is exactly 1 and no
    location is structurally favored.
    """
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    c = table.centroids
    diff = c[:, None, :] - c[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    matrix = np.exp(-dist / sigma_sq)
    if debiased:
        off_diag = matrix.sum(axis=1) - np.diag(matrix)
        rows = off_diag > 0
        matrix[rows] /= off_diag[rows, None]
    return SpatialWeights(matrix=matrix, debiased=debiased, sigma_sq=sigma_sq)


def region_contrast(
    table: RegionTable,
    weights: SpatialWeights,
    palette: ColorPalette,
    seg: Segmentation,
) -> RegionSaliency:
    """Score each region by size- and distance-weighted color contrast, then paint.

    score(k) = sum over i != k of weight(k, i) * size(i) * D_color(k, i).
    Raw weights give the center-favoring variant, debiased weights the
    locally debiased one. A single-region image yields an all-zero map.
    """
    r = table.n_regions
    if r == 1:
        return RegionSaliency(
            scores=np.zeros(1), smap=np.zeros_like(seg.labels, dtype=np.float64), single_region=True
        )
    color_dist = table.histograms @ palette.distance_matrix() @ table.histograms.T
    contrib = weights.matrix * color_dist * table.sizes[None, :].astype(np.float64)
    scores = contrib.sum(axis=1) - np.diag(contrib)
    smap = max_normalize(scores[seg.labels])
    return RegionSaliency(scores=scores, smap=smap, single_region=False)


def weight_sum_field(grid_w: int, grid_h: int, sigma_sq: float = DEFAULT_SIGMA_SQ) -> np.ndarray:
    """Total falloff weight from each cell of a regular grid to all other cells.

    Cell positions are normalized to [0, 1] x [0, 1]. The field peaks at the
    grid center, which is exactly the implicit center preference that raw
    (unnormalized) spatial weighting introduces.
    """
    if grid_w < 2 or grid_h < 2:
        raise ValueError("grid must be at least 2x2")
    if sigma_sq <= 0:
        raise ValueError("sigma_sq must be positive")
    xs = np.arange(grid_w) / (grid_w - 1)
    ys = np.arange(grid_h) / (grid_h - 1)
    px, py = np.meshgrid(xs, ys)
    pts = np.stack([px.ravel(), py.ravel()], axis=1)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=2))
    w = np.exp(-dist / sigma_sq)
    field = w.sum(axis=1) - 1.0  # drop the self term exp(0)
    return field.reshape(grid_h, grid_w)
