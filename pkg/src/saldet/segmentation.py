"""Graph-based image segmentation (Felzenszwalb-Huttenlocher style) and per-region stats.

The segmenter builds an 8-connected grid graph over the (optionally pre-smoothed)
Lab image with Euclidean Lab color distances as edge weights, merges components
greedily under the adaptive threshold tau(C) = k / |C|, and finally merges any
component smaller than min_size into its nearest neighbor along the sorted edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from PIL import Image
from scipy.ndimage import correlate1d


@dataclass
class Segmentation:
    labels: np.ndarray  # (H, W) int32, contiguous region ids 0..n_regions-1
    n_regions: int
    premerge_regions: int  # component count before the min_size merge pass

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    @property
    def width(self) -> int:
        return self.labels.shape[1]


@dataclass
class RegionTable:
    sizes: np.ndarray  # (R,) int64 pixel counts
    centroids: np.ndarray  # (R, 2) mean of ((x+0.5)/W, (y+0.5)/H) per region
    histograms: np.ndarray  # (R, P) palette color frequencies, rows sum to 1

    @property
    def n_regions(self) -> int:
        return self.sizes.shape[0]


def _gaussian_smooth(lab: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian pre-smoothing, kernel radius ceil(3*sigma), edge-clamped."""
    if sigma <= 0:
        return lab.astype(np.float64)
    radius = int(np.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    kernel = np.exp(-0.5 * (x / sigma) ** 2)
    kernel /= kernel.sum()
    out = lab.astype(np.float64)
    out = correlate1d(out, kernel, axis=0, mode="nearest")
    out = correlate1d(out, kernel, axis=1, mode="nearest")
    return out


def _grid_edges(smoothed: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """8-connected edges in a fixed canonical order with Lab-distance weights."""
    h, w = smoothed.shape[:2]
    idx = np.arange(h * w, dtype=np.int64).reshape(h, w)

    def block(sl_a, sl_b):
        a = idx[sl_a].ravel()
        b = idx[sl_b].ravel()
        d = smoothed[sl_a].reshape(-1, 3) - smoothed[sl_b].reshape(-1, 3)
        return a, b, np.sqrt((d * d).sum(axis=1))

    blocks = []
    if w > 1:
        blocks.append(block(np.s_[:, :-1], np.s_[:, 1:]))  # east
    if h > 1:
        blocks.append(block(np.s_[:-1, :], np.s_[1:, :]))  # south
    if w > 1 and h > 1:
        blocks.append(block(np.s_[:-1, :-1], np.s_[1:, 1:]))  # south-east
        blocks.append(block(np.s_[1:, :-1], np.s_[:-1, 1:]))  # north-east
    if not blocks:
        return (
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.float64),
        )
    ea = np.concatenate([b[0] for b in blocks])
    eb = np.concatenate([b[1] for b in blocks])
    ew = np.concatenate([b[2] for b in blocks])
    return ea, eb, ew


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        parent[x], x = root, parent[x]
    return root


@njit(cache=True)
def _merge_components(order, ea, eb, ew, n, k, min_size):
    parent = np.arange(n, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    thresh = np.full(n, k, dtype=np.float64)

    for i in range(order.shape[0]):
        e = order[i]
        a = _find(parent, ea[e])
        b = _find(parent, eb[e])
        if a != b and ew[e] <= thresh[a] and ew[e] <= thresh[b]:
            parent[b] = a
            size[a] += size[b]
            thresh[a] = ew[e] + k / size[a]

    premerge = 0
    for v in range(n):
        if parent[v] == v:
            premerge += 1

    if min_size > 1:
        for i in range(order.shape[0]):
            e = order[i]
            a = _find(parent, ea[e])
            b = _find(parent, eb[e])
            if a != b and (size[a] < min_size or size[b] < min_size):
                parent[b] = a
                size[a] += size[b]

    roots = np.empty(n, dtype=np.int64)
    for v in range(n):
        roots[v] = _find(parent, v)
    return roots, premerge


def felzenszwalb_segment(
    lab: np.ndarray, k: float = 50.0, sigma: float = 0.5, min_size: int = 50
) -> Segmentation:
    """Partition a Lab image into regions.

    k scales the adaptive merge threshold (larger k gives fewer, larger
    components), sigma is the pre-smoothing stddev in pixels and components
    smaller than min_size are merged away in a final pass. Edges are processed
    in (weight, construction index) order, so results are fully deterministic.
    """
    if k <= 0:
        raise ValueError("k must be positive")
    if min_size < 1:
        raise ValueError("min_size must be at least 1")
    h, w = lab.shape[:2]
    n = h * w
    smoothed = _gaussian_smooth(lab, sigma)
    ea, eb, ew = _grid_edges(smoothed)
    if ew.size == 0:  # single-pixel image
        return Segmentation(np.zeros((h, w), dtype=np.int32), 1, 1)
    order = np.lexsort((np.arange(ew.size), ew))
    roots, premerge = _merge_components(order, ea, eb, ew, n, float(k), int(min_size))

    # Relabel roots to 0..R-1 in order of first appearance (raster scan).
    uniq, first, inverse = np.unique(roots, return_index=True, return_inverse=True)
    rank = np.empty(uniq.size, dtype=np.int32)
    rank[np.argsort(first, kind="stable")] = np.arange(uniq.size, dtype=np.int32)
    labels = rank[inverse].reshape(h, w)
    return Segmentation(labels, int(uniq.size), int(premerge))


def region_stats(seg: Segmentation, color_index: np.ndarray, n_colors: int) -> RegionTable:
    """Per-region size, normalized pixel-center centroid and palette histogram."""
    h, w = seg.labels.shape
    if color_index.shape != (h, w):
        raise ValueError("color index dimensions do not match the segmentation")
    flat = seg.labels.ravel()
    r = seg.n_regions
    sizes = np.bincount(flat, minlength=r).astype(np.int64)

    xs = ((np.arange(w) + 0.5) / w)[None, :].repeat(h, axis=0).ravel()
    ys = ((np.arange(h) + 0.5) / h)[:, None].repeat(w, axis=1).ravel()
    cx = np.bincount(flat, weights=xs, minlength=r) / sizes
    cy = np.bincount(flat, weights=ys, minlength=r) / sizes

    joint = np.bincount(
        flat.astype(np.int64) * n_colors + color_index.ravel().astype(np.int64),
        minlength=r * n_colors,
    ).reshape(r, n_colors)
    histograms = joint / sizes[:, None]
    return RegionTable(sizes=sizes, centroids=np.stack([cx, cy], axis=1), histograms=histograms)


def save_label_png(seg: Segmentation, path) -> None:
    """Debug view: color-code regions with stable hash-derived colors."""
    ids = np.arange(seg.n_regions, dtype=np.uint64)
    mixed = ids * np.uint64(2654435761) % np.uint64(2**32)
    colors = np.stack(
        [
            (mixed >> np.uint64(16)) & np.uint64(0xFF),
            (mixed >> np.uint64(8)) & np.uint64(0xFF),
            mixed & np.uint64(0xFF),
        ],
        axis=1,
    ).astype(np.uint8)
    Image.fromarray(colors[seg.labels], mode="RGB").save(path, format="PNG")
