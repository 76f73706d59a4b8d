"""Pixel-level bottom-up saliency: maximum symmetric surround contrast.

Every pixel is compared (in Lab) against the mean of the largest rectangle
around it that is symmetric in both axes and stays inside the image, so border
pixels see a small local surround while central pixels see nearly the whole
image. The comparison value is a slightly blurred version of the pixel itself.
"""

from __future__ import annotations

import numpy as np

from .maps import max_normalize

# 5-tap binomial blur [1, 4, 6, 4, 1] / 16, applied separably with edge clamp.
_BLUR = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0


def integral_image(lab: np.ndarray) -> np.ndarray:
    """(H+1, W+1, C) cumulative sums; entry (y, x) sums the rectangle [0,y) x [0,x)."""
    h, w, c = lab.shape
    out = np.zeros((h + 1, w + 1, c), dtype=np.float64)
    out[1:, 1:] = lab.astype(np.float64).cumsum(axis=0).cumsum(axis=1)
    return out


def box_sum(integral: np.ndarray, x0: int, x1: int, y0: int, y1: int) -> np.ndarray:
    """Channel sums over the pixel rectangle [x0, x1) x [y0, y1)."""
    return integral[y1, x1] - integral[y0, x1] - integral[y1, x0] + integral[y0, x0]


def symmetric_surround_mean(integral: np.ndarray, x: int, y: int) -> np.ndarray:
    """Mean Lab over the largest border-symmetric rectangle centered on (x, y)."""
    h, w = integral.shape[0] - 1, integral.shape[1] - 1
    x_off = min(x, w - 1 - x)
    y_off = min(y, h - 1 - y)
    area = (2 * x_off + 1) * (2 * y_off + 1)
    return box_sum(integral, x - x_off, x + x_off + 1, y - y_off, y + y_off + 1) / area


def _blur_separable(lab: np.ndarray) -> np.ndarray:
    padded = np.pad(lab, ((2, 2), (0, 0), (0, 0)), mode="edge")
    rows = sum(_BLUR[i] * padded[i : i + lab.shape[0]] for i in range(5))
    padded = np.pad(rows, ((0, 0), (2, 2), (0, 0)), mode="edge")
    return sum(_BLUR[i] * padded[:, i : i + lab.shape[1]] for i in range(5))


def msss(lab: np.ndarray) -> np.ndarray:
    """Maximum symmetric surround saliency map, max-normalized to [0, 1].

    Raw value per pixel: squared Lab distance between the symmetric-surround
    mean and the binomially blurred pixel value.
    """
    h, w = lab.shape[:2]
    integral = integral_image(lab)

    xs = np.arange(w)
    ys = np.arange(h)
    x_off = np.minimum(xs, w - 1 - xs)
    y_off = np.minimum(ys, h - 1 - ys)
    x0, x1 = xs - x_off, xs + x_off + 1
    y0, y1 = ys - y_off, ys + y_off + 1

    sums = (
        integral[np.ix_(y1, x1)]
        - integral[np.ix_(y0, x1)]
        - integral[np.ix_(y1, x0)]
        + integral[np.ix_(y0, x0)]
    )
    areas = ((x1 - x0)[None, :] * (y1 - y0)[:, None]).astype(np.float64)
    means = sums / areas[:, :, None]

    diff = means - _blur_separable(lab)
    return max_normalize((diff * diff).sum(axis=2))
