"""Shared saliency-map helpers: normalization, 8-bit quantization, PNG round trips.

A saliency map is a (H, W) float64 array of non-negative values. After
normalization all values lie in [0, 1] and the maximum is exactly 1 unless
the map is identically zero.
"""

from __future__ import annotations

import numpy as np
from PIL import Image


def max_normalize(values: np.ndarray) -> np.ndarray:
    """Scale a non-negative array so its maximum is 1; all-zero stays all-zero."""
    values = np.asarray(values, dtype=np.float64)
    peak = float(values.max()) if values.size else 0.0
    if peak <= 0.0:
        return np.zeros_like(values)
    return values / peak


def quantize_u8(smap: np.ndarray) -> np.ndarray:
    """Quantize a [0, 1] map to 8 bits: round(255 * s)."""
    return np.rint(np.asarray(smap, dtype=np.float64) * 255.0).astype(np.uint8)


def save_map_png(smap: np.ndarray, path) -> None:
    """Write a [0, 1] map as an 8-bit grayscale PNG (lossless)."""
    Image.fromarray(quantize_u8(smap), mode="L").save(path, format="PNG")


def load_map_png(path) -> np.ndarray:
    """Read an 8-bit grayscale PNG back into a [0, 1] float map."""
    with Image.open(path) as img:
        arr = np.asarray(img.convert("L"), dtype=np.float64)
    return arr / 255.0
