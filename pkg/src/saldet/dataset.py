"""Benchmark ingestion: image/mask discovery, decoding, and sRGB to CIE Lab.

Images are (H, W, 3) uint8 sRGB arrays, masks are (H, W) bool arrays and Lab
images are (H, W, 3) float64 arrays with L in [0, 100].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image

log = logging.getLogger(__name__)

IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp")

# ITU-R 601-2 luma weights used to collapse RGB masks to gray.
_GRAY_WEIGHTS = np.array([0.299, 0.587, 0.114])

MASK_THRESHOLD = 128  # gray value at or above which a mask pixel counts as salient


class DatasetError(Exception):
    """Fatal dataset problem: missing directory, undecodable file, size mismatch."""


@dataclass(frozen=True)
class DatasetEntry:
    image_path: Path
    mask_path: Path
    stem: str


@dataclass
class DatasetIndex:
    entries: list[DatasetEntry]
    unmatched_images: int  # images that had no mask and were skipped

    def __len__(self) -> int:
        return len(self.entries)

    def stems(self) -> list[str]:
        return [e.stem for e in self.entries]


def _scan_rasters(directory: Path) -> dict[str, Path]:
    # Deterministic: sorted listing, first extension wins on duplicate stems.
    found: dict[str, Path] = {}
    for path in sorted(directory.iterdir()):
        if path.is_file() and path.suffix.lower() in IMAGE_EXTENSIONS:
            if path.stem in found:
                log.warning("duplicate stem %r, keeping %s", path.stem, found[path.stem].name)
                continue
            found[path.stem] = path
    return found


def index_dataset(image_dir, mask_dir) -> DatasetIndex:
    """Pair images with same-stem masks; images lacking a mask are skipped."""
    image_dir, mask_dir = Path(image_dir), Path(mask_dir)
    for d in (image_dir, mask_dir):
        if not d.is_dir():
            raise DatasetError(f"not a directory: {d}")
    images = _scan_rasters(image_dir)
    masks = _scan_rasters(mask_dir)
    entries = [
        DatasetEntry(images[stem], masks[stem], stem)
        for stem in sorted(images)
        if stem in masks
    ]
    unmatched = len(images) - len(entries)
    if unmatched:
        log.warning("%d image(s) without a matching mask were skipped", unmatched)
    return DatasetIndex(entries=entries, unmatched_images=unmatched)


def _decode(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("RGB"))
    except Exception as exc:
        raise DatasetError(f"cannot decode {path}: {exc}") from exc


def load_image(path) -> np.ndarray:
    """Decode any supported raster to (H, W, 3) uint8 sRGB."""
    return _decode(Path(path))


def load_mask(path) -> np.ndarray:
    """Decode a mask raster to (H, W) bool: gray = round(0.299R+0.587G+0.114B) >= 128."""
    rgb = _decode(Path(path))
    gray = np.rint(rgb.astype(np.float64) @ _GRAY_WEIGHTS)
    return gray >= MASK_THRESHOLD


def load_pair(entry: DatasetEntry) -> tuple[np.ndarray, np.ndarray]:
    """Load an (image, mask) pair and check that their dimensions agree."""
    rgb = load_image(entry.image_path)
    mask = load_mask(entry.mask_path)
    if mask.shape != rgb.shape[:2]:
        raise DatasetError(
            f"size mismatch: {entry.image_path} is {rgb.shape[1]}x{rgb.shape[0]} "
            f"but {entry.mask_path} is {mask.shape[1]}x{mask.shape[0]}"
        )
    if mask.all() or not mask.any():
        log.warning("degenerate mask (all %s): %s", bool(mask.flat[0]), entry.mask_path)
    return rgb, mask


# sRGB (D65, 2 degree observer) to XYZ. The white point is taken as the matrix
# row sums so that pure white maps exactly to L=100, a=b=0.
_SRGB_TO_XYZ = np.array(
    [
        [0.41239079926595934, 0.357584339383878, 0.1804807884018343],
        [0.21263900587151027, 0.715168678767756, 0.07219231536073371],
        [0.01933081871559182, 0.11919477979462598, 0.9505321522496607],
    ]
)
_WHITE_POINT = _SRGB_TO_XYZ.sum(axis=1)
_LAB_EPS = (6.0 / 29.0) ** 3
_LAB_SLOPE = 1.0 / (3.0 * (6.0 / 29.0) ** 2)


def srgb_to_lab(srgb: np.ndarray) -> np.ndarray:
    """Convert sRGB values in [0, 1] (..., 3) to CIE Lab via linear RGB and XYZ."""
    s = np.asarray(srgb, dtype=np.float64)
    linear = np.where(s <= 0.04045, s / 12.92, ((s + 0.055) / 1.055) ** 2.4)
    xyz = (linear @ _SRGB_TO_XYZ.T) / _WHITE_POINT
    f = np.where(xyz > _LAB_EPS, np.cbrt(xyz), _LAB_SLOPE * xyz + 4.0 / 29.0)
    lab = np.empty_like(f)
    lab[..., 0] = 116.0 * f[..., 1] - 16.0
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def rgb_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Convert an (H, W, 3) uint8 sRGB image to CIE Lab."""
    return srgb_to_lab(np.asarray(rgb, dtype=np.float64) / 255.0)
