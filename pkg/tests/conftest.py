import numpy as np
import pytest
from PIL import Image


def make_scene(rng, width, height, obj_color, center, half_size):
    """Noisy background with a solid colored rectangle; returns (rgb, mask)."""
    rgb = rng.integers(70, 110, (height, width, 3), dtype=np.uint8)
    mask = np.zeros((height, width), dtype=bool)
    cx, cy = center
    hw, hh = half_size
    x0, x1 = max(0, cx - hw), min(width, cx + hw)
    y0, y1 = max(0, cy - hh), min(height, cy + hh)
    rgb[y0:y1, x0:x1] = obj_color
    mask[y0:y1, x0:x1] = True
    return rgb, mask


SCENES = [
    ("img_a", (64, 48), (230, 40, 30), (32, 24), (10, 8)),
    ("img_b", (64, 48), (30, 200, 220), (27, 21), (8, 9)),
    ("img_c", (56, 56), (240, 220, 40), (30, 30), (9, 9)),
    ("img_d", (48, 64), (40, 60, 210), (25, 36), (8, 11)),
    ("img_e", (64, 48), (20, 180, 60), (36, 22), (11, 7)),
    ("img_f", (60, 44), (200, 30, 160), (28, 20), (9, 7)),
]


@pytest.fixture(scope="session")
def mini_dataset(tmp_path_factory):
    """Small on-disk benchmark: images/, masks/ and the list of stems."""
    root = tmp_path_factory.mktemp("mini_dataset")
    images = root / "images"
    masks = root / "masks"
    images.mkdir()
    masks.mkdir()
    rng = np.random.default_rng(7)
    stems = []
    for stem, (w, h), color, center, half in SCENES:
        rgb, mask = make_scene(rng, w, h, color, center, half)
        Image.fromarray(rgb, mode="RGB").save(images / f"{stem}.png")
        Image.fromarray(mask.astype(np.uint8) * 255, mode="L").save(masks / f"{stem}.png")
        stems.append(stem)
    return images, masks, stems
