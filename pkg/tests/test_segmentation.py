import numpy as np
import pytest

from saldet.segmentation import Segmentation, felzenszwalb_segment, region_stats, save_label_png


def lab_const(h, w, lightness=50.0):
    lab = np.zeros((h, w, 3))
    lab[..., 0] = lightness
    return lab


def random_lab(rng, h, w, scale=100.0):
    lab = np.zeros((h, w, 3))
    lab[..., 0] = rng.random((h, w)) * scale
    lab[..., 1] = rng.random((h, w)) * scale - scale / 2
    lab[..., 2] = rng.random((h, w)) * scale - scale / 2
    return lab


def test_constant_image_single_region():
    for k in (1.0, 50.0, 500.0):
        seg = felzenszwalb_segment(lab_const(9, 13), k=k, sigma=0.0, min_size=1)
        assert seg.n_regions == 1
        assert np.all(seg.labels == 0)


def test_two_halves_give_two_regions():
    # Hand-run: intra-half edges weigh 0 and merge everything; the boundary
    # edges weigh 100 in L, far above the adaptive threshold k/50 = 1.
    lab = lab_const(10, 10, 0.0)
    lab[:, 5:, 0] = 100.0
    seg = felzenszwalb_segment(lab, k=50.0, sigma=0.0, min_size=1)
    assert seg.n_regions == 2
    assert np.all(seg.labels[:, :5] == 0)
    assert np.all(seg.labels[:, 5:] == 1)


def test_min_size_whole_image_forces_one_region():
    rng = np.random.default_rng(0)
    lab = random_lab(rng, 8, 12)
    seg = felzenszwalb_segment(lab, k=10.0, sigma=0.0, min_size=8 * 12)
    assert seg.n_regions == 1


def test_partition_property():
    rng = np.random.default_rng(1)
    lab = random_lab(rng, 14, 11)
    seg = felzenszwalb_segment(lab, k=30.0, sigma=0.5, min_size=4)
    counts = np.bincount(seg.labels.ravel(), minlength=seg.n_regions)
    assert counts.sum() == 14 * 11
    assert np.all(counts > 0)
    assert seg.labels.min() == 0 and seg.labels.max() == seg.n_regions - 1


def test_premerge_components_monotone_in_k():
    rng = np.random.default_rng(2)
    for _ in range(8):
        lab = random_lab(rng, 10, 10, scale=60.0)
        premerge = [
            felzenszwalb_segment(lab, k=k, sigma=0.0, min_size=1).premerge_regions
            for k in (5.0, 20.0, 80.0, 320.0)
        ]
        assert all(a >= b for a, b in zip(premerge, premerge[1:]))


def test_determinism_across_runs():
    rng = np.random.default_rng(3)
    lab = random_lab(rng, 16, 16)
    first = felzenszwalb_segment(lab, k=25.0, sigma=0.8, min_size=5)
    second = felzenszwalb_segment(lab, k=25.0, sigma=0.8, min_size=5)
    assert np.array_equal(first.labels, second.labels)
    assert first.premerge_regions == second.premerge_regions


def test_parameter_validation():
    with pytest.raises(ValueError):
        felzenszwalb_segment(lab_const(4, 4), k=0.0)
    with pytest.raises(ValueError):
        felzenszwalb_segment(lab_const(4, 4), min_size=0)


def test_single_pixel_image():
    seg = felzenszwalb_segment(lab_const(1, 1), k=50.0)
    assert seg.n_regions == 1 and seg.labels.shape == (1, 1)


# ------------------------------------------------------------ region stats --


def _manual_segmentation(labels):
    labels = np.asarray(labels, dtype=np.int32)
    n = int(labels.max()) + 1
    return Segmentation(labels=labels, n_regions=n, premerge_regions=n)


def test_full_image_region_centroid_is_center():
    seg = _manual_segmentation(np.zeros((7, 11), np.int32))
    table = region_stats(seg, np.zeros((7, 11), np.int32), n_colors=1)
    assert np.allclose(table.centroids[0], [0.5, 0.5])
    assert table.sizes[0] == 77


def test_single_pixel_region_pixel_center_convention():
    labels = np.zeros((10, 10), np.int32)
    labels[0, 0] = 1
    # region 1 is the lone pixel at (x=0, y=0)
    seg = Segmentation(labels=labels, n_regions=2, premerge_regions=2)
    table = region_stats(seg, np.zeros((10, 10), np.int32), n_colors=1)
    assert np.allclose(table.centroids[1], [0.05, 0.05])
    assert table.sizes[1] == 1


def test_degenerate_histogram():
    labels = np.zeros((3, 3), np.int32)
    labels[0, :3] = 1
    colors = np.zeros((3, 3), np.int32)
    colors[0, :3] = 7
    seg = Segmentation(labels=labels, n_regions=2, premerge_regions=2)
    table = region_stats(seg, colors, n_colors=9)
    assert table.histograms[1, 7] == 1.0
    assert table.histograms[1].sum() == pytest.approx(1.0, abs=1e-12)
    assert np.count_nonzero(table.histograms[1]) == 1


def test_histograms_sum_to_one_and_sizes_partition():
    rng = np.random.default_rng(4)
    lab = random_lab(rng, 12, 9)
    seg = felzenszwalb_segment(lab, k=20.0, sigma=0.0, min_size=3)
    colors = rng.integers(0, 5, (12, 9)).astype(np.int32)
    table = region_stats(seg, colors, n_colors=5)
    assert table.sizes.sum() == 12 * 9
    assert np.allclose(table.histograms.sum(axis=1), 1.0, atol=1e-9)
    assert np.all((table.centroids >= 0) & (table.centroids <= 1))


def test_region_stats_rejects_mismatched_dims():
    seg = _manual_segmentation(np.zeros((4, 4), np.int32))
    with pytest.raises(ValueError):
        region_stats(seg, np.zeros((4, 5), np.int32), n_colors=1)


def test_label_png_export(tmp_path):
    rng = np.random.default_rng(5)
    seg = felzenszwalb_segment(random_lab(rng, 10, 10), k=20.0, sigma=0.0, min_size=2)
    out = tmp_path / "labels.png"
    save_label_png(seg, out)
    assert out.stat().st_size > 0
