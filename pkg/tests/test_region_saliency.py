import math

import numpy as np
import pytest

from saldet.region_saliency import (
    ColorPalette,
    build_palette,
    color_distance,
    region_color_distance,
    region_contrast,
    spatial_weights,
    weight_sum_field,
)
from saldet.segmentation import RegionTable, Segmentation


def _palette(*lab_colors):
    return ColorPalette(colors=np.array(lab_colors, dtype=np.float64), bins_per_channel=12)


def _table(sizes, centroids, histograms):
    return RegionTable(
        sizes=np.asarray(sizes, dtype=np.int64),
        centroids=np.asarray(centroids, dtype=np.float64),
        histograms=np.asarray(histograms, dtype=np.float64),
    )


# ----------------------------------------------------------------- palette --


def test_palette_keeps_all_distinct_colors_at_full_coverage():
    rgb = np.zeros((3, 4, 3), np.uint8)
    rgb[0] = (10, 10, 10)
    rgb[1] = (120, 120, 120)
    rgb[2] = (240, 240, 240)
    palette, index = build_palette(rgb, bins_per_channel=12, coverage=1.0)
    assert palette.size == 3
    assert len(np.unique(index)) == 3
    # rows are constant-color, so each row maps to a single palette entry
    assert all(len(np.unique(index[r])) == 1 for r in range(3))


def test_channel_binning_boundaries():
    # 250 and 255 share bin 11 of 12; 231 (bin 10) and 235 (bin 11) split.
    same = np.zeros((1, 2, 3), np.uint8)
    same[0, 0, 0], same[0, 1, 0] = 250, 255
    palette, _ = build_palette(same, bins_per_channel=12, coverage=1.0)
    assert palette.size == 1

    split = np.zeros((1, 2, 3), np.uint8)
    split[0, 0, 0], split[0, 1, 0] = 231, 235
    palette, _ = build_palette(split, bins_per_channel=12, coverage=1.0)
    assert palette.size == 2


def test_rare_colors_reassigned_to_dominant():
    rng = np.random.default_rng(0)
    rgb = np.zeros((40, 50, 3), np.uint8)
    rgb[...] = (220, 30, 20)
    # 100 rare pixels, each a different well-separated color
    ys, xs = np.unravel_index(rng.choice(40 * 50, 100, replace=False), (40, 50))
    rgb[ys, xs] = rng.integers(0, 256, (100, 3))
    palette, index = build_palette(rgb, bins_per_channel=12, coverage=0.95)
    assert palette.size == 1
    assert np.all(index == 0)
    # the palette entry is the dominant red in Lab: strongly positive a
    assert palette.colors[0, 1] > 40


def test_palette_parameter_validation():
    rgb = np.zeros((2, 2, 3), np.uint8)
    with pytest.raises(ValueError):
        build_palette(rgb, bins_per_channel=1)
    with pytest.raises(ValueError):
        build_palette(rgb, coverage=0.0)


# ------------------------------------------------------------- color dists --


def test_color_distance_identity_and_axis():
    palette = _palette([0, 0, 0], [100, 0, 0])
    assert color_distance(palette, 0, 0) == 0.0
    assert color_distance(palette, 0, 1) == pytest.approx(100.0, abs=1e-12)


def test_color_distance_euclidean():
    palette = _palette([50, 10, -10], [53, 6, -7])
    expected = math.sqrt(9 + 16 + 9)
    assert color_distance(palette, 0, 1) == pytest.approx(expected, abs=1e-12)
    assert color_distance(palette, 1, 0) == pytest.approx(expected, abs=1e-12)


def test_region_color_distance_cases():
    palette = _palette([0, 0, 0], [60, 20, -30])
    d = color_distance(palette, 0, 1)
    assert region_color_distance(np.array([1.0, 0.0]), np.array([1.0, 0.0]), palette) == 0.0
    assert region_color_distance(np.array([1.0, 0.0]), np.array([0.0, 1.0]), palette) == pytest.approx(d)
    mixed = region_color_distance(np.array([0.5, 0.5]), np.array([1.0, 0.0]), palette)
    assert mixed == pytest.approx(0.5 * d, abs=1e-12)


def test_region_color_distance_matches_double_sum():
    rng = np.random.default_rng(1)
    palette = _palette(*(rng.random((5, 3)) * 80))
    h1 = rng.random(5)
    h1 /= h1.sum()
    h2 = rng.random(5)
    h2 /= h2.sum()
    brute = sum(
        h1[i] * h2[j] * color_distance(palette, i, j) for i in range(5) for j in range(5)
    )
    assert region_color_distance(h1, h2, palette) == pytest.approx(brute, abs=1e-12)


# ---------------------------------------------------------- spatial weights --


def test_spatial_weight_values():
    table = _table([1, 1], [[0.3, 0.5], [0.3, 0.5]], [[1.0], [1.0]])
    w = spatial_weights(table, sigma_sq=0.4)
    assert w.matrix[0, 1] == pytest.approx(1.0)  # coincident centroids

    table = _table([1, 1], [[0.1, 0.5], [0.5, 0.5]], [[1.0], [1.0]])
    w = spatial_weights(table, sigma_sq=0.4)
    assert w.matrix[0, 1] == pytest.approx(math.exp(-1.0), abs=1e-12)


def test_debiased_rows_sum_to_one():
    rng = np.random.default_rng(2)
    for n in (2, 3, 7):
        table = _table(np.ones(n), rng.random((n, 2)), np.eye(n))
        w = spatial_weights(table, sigma_sq=0.4, debiased=True)
        off_diag = w.matrix.sum(axis=1) - np.diag(w.matrix)
        assert np.allclose(off_diag, 1.0, atol=1e-9)


def test_spatial_weights_symmetric_before_debias():
    rng = np.random.default_rng(3)
    table = _table(np.ones(5), rng.random((5, 2)), np.eye(5))
    w = spatial_weights(table, sigma_sq=0.25)
    assert np.allclose(w.matrix, w.matrix.T)
    assert np.all((w.matrix > 0) & (w.matrix <= 1))


def test_spatial_weights_rejects_bad_sigma():
    table = _table([1], [[0.5, 0.5]], [[1.0]])
    with pytest.raises(ValueError):
        spatial_weights(table, sigma_sq=0.0)


# --------------------------------------------------------- region contrast --


def _seg_from_labels(labels):
    labels = np.asarray(labels, dtype=np.int32)
    return Segmentation(labels=labels, n_regions=int(labels.max()) + 1, premerge_regions=0)


def test_single_region_zero_map_flagged():
    seg = _seg_from_labels(np.zeros((4, 4)))
    table = _table([16], [[0.5, 0.5]], [[1.0]])
    palette = _palette([50, 0, 0])
    result = region_contrast(table, spatial_weights(table), palette, seg)
    assert result.single_region
    assert np.all(result.smap == 0.0)


def test_two_region_debiased_scores():
    labels = np.zeros((4, 8), np.int32)
    labels[:, 4:] = 1
    seg = _seg_from_labels(labels)
    palette = _palette([20, 0, 0], [80, 10, -10])
    d = color_distance(palette, 0, 1)
    table = _table([16, 16], [[0.25, 0.5], [0.75, 0.5]], [[1.0, 0.0], [0.0, 1.0]])
    weights = spatial_weights(table, sigma_sq=0.4, debiased=True)
    result = region_contrast(table, weights, palette, seg)
    assert result.scores[0] == pytest.approx(16 * d, abs=1e-9)
    assert result.scores[1] == pytest.approx(16 * d, abs=1e-9)
    assert np.all(result.smap == 1.0)  # equal scores paint to 1 after normalization


def test_two_region_raw_weights_scale_by_falloff():
    labels = np.zeros((4, 8), np.int32)
    labels[:, 4:] = 1
    seg = _seg_from_labels(labels)
    palette = _palette([20, 0, 0], [80, 10, -10])
    table = _table([16, 16], [[0.25, 0.5], [0.75, 0.5]], [[1.0, 0.0], [0.0, 1.0]])
    debiased = region_contrast(table, spatial_weights(table, 0.4, debiased=True), palette, seg)
    raw = region_contrast(table, spatial_weights(table, 0.4, debiased=False), palette, seg)
    falloff = math.exp(-0.5 / 0.4)  # centroid distance 0.5
    assert np.allclose(raw.scores, falloff * debiased.scores, atol=1e-12)
    assert np.allclose(raw.smap, debiased.smap)  # normalization cancels the scale


def test_matrix_pipeline_matches_triple_loop():
    rng = np.random.default_rng(4)
    for n_regions in (2, 3, 5):
        labels = rng.integers(0, n_regions, (16, 16)).astype(np.int32)
        labels.ravel()[: n_regions] = np.arange(n_regions)  # every region nonempty
        seg = _seg_from_labels(labels)
        palette = _palette(*(rng.random((4, 3)) * 100))
        sizes = np.bincount(labels.ravel(), minlength=n_regions)
        centroids = rng.random((n_regions, 2))
        hists = rng.random((n_regions, 4))
        hists /= hists.sum(axis=1, keepdims=True)
        table = _table(sizes, centroids, hists)

        for debiased in (False, True):
            weights = spatial_weights(table, 0.4, debiased=debiased)
            result = region_contrast(table, weights, palette, seg)
            for k in range(n_regions):
                brute = 0.0
                for i in range(n_regions):
                    if i == k:
                        continue
                    dr = sum(
                        hists[k, a] * hists[i, b] * color_distance(palette, a, b)
                        for a in range(4)
                        for b in range(4)
                    )
                    brute += weights.matrix[k, i] * sizes[i] * dr
                assert result.scores[k] == pytest.approx(brute, abs=1e-9)


def test_color_permutation_invariance():
    rng = np.random.default_rng(5)
    labels = np.repeat(np.arange(3, dtype=np.int32), 8).reshape(3, 8)
    seg = _seg_from_labels(labels)
    colors = rng.random((6, 3)) * 90
    hists = rng.random((3, 6))
    hists /= hists.sum(axis=1, keepdims=True)
    table = _table([8, 8, 8], rng.random((3, 2)), hists)
    weights = spatial_weights(table, 0.4, debiased=True)

    base = region_contrast(table, weights, _palette(*colors), seg)
    perm = rng.permutation(6)
    table_p = _table([8, 8, 8], table.centroids, hists[:, perm])
    permuted = region_contrast(table_p, weights, _palette(*colors[perm]), seg)
    assert np.allclose(base.scores, permuted.scores, atol=1e-9)


# --------------------------------------------------------- weight sum field --


def test_weight_sum_field_3x3_center_value():
    field = weight_sum_field(3, 3, sigma_sq=0.4)
    expected = 4 * math.exp(-0.5 / 0.4) + 4 * math.exp(-(0.5 * math.sqrt(2)) / 0.4)
    assert field[1, 1] == pytest.approx(expected, abs=1e-12)


def test_weight_sum_field_center_beats_corners():
    for gw, gh in ((3, 3), (4, 5), (7, 7), (10, 6)):
        field = weight_sum_field(gw, gh, sigma_sq=0.4)
        corners = [field[0, 0], field[0, -1], field[-1, 0], field[-1, -1]]
        center = field[(gh - 1) // 2, (gw - 1) // 2]
        assert all(center > c for c in corners)
        flat_argmax = np.unravel_index(np.argmax(field), field.shape)
        assert flat_argmax[0] in ((gh - 1) // 2, gh // 2)
        assert flat_argmax[1] in ((gw - 1) // 2, gw // 2)


def test_weight_sum_field_validation():
    with pytest.raises(ValueError):
        weight_sum_field(1, 5, 0.4)
    with pytest.raises(ValueError):
        weight_sum_field(3, 3, 0.0)
