import numpy as np
import pytest

from minescan.filters import (FILTER_KINDS, GAUSSIAN_MASK, MEAN_MASK, Mask3,
                              apply_mask3, filter_rgb, gaussian_filter,
                              mean_filter, median_filter)


def _clamp(v, lo, hi):
    return max(lo, min(hi, v))


def _reference_mask(gray, weights, divisor):
    """Brute-force 3x3 weighted filter: replicate edges, round half up."""
    h, w = gray.shape
    out = np.zeros_like(gray)
    for y in range(h):
        for x in range(w):
            total = 0
            i = 0
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    yy = _clamp(y + dy, 0, h - 1)
                    xx = _clamp(x + dx, 0, w - 1)
                    total += weights[i] * int(gray[yy, xx])
                    i += 1
            out[y, x] = min(255, (2 * total + divisor) // (2 * divisor))
    return out


def _reference_median(gray):
    h, w = gray.shape
    out = np.zeros_like(gray)
    for y in range(h):
        for x in range(w):
            vals = []
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    yy = _clamp(y + dy, 0, h - 1)
                    xx = _clamp(x + dx, 0, w - 1)
                    vals.append(int(gray[yy, xx]))
            out[y, x] = sorted(vals)[4]
    return out


def _reference_rgb(image, fn):
    out = np.zeros_like(image)
    for c in range(3):
        out[:, :, c] = fn(image[:, :, c])
    return out


def test_filters_match_reference():
    rng = np.random.default_rng(1234)
    for _ in range(12):
        h = int(rng.integers(1, 12))
        w = int(rng.integers(1, 12))
        img = rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
        mean_ref = _reference_rgb(img, lambda g: _reference_mask(g, [1] * 9, 9))
        gauss_ref = _reference_rgb(
            img, lambda g: _reference_mask(g, [1, 2, 1, 2, 4, 2, 1, 2, 1], 16))
        med_ref = _reference_rgb(img, _reference_median)
        assert (mean_filter(img) == mean_ref).all()
        assert (gaussian_filter(img) == gauss_ref).all()
        assert (median_filter(img) == med_ref).all()


def test_rounding_half_up():
    # center pixel 6, zeros around: gaussian sum 24/16 = 1.5, rounds to 2
    img = np.zeros((3, 3), dtype=np.uint8)
    img[1, 1] = 6
    out = apply_mask3(img, GAUSSIAN_MASK)
    assert out[1, 1] == 2
    # mean of one 4 in nine pixels is 4/9 = 0.44, rounds down
    img = np.zeros((3, 3), dtype=np.uint8)
    img[1, 1] = 4
    assert apply_mask3(img, MEAN_MASK)[1, 1] == 0
    img[1, 1] = 5   # 5/9 = 0.56, rounds up
    assert apply_mask3(img, MEAN_MASK)[1, 1] == 1


def test_identity_mask():
    mask = Mask3((0, 0, 0, 0, 1, 0, 0, 0, 0), 1)
    rng = np.random.default_rng(5)
    img = rng.integers(0, 256, size=(7, 9), dtype=np.uint8)
    assert (apply_mask3(img, mask) == img).all()


def test_uniform_image_fixed_point():
    img = np.full((6, 6, 3), 173, dtype=np.uint8)
    for kind in ("mean", "gaussian", "median"):
        assert (filter_rgb(img, kind) == img).all()


def test_replicate_padding_on_single_pixel():
    img = np.full((1, 1), 200, dtype=np.uint8)
    assert apply_mask3(img, MEAN_MASK)[0, 0] == 200
    assert apply_mask3(img, GAUSSIAN_MASK)[0, 0] == 200


def test_filter_rgb_kinds():
    img = np.zeros((4, 4, 3), dtype=np.uint8)
    assert set(FILTER_KINDS) == {"mean", "median", "gaussian"}
    assert (filter_rgb(img, "none") == img).all()
    with pytest.raises(ValueError):
        filter_rgb(img, "blur")


def test_mask_validation():
    with pytest.raises(ValueError):
        Mask3((1, 1, 1), 3)
    with pytest.raises(ValueError):
        Mask3((1,) * 9, 0)


def test_output_dtype_and_shape():
    rng = np.random.default_rng(9)
    img = rng.integers(0, 256, size=(11, 4, 3), dtype=np.uint8)
    for kind in ("mean", "median", "gaussian"):
        out = filter_rgb(img, kind)
        assert out.dtype == np.uint8
        assert out.shape == img.shape
