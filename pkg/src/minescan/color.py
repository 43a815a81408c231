"""RGB to HSI conversion and the per-pixel hue/saturation feature.

Hue is computed from chromaticity-normalized r, g, b via the arccos
form; intensity never enters the classifier features, which makes them
invariant to uniform brightness changes. Output ranges: H in [0, 360]
degrees, S in [0, 100] percent, I in [0, 255].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "HsiPixel",
    "FeatureParams",
    "normalize_rgb",
    "rgb_to_hsi",
    "hsi_planes",
    "hs_feature",
    "hs_plane",
    "image_to_features",
    "AGGREGATES",
]

AGGREGATES = ("mean", "sum", "weighted")


@dataclass(frozen=True)
class FeatureParams:
    """How per-pixel H/S values combine into network inputs."""
    aggregate: str = "mean"
    hue_weight: float = 0.5
    scale_factor: float = 64.0
    bias: float = 1.0

N_FEATURES = 64 * 64 + 1  # per-pixel features plus one bias entry


class HsiPixel(NamedTuple):
    h: float  # degrees, [0, 360]
    s: float  # percent, [0, 100]
    i: float  # intensity, [0, 255]


def normalize_rgb(pixel) -> tuple:
    """Chromaticity coordinates r, g, b with r+g+b == 1.

    The black pixel (0,0,0) maps to (1/3, 1/3, 1/3), the same point as
    every other achromatic pixel.
    """
    red, green, blue = (float(v) for v in pixel)
    total = red + green + blue
    if total == 0.0:
        return (1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)
    return (red / total, green / total, blue / total)


def _hsi_from_planes(red, green, blue):
    """Core conversion on float arrays; returns (H, S, I) arrays."""
    total = red + green + blue
    safe = np.where(total == 0.0, 1.0, total)
    r = np.where(total == 0.0, 1.0 / 3.0, red / safe)
    g = np.where(total == 0.0, 1.0 / 3.0, green / safe)
    b = np.where(total == 0.0, 1.0 / 3.0, blue / safe)

    num = 0.5 * ((r - g) + (r - b))
    rad = (r - g) ** 2 + (r - b) * (g - b)
    den = np.sqrt(np.maximum(rad, 0.0))
    achromatic = den == 0.0
    arg = np.clip(np.divide(num, den, out=np.ones_like(num), where=~achromatic),
                  -1.0, 1.0)
    h = np.arccos(arg)
    h = np.where(b > g, 2.0 * np.pi - h, h)
    h = np.where(achromatic, 0.0, h)

    s = 1.0 - 3.0 * np.minimum(np.minimum(r, g), b)
    i = total / 765.0
    return np.degrees(h), 100.0 * s, 255.0 * i


def rgb_to_hsi(pixel) -> HsiPixel:
    """Convert one (R, G, B) pixel to HSI."""
    red, green, blue = (np.float64(v) for v in pixel)
    h, s, i = _hsi_from_planes(red, green, blue)
    return HsiPixel(float(h), float(s), float(i))


def hsi_planes(image: np.ndarray):
    """Convert an RGB image to float (H, S, I) planes."""
    img = np.asarray(image, dtype=np.float64)
    return _hsi_from_planes(img[:, :, 0], img[:, :, 1], img[:, :, 2])


def _aggregate(h, s, aggregate: str, hue_weight: float):
    hn = h / 360.0
    sn = s / 100.0
    if aggregate == "mean":
        return 0.5 * (hn + sn)
    if aggregate == "sum":
        return hn + sn
    if aggregate == "weighted":
        return hue_weight * hn + (1.0 - hue_weight) * sn
    raise ValueError(f"unknown aggregate {aggregate!r}")


def hs_feature(pixel, aggregate: str = "mean", hue_weight: float = 0.5) -> float:
    """Single scalar feature from a pixel's hue and saturation.

    'mean' averages the unit-normalized H and S, 'sum' adds them, and
    'weighted' blends them as hue_weight*H + (1-hue_weight)*S.
    """
    h, s, _ = rgb_to_hsi(pixel)
    return float(_aggregate(h, s, aggregate, hue_weight))


def hs_plane(image: np.ndarray, aggregate: str = "mean",
             hue_weight: float = 0.5) -> np.ndarray:
    """Per-pixel feature plane for a whole RGB image."""
    h, s, _ = hsi_planes(image)
    return _aggregate(h, s, aggregate, hue_weight)


def image_to_features(image: np.ndarray, scale_factor: float = 64.0,
                      bias: float = 1.0, aggregate: str = "mean",
                      hue_weight: float = 0.5) -> np.ndarray:
    """Flatten a 64x64 image into the 4,097-entry network input.

    Entries 0..4095 are the row-major per-pixel features divided by
    scale_factor (which keeps the 4,096-term weighted sums inside the
    sigmoid's responsive range); entry 4096 is the constant bias input.
    """
    img = np.asarray(image)
    if img.shape[:2] != (64, 64):
        raise ValueError(f"expected a 64x64 image, got {img.shape[1]}x{img.shape[0]}")
    if scale_factor <= 0:
        raise ValueError("scale_factor must be positive")
    vec = np.empty(N_FEATURES)
    vec[:-1] = hs_plane(img, aggregate, hue_weight).ravel() / scale_factor
    vec[-1] = bias
    return vec
