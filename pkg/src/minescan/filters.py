"""3x3 noise-reduction filters applied per channel.

Every filter runs on grayscale planes; RGB images are split, filtered
channel by channel, and merged back. Borders use replicate-edge padding.
Weighted masks use exact integer arithmetic with round-half-up division,
so results are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .raster import merge_channels, split_channels

__all__ = [
    "Mask3",
    "MEAN_MASK",
    "GAUSSIAN_MASK",
    "apply_mask3",
    "mean_filter",
    "median_filter",
    "gaussian_filter",
    "filter_rgb",
    "FILTER_KINDS",
]


@dataclass(frozen=True)
class Mask3:
    """A 3x3 integer weight kernel with a positive divisor."""

    weights: tuple  # 9 ints, row-major
    divisor: int

    def __post_init__(self):
        if len(self.weights) != 9:
            raise ValueError("Mask3 needs exactly 9 weights")
        if self.divisor <= 0:
            raise ValueError("divisor must be positive")


MEAN_MASK = Mask3((1, 1, 1, 1, 1, 1, 1, 1, 1), 9)
GAUSSIAN_MASK = Mask3((1, 2, 1, 2, 4, 2, 1, 2, 1), 16)


def mean_mask5() -> tuple:
    """All-ones 5x5 weights with divisor 25, for heavier smoothing."""
    return (1,) * 25, 25


def _neighborhoods(gray: np.ndarray) -> np.ndarray:
    """Stack the 9 replicate-padded 3x3 neighbors, shape (9, h, w)."""
    padded = np.pad(gray, 1, mode="edge")
    h, w = gray.shape
    return np.stack([
        padded[dy:dy + h, dx:dx + w]
        for dy in range(3)
        for dx in range(3)
    ])


def apply_mask3(gray: np.ndarray, mask: Mask3) -> np.ndarray:
    """Weighted 3x3 sum / divisor at every pixel, round half up, clamp."""
    gray = np.asarray(gray, dtype=np.uint8)
    neigh = _neighborhoods(gray).astype(np.int64)
    weights = np.asarray(mask.weights, dtype=np.int64).reshape(9, 1, 1)
    total = (neigh * weights).sum(axis=0)
    d = mask.divisor
    # round half up: floor((2s + d) / (2d)) is exact for integer s
    out = (2 * total + d) // (2 * d)
    return np.clip(out, 0, 255).astype(np.uint8)


def _median3(gray: np.ndarray) -> np.ndarray:
    neigh = _neighborhoods(np.asarray(gray, dtype=np.uint8))
    return np.sort(neigh, axis=0)[4]  # 5th smallest of 9


def _per_channel(image, fn) -> np.ndarray:
    r, g, b = split_channels(image)
    return merge_channels(fn(r), fn(g), fn(b))


def mean_filter(image: np.ndarray) -> np.ndarray:
    """Uniform 3x3 average of each channel."""
    return _per_channel(image, lambda c: apply_mask3(c, MEAN_MASK))


def gaussian_filter(image: np.ndarray) -> np.ndarray:
    """3x3 Gaussian smoothing, weights 1-2-1 / 2-4-2 / 1-2-1 over 16."""
    return _per_channel(image, lambda c: apply_mask3(c, GAUSSIAN_MASK))


def median_filter(image: np.ndarray) -> np.ndarray:
    """3x3 median of each channel; removes impulse noise, keeps edges."""
    return _per_channel(image, _median3)


FILTER_KINDS = {
    "mean": mean_filter,
    "median": median_filter,
    "gaussian": gaussian_filter,
}


def filter_rgb(image: np.ndarray, kind: str) -> np.ndarray:
    """Apply one of the named filters; kind 'none' returns the input."""
    if kind == "none":
        return np.asarray(image)
    try:
        fn = FILTER_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown filter kind {kind!r}") from None
    return fn(image)
