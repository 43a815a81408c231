"""Region-of-interest cropping and rescaling to the network input size.

A row or column is blank when the sum of all its channel levels is at
or below blank_level. find_roi returns the tight bounding box of the
non-blank rows and columns; corners are inclusive, so a single bright
pixel yields a 1x1 box.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["Rect", "BlankImageError", "find_roi", "crop", "scale_to_64"]


class BlankImageError(Exception):
    """Raised when an image has no content above the blank level."""


@dataclass(frozen=True)
class Rect:
    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self):
        if self.x1 > self.x2 or self.y1 > self.y2:
            raise ValueError(f"degenerate rect {self}")

    @property
    def width(self) -> int:
        return self.x2 - self.x1 + 1

    @property
    def height(self) -> int:
        return self.y2 - self.y1 + 1


def find_roi(image: np.ndarray, blank_level: int = 0) -> Rect:
    """Tight bounding box of rows/columns whose level sums exceed blank_level."""
    img = np.asarray(image, dtype=np.int64)
    if img.ndim == 2:
        img = img[:, :, None]
    row_sums = img.sum(axis=(1, 2))
    col_sums = img.sum(axis=(0, 2))
    rows = np.nonzero(row_sums > blank_level)[0]
    cols = np.nonzero(col_sums > blank_level)[0]
    if len(rows) == 0 or len(cols) == 0:
        raise BlankImageError(f"no content above blank level {blank_level}")
    return Rect(int(cols[0]), int(rows[0]), int(cols[-1]), int(rows[-1]))


def crop(image: np.ndarray, rect: Rect) -> np.ndarray:
    """Copy the inclusive rectangle; output is rect.width x rect.height."""
    img = np.asarray(image)
    h, w = img.shape[:2]
    if rect.x1 < 0 or rect.y1 < 0 or rect.x2 >= w or rect.y2 >= h:
        raise ValueError(f"rect {rect} outside {w}x{h} image")
    return img[rect.y1:rect.y2 + 1, rect.x1:rect.x2 + 1].copy()


def scale_to_64(image: np.ndarray) -> np.ndarray:
    """Nearest-neighbor resample to 64x64; aspect ratio is not preserved."""
    img = np.asarray(image)
    h, w = img.shape[:2]
    src_y = (np.arange(64) * h) // 64
    src_x = (np.arange(64) * w) // 64
    return img[np.ix_(src_y, src_x)].copy()
