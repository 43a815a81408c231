"""SCS-seeded K-means segmentation in joint color/position space.

Every pixel is a 5-D point (R, G, B, X, Y). Seeds come from the Simple
Cluster-Seeking scan: walking the image row-major, a pixel becomes a new
seed exactly when its distance to every existing seed exceeds the
threshold. K-means then alternates nearest-centroid assignment and
centroid means until labels stop changing. The module is fully
deterministic, so identical inputs always segment identically.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SegParams",
    "SegmentResult",
    "distance5",
    "scs_seeds",
    "assign_pixels",
    "update_centroids",
    "kmeans_segment",
    "extract_objects",
    "label_palette",
]


@dataclass(frozen=True)
class SegParams:
    threshold: float = 85.0
    spatial_weight: float = 1.0
    max_iter: int = 100
    max_k: int = 32


@dataclass
class SegmentResult:
    labels: np.ndarray      # (h, w) cluster index per pixel
    centroids: np.ndarray   # (k, 5) means over (R, G, B, X, Y)
    iterations: int
    converged: bool

    @property
    def k(self) -> int:
        return len(self.centroids)


def _points5(image: np.ndarray) -> np.ndarray:
    """Flatten an RGB image to (n, 5) rows of (R, G, B, X, Y)."""
    img = np.asarray(image, dtype=np.float64)
    h, w = img.shape[:2]
    yy, xx = np.mgrid[0:h, 0:w]
    return np.column_stack([
        img.reshape(-1, 3),
        xx.ravel().astype(np.float64),
        yy.ravel().astype(np.float64),
    ])


def _scale_spatial(points: np.ndarray, spatial_weight: float) -> np.ndarray:
    scaled = points.copy()
    scaled[:, 3:] *= spatial_weight
    return scaled


def distance5(point, centroid, spatial_weight: float = 1.0) -> float:
    """Euclidean distance over (R, G, B, w*X, w*Y)."""
    diff = np.asarray(point, dtype=np.float64) - np.asarray(centroid, dtype=np.float64)
    diff[3:] *= spatial_weight
    return float(np.sqrt(diff @ diff))


def scs_seeds(image: np.ndarray, threshold: float,
              spatial_weight: float = 1.0, max_k: int = 32) -> np.ndarray:
    """Simple Cluster-Seeking seed selection, returns (k, 5) seed points.

    The first pixel always seeds. Each later pixel seeds iff its
    distance to all current seeds exceeds the threshold; k is capped at
    max_k. Implemented as an incremental minimum-distance sweep, which
    selects exactly the same pixels as the literal row-major scan.
    """
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    pts = _points5(image)
    scaled = _scale_spatial(pts, spatial_weight)
    seed_idx = [0]
    mind = np.linalg.norm(scaled - scaled[0], axis=1)
    while len(seed_idx) < max_k:
        candidates = mind > threshold
        if not candidates.any():
            break
        idx = int(np.argmax(candidates))  # first row-major qualifier
        seed_idx.append(idx)
        np.minimum(mind, np.linalg.norm(scaled - scaled[idx], axis=1), out=mind)
    return pts[seed_idx].copy()


def _squared_distances(scaled_pts: np.ndarray, centroids: np.ndarray,
                       spatial_weight: float) -> np.ndarray:
    """(n, k) squared distances between scaled points and raw centroids."""
    cents = np.asarray(centroids, dtype=np.float64)
    scaled_cents = cents.copy()
    scaled_cents[:, 3:] *= spatial_weight
    d2 = np.empty((len(scaled_pts), len(cents)))
    for j, c in enumerate(scaled_cents):
        diff = scaled_pts - c
        d2[:, j] = np.einsum("ij,ij->i", diff, diff)
    return d2


def assign_pixels(image: np.ndarray, centroids: np.ndarray,
                  spatial_weight: float = 1.0) -> np.ndarray:
    """Label every pixel with its nearest centroid (ties: lowest index)."""
    if len(centroids) < 1:
        raise ValueError("need at least one centroid")
    h, w = np.asarray(image).shape[:2]
    scaled = _scale_spatial(_points5(image), spatial_weight)
    d2 = _squared_distances(scaled, centroids, spatial_weight)
    return d2.argmin(axis=1).astype(np.int32).reshape(h, w)


def update_centroids(image: np.ndarray, labels: np.ndarray, k: int,
                     spatial_weight: float = 1.0) -> np.ndarray:
    """Componentwise member means; empty clusters re-seed at the worst-fit pixel."""
    pts = _points5(image)
    flat = np.asarray(labels).ravel()
    cents = np.zeros((k, 5))
    empty = []
    for j in range(k):
        members = flat == j
        if members.any():
            cents[j] = pts[members].mean(axis=0)
        else:
            empty.append(j)
    if empty:
        scaled = _scale_spatial(pts, spatial_weight)
        occupied = [j for j in range(k) if j not in empty]
        for j in empty:
            if occupied:
                d2 = _squared_distances(scaled, cents[occupied], spatial_weight)
                worst = int(d2.min(axis=1).argmax())
            else:
                worst = 0
            cents[j] = pts[worst]
            occupied.append(j)
    return cents


def kmeans_segment(image: np.ndarray, threshold: float = 85.0,
                   max_iter: int = 100, spatial_weight: float = 1.0,
                   max_k: int = 32) -> SegmentResult:
    """Segment an image: SCS seeds, then assign/update until stable."""
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    seeds = scs_seeds(image, threshold, spatial_weight, max_k)
    k = len(seeds)
    labels = assign_pixels(image, seeds, spatial_weight)
    centroids = seeds
    converged = False
    iterations = 0
    for _ in range(max_iter):
        iterations += 1
        centroids = update_centroids(image, labels, k, spatial_weight)
        new_labels = assign_pixels(image, centroids, spatial_weight)
        if np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
    return SegmentResult(labels, centroids, iterations, converged)


def extract_objects(image: np.ndarray, result: SegmentResult) -> list:
    """One full-size image per cluster: member pixels kept, rest black."""
    img = np.asarray(image)
    out = []
    for j in range(result.k):
        obj = np.zeros_like(img)
        mask = result.labels == j
        obj[mask] = img[mask]
        out.append(obj)
    return out


def label_palette(k: int) -> np.ndarray:
    """k visually distinct RGB colors for label-map rendering."""
    colors = []
    for j in range(k):
        r, g, b = colorsys.hsv_to_rgb(j / max(k, 1), 1.0, 1.0)
        colors.append((int(255 * r), int(255 * g), int(255 * b)))
    return np.array(colors, dtype=np.uint8)
