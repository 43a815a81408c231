"""End-to-end orchestration: training sets, classification, annotation.

Both directions share the same front end: filter the scene, segment it,
extract one image per cluster, then crop, rescale, and convert each
object to a feature vector. The background cluster (largest membership
with a region of interest covering more than 80% of the frame) is never
classified; clusters that come out entirely black are skipped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .color import FeatureParams, image_to_features
from .filters import filter_rgb
from .mlp import Network, Sample, forward
from .roi import BlankImageError, Rect, crop, find_roi, scale_to_64
from .segment import SegParams, SegmentResult, extract_objects, kmeans_segment

__all__ = [
    "ClassSpec",
    "Detection",
    "PipelineError",
    "correlation_factor",
    "build_training_set",
    "classify_scene",
    "annotate",
    "format_report",
]


class PipelineError(Exception):
    pass


@dataclass(frozen=True)
class ClassSpec:
    class_index: int
    name: str


@dataclass(frozen=True)
class Detection:
    class_index: int
    correlation_factor: float   # percent, 100 * winning activation
    rect: Rect                  # in source-image coordinates
    raw_output: np.ndarray

    def __post_init__(self):
        if self.class_index != int(np.argmax(self.raw_output)):
            raise ValueError("class_index must be the argmax of raw_output")
        if self.correlation_factor != 100.0 * float(self.raw_output[self.class_index]):
            raise ValueError("correlation_factor inconsistent with raw_output")


def correlation_factor(raw_output, class_index: int) -> float:
    """Percent proximity of an output vector to the one-hot target."""
    raw = np.asarray(raw_output, dtype=np.float64)
    if not 0 <= class_index < len(raw):
        raise IndexError(f"class index {class_index} out of range")
    return 100.0 * float(raw[class_index])


def _segment_scene(image, filter_kind: str, seg: SegParams):
    filtered = filter_rgb(image, filter_kind)
    result = kmeans_segment(filtered, seg.threshold, seg.max_iter,
                            seg.spatial_weight, seg.max_k)
    return filtered, result


def _background_cluster(result: SegmentResult, objects, blank_level: int):
    """Index of the background cluster, or None.

    Background is the cluster with the most member pixels, provided its
    content bounding box covers more than 80% of the frame.
    """
    counts = np.bincount(result.labels.ravel(), minlength=result.k)
    biggest = int(counts.argmax())
    frame_h, frame_w = result.labels.shape
    try:
        r = find_roi(objects[biggest], blank_level)
    except BlankImageError:
        return biggest  # an all-black biggest cluster is background too
    if r.width * r.height > 0.8 * frame_w * frame_h:
        return biggest
    return None


def _object_features(obj_image, blank_level: int, feat: FeatureParams):
    """ROI rect and feature vector for one extracted object image."""
    rect = find_roi(obj_image, blank_level)
    tile = scale_to_64(crop(obj_image, rect))
    vec = image_to_features(tile, feat.scale_factor, feat.bias,
                            feat.aggregate, feat.hue_weight)
    return rect, vec


def build_training_set(labeled, filter_kind: str, seg: SegParams,
                       feat: FeatureParams, blank_level: int = 0,
                       n_classes: int | None = None) -> list:
    """Samples from labeled scenes: one per image, largest object wins.

    `labeled` is a sequence of (image, class_index [, context]) where the
    optional context string (a filename, say) improves error messages.
    """
    if n_classes is None:
        n_classes = max(entry[1] for entry in labeled) + 1
    samples = []
    for entry in labeled:
        image, class_index = entry[0], entry[1]
        context = entry[2] if len(entry) > 2 else f"image {len(samples)}"
        filtered, result = _segment_scene(image, filter_kind, seg)
        objects = extract_objects(filtered, result)
        background = _background_cluster(result, objects, blank_level)
        counts = np.bincount(result.labels.ravel(), minlength=result.k)
        best, best_count = None, 0
        for j in range(result.k):
            if j == background:
                continue
            if counts[j] > best_count:
                try:
                    find_roi(objects[j], blank_level)
                except BlankImageError:
                    continue
                best, best_count = j, counts[j]
        if best is None:
            raise PipelineError(f"{context}: segmentation found no object")
        _, vec = _object_features(objects[best], blank_level, feat)
        desired = np.zeros(n_classes)
        desired[class_index] = 1.0
        samples.append(Sample(vec, desired))
    return samples


def classify_scene(net: Network, image, filter_kind: str, seg: SegParams,
                   feat: FeatureParams, blank_level: int = 0) -> list:
    """Detections for every non-background object in a scene."""
    filtered, result = _segment_scene(image, filter_kind, seg)
    objects = extract_objects(filtered, result)
    background = _background_cluster(result, objects, blank_level)
    detections = []
    for j in range(result.k):
        if j == background:
            continue
        try:
            rect, vec = _object_features(objects[j], blank_level, feat)
        except BlankImageError:
            continue
        raw = forward(net, vec)[-1]
        ci = int(np.argmax(raw))
        detections.append(Detection(ci, correlation_factor(raw, ci), rect, raw))
    return detections


def annotate(image, detections) -> np.ndarray:
    """Copy of the scene with a 1-pixel red border at each detection."""
    out = np.asarray(image).copy()
    red = (255, 0, 0)
    for det in detections:
        r = det.rect
        out[r.y1, r.x1:r.x2 + 1] = red
        out[r.y2, r.x1:r.x2 + 1] = red
        out[r.y1:r.y2 + 1, r.x1] = red
        out[r.y1:r.y2 + 1, r.x2] = red
    return out


def format_report(detections, class_names=None) -> str:
    """One tab-separated line per detection: name, factor, box corners."""
    lines = []
    for det in detections:
        if class_names and det.class_index < len(class_names):
            name = class_names[det.class_index]
        else:
            name = f"class{det.class_index}"
        r = det.rect
        lines.append(f"{name}\t{det.correlation_factor:.1f}\t"
                     f"{r.x1} {r.y1} {r.x2} {r.y2}")
    return "\n".join(lines) + ("\n" if lines else "")
