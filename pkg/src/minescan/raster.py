"""Binary PPM I/O and channel split/merge.

Images are numpy arrays: RGB images are uint8 of shape (height, width, 3),
grayscale images uint8 of shape (height, width). Row-major, origin at the
top-left, x rightward, y downward.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "RasterError",
    "load_ppm",
    "save_ppm",
    "split_channels",
    "merge_channels",
]


class RasterError(Exception):
    """Raised for malformed or unreadable raster files."""


def _read_header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c.isspace():
            pos += 1
        elif c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    if pos >= n:
        raise RasterError("truncated header")
    start = pos
    while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def load_ppm(path) -> np.ndarray:
    """Load a binary PPM (magic P6, maxval 255) as a (h, w, 3) uint8 array."""
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise RasterError(f"cannot read {path}: {exc}") from exc

    magic, pos = _read_header_token(data, 0)
    if magic != b"P6":
        raise RasterError(f"not a binary PPM (magic {magic!r}, expected b'P6')")
    fields = []
    for _ in range(3):
        tok, pos = _read_header_token(data, pos)
        if not tok.isdigit():
            raise RasterError(f"malformed header field {tok!r}")
        fields.append(int(tok))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise RasterError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise RasterError(f"unsupported maxval {maxval} (only 255)")
    # exactly one whitespace byte separates the header from pixel data
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise RasterError("missing header terminator")
    pos += 1
    need = width * height * 3
    raw = data[pos:pos + need]
    if len(raw) < need:
        raise RasterError(f"truncated pixel data ({len(raw)} of {need} bytes)")
    return np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3).copy()


def save_ppm(image: np.ndarray, path) -> None:
    """Write an RGB image as binary PPM. load_ppm(save_ppm(x)) == x."""
    img = np.asarray(image, dtype=np.uint8)
    if img.ndim != 3 or img.shape[2] != 3:
        raise RasterError(f"expected (h, w, 3) array, got shape {img.shape}")
    h, w = img.shape[:2]
    with open(path, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (w, h))
        fh.write(img.tobytes())


def split_channels(image: np.ndarray):
    """Split an RGB image into (red, green, blue) grayscale images."""
    img = np.asarray(image)
    return img[:, :, 0].copy(), img[:, :, 1].copy(), img[:, :, 2].copy()


def merge_channels(r: np.ndarray, g: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Recombine three equal-size grayscale images into an RGB image."""
    if r.shape != g.shape or g.shape != b.shape:
        raise RasterError(
            f"channel dimensions differ: {r.shape} / {g.shape} / {b.shape}")
    return np.stack([r, g, b], axis=2)
