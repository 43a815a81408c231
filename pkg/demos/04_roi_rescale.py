"""Bounding-box crop and the fixed 64x64 rescale.

The classifier wants every object on the same canvas, so a cutout is
first tightened to its content box, then resampled to 64x64 with
nearest-neighbor index maps.
"""

import numpy as np

from minescan.roi import crop, find_roi, scale_to_64

img = np.zeros((40, 50, 3), dtype=np.uint8)
img[12:30, 8:41] = (50, 130, 220)          # a wide plate, off center

rect = find_roi(img, blank_level=0)
print(f"content box: ({rect.x1}, {rect.y1}) .. ({rect.x2}, {rect.y2}) "
      f"-> {rect.width}x{rect.height}")

tight = crop(img, rect)
print(f"cropped shape: {tight.shape}")

tile = scale_to_64(tight)
print(f"rescaled shape: {tile.shape}")
# rows map back to source rows by (row * src_h) // 64
src_rows = sorted({(r * tight.shape[0]) // 64 for r in range(64)})
print(f"64 output rows sample {len(src_rows)} distinct source rows")

# blank images are refused rather than guessed at
try:
    find_roi(np.zeros((8, 8, 3), dtype=np.uint8), 0)
except Exception as exc:
    print(f"blank input -> {type(exc).__name__}: {exc}")
