"""RGB to HSI conversion and the hue-centered feature vector.

Hue is what survives lighting changes, which is why the classifier
features are built from it: scaling a color's intensity leaves H and S
in place while I tracks the brightness.
"""

import numpy as np

from minescan.color import image_to_features, rgb_to_hsi

for name, rgb in [("red", (255, 0, 0)), ("yellow-ish body", (200, 170, 40)),
                  ("green mark", (120, 200, 40)), ("blue body", (50, 130, 220)),
                  ("violet mark", (140, 90, 220)), ("gray", (128, 128, 128))]:
    h, s, i = rgb_to_hsi(rgb)
    print(f"{name:16s} {str(rgb):16s} H={h:6.1f} S={s:5.1f} I={i:6.1f}")

print("\nintensity scaling: halving a color moves I but not H or S")
for rgb in [(60, 140, 220), (30, 70, 110), (15, 35, 55)]:
    h, s, i = rgb_to_hsi(rgb)
    print(f"  {str(rgb):16s} H={h:6.2f} S={s:5.2f} I={i:6.1f}")

# a feature vector: one hue-derived number per pixel of a 64x64 tile,
# then a trailing bias entry, all divided by the scale factor
tile = np.zeros((64, 64, 3), dtype=np.uint8)
tile[16:48, 16:48] = (50, 130, 220)
vec = image_to_features(tile, scale_factor=96.0, bias=1.0,
                        aggregate="weighted", hue_weight=1.0)
print(f"\nfeature vector length {len(vec)} (64*64 pixels + bias)")
print(f"  black pixel -> {vec[0]:.5f}, blue pixel -> {vec[64 * 20 + 20]:.5f}, "
      f"bias -> {vec[-1]}")
