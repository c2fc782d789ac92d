"""Skin segmentation walkthrough.

Builds a synthetic frame with a skin-toned hand blob on a noisy background,
converts it to YCbCr, applies the default skin box (Y 0-255, Cr 133-179,
Cb 77-127), and saves the frame plus a mask visualisation.

Run:  python3 demos/01_skin_segmentation.py
"""

from pathlib import Path

import numpy as np

from handshape import (
    DEFAULT_SKIN_RANGE,
    PixelBuffer,
    SkinRange,
    rgb_to_ycbcr,
    skin_mask,
    write_png,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

rng = np.random.default_rng(42)

# A dim, bluish background with sensor noise...
h, w = 120, 160
pixels = rng.integers(10, 60, size=(h, w, 3)).astype(np.uint8)
pixels[..., 2] += 30

# ...and a skin-toned ellipse standing in for a hand.
ys, xs = np.mgrid[0:h, 0:w]
blob = ((xs - 80) / 38.0) ** 2 + ((ys - 60) / 26.0) ** 2 <= 1.0
skin_tone = np.array([205, 145, 115], dtype=np.uint8)
jitter = rng.integers(-12, 13, size=(h, w, 3))
pixels[blob] = np.clip(skin_tone + jitter, 0, 255).astype(np.uint8)[blob]

frame = PixelBuffer(pixels)
write_png(frame, OUT / "skin_input.png")

converted = rgb_to_ycbcr(frame)
rgb = tuple(int(v) for v in frame.pixels[60, 80])
ycbcr = tuple(int(v) for v in converted.pixels[60, 80])
print(f"center pixel RGB {rgb} -> YCbCr {ycbcr}")

mask = skin_mask(converted, DEFAULT_SKIN_RANGE)
coverage = mask.bits.mean()
print(f"default skin box marks {mask.bits.sum()} pixels ({coverage:.1%} of the frame)")
print(f"ellipse ground truth covers {blob.mean():.1%}")

# The bounds are plain dataclass fields, so a tighter box is one line.
strict = SkinRange(cr_min=150, cr_max=179, cb_min=77, cb_max=115)
strict_mask = skin_mask(converted, strict)
print(f"a tighter Cr/Cb box keeps {strict_mask.bits.sum()} pixels")

# Save the mask as a black/white image for eyeballing.
visual = np.zeros((h, w, 3), dtype=np.uint8)
visual[mask.bits] = (255, 255, 255)
write_png(PixelBuffer(visual), OUT / "skin_mask.png")
print(f"wrote {OUT / 'skin_input.png'} and {OUT / 'skin_mask.png'}")
