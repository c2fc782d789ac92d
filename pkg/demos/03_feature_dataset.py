"""From frames to a labelled CSV dataset.

Renders a few synthetic gesture frames per class, extracts one 10-integer
feature row per frame (centroid + left/right/top/bottom extremes), writes
everything to CSV, reads it back, and shows min-max normalization.

Run:  python3 demos/03_feature_dataset.py
"""

from pathlib import Path

import numpy as np

from handshape import (
    FeatureTable,
    PixelBuffer,
    apply_normalization,
    extract_directory,
    fit_normalization,
    read_csv,
    write_csv,
    write_ppm,
)

OUT = Path(__file__).parent / "output"
SKIN = (200, 140, 110)  # lands at YCbCr (155, 103, 160), inside the default box


def gesture_frame(axes, center=(80, 60), size=(160, 120)):
    w, h = size
    ys, xs = np.mgrid[0:h, 0:w]
    inside = ((xs - center[0]) / axes[0]) ** 2 + ((ys - center[1]) / axes[1]) ** 2 <= 1
    pixels = np.zeros((h, w, 3), dtype=np.uint8)
    pixels[inside] = SKIN
    return PixelBuffer(pixels)


# Three gestures told apart purely by silhouette proportions.
gestures = {"open palm": (24, 24), "flat clasp": (45, 11), "praying": (11, 45)}

rows = []
for name, axes in gestures.items():
    frame_dir = OUT / "frames" / name.replace(" ", "_")
    frame_dir.mkdir(parents=True, exist_ok=True)
    for i, (dx, dy) in enumerate([(0, 0), (-3, 1), (2, -2), (1, 3)]):
        write_ppm(gesture_frame(axes, center=(80 + dx, 60 + dy)), frame_dir / f"{i:02d}.ppm")
    table, stats = extract_directory(frame_dir, label=name, min_area=200)
    print(f"{name:11s}: {stats.rows} rows from {stats.frames_seen} frames")
    rows.extend(table.rows)

dataset = FeatureTable(rows=tuple(rows))
csv_path = OUT / "gesture_features.csv"
write_csv(dataset, csv_path)
print(f"\nwrote {len(dataset)} rows to {csv_path}")
print("classes:", ", ".join(dataset.class_names))

back = read_csv(csv_path)
assert back == dataset
print("read back identical:", back == dataset)
print("first row:", back.rows[0].values, "->", back.rows[0].label)

# Min-max scaling maps every fitted column into [0, 1].
params = fit_normalization(back)
scaled = apply_normalization(back, params)
print("\ncolumn ranges before scaling:")
print("  mins:", [int(v) for v in params.mins])
print("  maxs:", [int(v) for v in params.maxs])
print(f"scaled value range: [{scaled.min():.3f}, {scaled.max():.3f}]")
