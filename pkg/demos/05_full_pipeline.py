"""The whole pipeline in one sitting: frames -> CSV -> model -> pictures.

Renders three synthetic gesture classes, extracts features, cross-validates,
classifies unseen frames, and writes annotated copies (green contour, red
centroid disk, blue extreme-point rings).

Every step also shows the equivalent `handshape` CLI invocation.

Run:  python3 demos/05_full_pipeline.py
"""

from pathlib import Path

import numpy as np

from handshape import (
    FeatureTable,
    KnnModel,
    PixelBuffer,
    annotate_directory,
    cross_validate,
    extract_directory,
    write_csv,
    write_ppm,
)

OUT = Path(__file__).parent / "output" / "pipeline"
SKIN = (200, 140, 110)

GESTURES = {"open_palm": (24, 24), "flat_clasp": (45, 11), "praying": (11, 45)}
POSES = [(80 + dx, 60 + dy) for dx in (-2, 0, 2) for dy in (-2, 0, 2)]


def gesture_frame(axes, center, size=(160, 120)):
    w, h = size
    ys, xs = np.mgrid[0:h, 0:w]
    inside = ((xs - center[0]) / axes[0]) ** 2 + ((ys - center[1]) / axes[1]) ** 2 <= 1
    pixels = np.zeros((h, w, 3), dtype=np.uint8)
    pixels[inside] = SKIN
    return PixelBuffer(pixels)


# --- 1. render frames and extract features --------------------------------
# CLI: handshape extract --input <dir> --output <csv> --label <gesture>
rows = []
for name, axes in GESTURES.items():
    frame_dir = OUT / "frames" / name
    frame_dir.mkdir(parents=True, exist_ok=True)
    for i, center in enumerate(POSES):
        write_ppm(gesture_frame(axes, center), frame_dir / f"{i:02d}.ppm")
    table, stats = extract_directory(frame_dir, label=name)
    rows.extend(table.rows)
    print(f"extract {name:10s}: {stats.rows} rows, {stats.skipped} skipped")

training = FeatureTable(rows=tuple(rows))
training_csv = OUT / "training.csv"
write_csv(training, training_csv)
print(f"training CSV: {training_csv} ({len(training)} rows)\n")

# --- 2. score the dataset ---------------------------------------------------
# CLI: handshape cross-validate --input training.csv --report report.txt
report = cross_validate(training, k_folds=3, k_neighbors=3, seed=42)
print("cross-validation (3 folds, K=3, seed 42):")
for i, acc in enumerate(report.fold_accuracies, start=1):
    print(f"  fold_{i}_accuracy={acc:.2f}")
print(f"  mean_accuracy={report.mean_accuracy:.2f}\n")

# --- 3. classify unseen frames ----------------------------------------------
# CLI: handshape predict --training training.csv --input <query dir>
query_dir = OUT / "queries"
query_dir.mkdir(parents=True, exist_ok=True)
unseen = {"q_round.ppm": (24, 24), "q_wide.ppm": (45, 11), "q_tall.ppm": (11, 45)}
for fname, axes in unseen.items():
    write_ppm(gesture_frame(axes, center=(81, 59)), query_dir / fname)

queries, _ = extract_directory(query_dir)
model = KnnModel(training=training, k_neighbors=3)
print("predictions for unseen frames:")
for fname, row in zip(sorted(unseen), queries.rows):
    result = model.predict(row.values)
    print(f"  {fname}: {result.label} "
          f"(nearest distance {result.neighbor_distances[0]:.1f})")

# --- 4. draw what the extractor saw ----------------------------------------
# CLI: handshape annotate --input <dir> --output <dir>
annotated = OUT / "annotated"
stats = annotate_directory(OUT / "frames" / "open_palm", annotated)
print(f"\nannotated {stats.rows} open-palm frames into {annotated}")
