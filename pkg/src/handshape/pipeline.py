"""Frame-to-feature wiring shared by the CLI and the demos.

One frame flows through: RGB -> YCbCr -> skin mask -> contours -> largest
contour (area floor applied) -> moments/centroid/extremes -> feature vector.
Frames whose largest skin region is smaller than the area floor are skipped.
"""

from __future__ import annotations

import os
import shutil
from dataclasses import dataclass, field
from pathlib import Path

from .annotate import annotate_frame
from .dataset import FeatureTable
from .features import (
    Centroid,
    ExtremePoints,
    FeatureVector,
    build_feature_vector,
    centroid,
    compute_moments,
    extreme_points,
)
from .frames import FrameDecodeError, read_frame, write_frame
from .imaging import (
    DEFAULT_SKIN_RANGE,
    Contour,
    PixelBuffer,
    SkinRange,
    contour_area,
    largest_contour,
    rgb_to_ycbcr,
    skin_mask,
    trace_contours,
)

FRAME_SUFFIXES = (".ppm", ".png")
DEFAULT_MIN_AREA = 500.0


@dataclass(frozen=True)
class FrameShape:
    """The measured geometry of one frame's dominant skin region."""

    contour: Contour
    center: Centroid
    extremes: ExtremePoints

    def to_feature_vector(self, label: str | None = None) -> FeatureVector:
        return build_feature_vector(self.center, self.extremes, label)


@dataclass
class ExtractionStats:
    """Bookkeeping for a directory run: what produced rows, what did not."""

    frames_seen: int = 0
    rows: int = 0
    skipped: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)


def analyze_frame(
    frame: PixelBuffer,
    skin: SkinRange = DEFAULT_SKIN_RANGE,
    min_area: float = DEFAULT_MIN_AREA,
) -> FrameShape | None:
    """Measure the largest skin region of a frame.

    Returns None when the frame has no skin pixels or its largest contour
    encloses less than `min_area` square pixels.
    """
    mask = skin_mask(rgb_to_ycbcr(frame), skin)
    contours = trace_contours(mask)
    if not contours:
        return None
    region = largest_contour(contours)
    if contour_area(region) < min_area:
        return None
    center = centroid(compute_moments(mask, region))
    return FrameShape(contour=region, center=center, extremes=extreme_points(region))


def list_frame_files(directory: str | os.PathLike) -> list[Path]:
    """Frame files in a directory, in lexicographic filename order."""
    root = Path(directory)
    files = [
        p for p in root.iterdir()
        if p.is_file() and p.suffix.lower() in FRAME_SUFFIXES
    ]
    return sorted(files, key=lambda p: p.name)


def extract_directory(
    directory: str | os.PathLike,
    label: str | None = None,
    skin: SkinRange = DEFAULT_SKIN_RANGE,
    min_area: float = DEFAULT_MIN_AREA,
) -> tuple[FeatureTable, ExtractionStats]:
    """Extract one feature row per qualifying frame, in filename order.

    Undecodable frames are recorded in stats.failures and skipped; frames
    without a qualifying contour only bump stats.skipped.
    """
    stats = ExtractionStats()
    rows: list[FeatureVector] = []
    for path in list_frame_files(directory):
        stats.frames_seen += 1
        try:
            frame = read_frame(path)
        except FrameDecodeError as exc:
            stats.failures.append((str(path), str(exc)))
            continue
        shape = analyze_frame(frame, skin, min_area)
        if shape is None:
            stats.skipped += 1
            continue
        rows.append(shape.to_feature_vector(label))
        stats.rows += 1
    return FeatureTable(rows=tuple(rows)), stats


def annotate_directory(
    in_dir: str | os.PathLike,
    out_dir: str | os.PathLike,
    skin: SkinRange = DEFAULT_SKIN_RANGE,
    min_area: float = DEFAULT_MIN_AREA,
) -> ExtractionStats:
    """Write an annotated copy of every frame into out_dir (same filenames).

    Frames without a qualifying contour are copied through byte-for-byte;
    stats.rows counts annotated frames, stats.skipped the copied ones.
    """
    stats = ExtractionStats()
    out_root = Path(out_dir)
    out_root.mkdir(parents=True, exist_ok=True)
    for path in list_frame_files(in_dir):
        stats.frames_seen += 1
        target = out_root / path.name
        try:
            frame = read_frame(path)
        except FrameDecodeError as exc:
            stats.failures.append((str(path), str(exc)))
            continue
        shape = analyze_frame(frame, skin, min_area)
        if shape is None:
            shutil.copyfile(path, target)
            stats.skipped += 1
            continue
        write_frame(annotate_frame(frame, shape.contour, shape.center, shape.extremes), target)
        stats.rows += 1
    return stats
