"""Shape features of a segmented hand: moments, centroid, extreme points.

A frame is summarised by 10 integers: the region centroid followed by the
left, right, top and bottom extreme points of its largest contour, each as
an (x, y) pair. That tuple, optionally tagged with a class label, is the
unit of classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imaging import BinaryMask, Contour, Point, _flood_component


class EmptyRegionError(ValueError):
    """The region behind a contour has no foreground pixels."""


class ZeroMassError(ValueError):
    """Moments describe an empty region, so no centroid exists."""


@dataclass(frozen=True)
class Moments:
    """Zeroth and first spatial moments of a pixel region.

    m00 counts the region's pixels; m10 and m01 are the sums of their x and
    y coordinates.
    """

    m00: int
    m10: int
    m01: int

    def __post_init__(self):
        if self.m00 < 0 or self.m10 < 0 or self.m01 < 0:
            raise ValueError("moments must be non-negative")
        if self.m00 == 0 and (self.m10 or self.m01):
            raise ValueError("an empty region has zero first moments")


@dataclass(frozen=True)
class Centroid:
    """Mean pixel position of a region, kept real-valued until a feature
    vector truncates it."""

    cx: float
    cy: float


@dataclass(frozen=True)
class ExtremePoints:
    """Contour points of minimal/maximal x (left/right) and y (top/bottom)."""

    left: Point
    right: Point
    top: Point
    bottom: Point

    def __post_init__(self):
        if self.left[0] > self.right[0]:
            raise ValueError("left extreme lies right of the right extreme")
        if self.top[1] > self.bottom[1]:
            raise ValueError("top extreme lies below the bottom extreme")


@dataclass(frozen=True)
class FeatureVector:
    """The 10-integer shape descriptor of one frame, plus an optional label.

    Value order: (cx, cy, left_x, left_y, right_x, right_y, top_x, top_y,
    bottom_x, bottom_y).
    """

    values: tuple[int, ...]
    label: str | None = None

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != 10:
            raise ValueError(f"a feature vector has exactly 10 values, got {len(vals)}")
        if any(v < 0 for v in vals):
            raise ValueError("feature values must be non-negative")
        object.__setattr__(self, "values", vals)
        if self.label is not None:
            if not self.label:
                raise ValueError("label must be a non-empty string or None")
            if "," in self.label or "\n" in self.label or "\r" in self.label:
                raise ValueError("labels may not contain commas or line breaks")


def compute_moments(mask: BinaryMask, region: Contour) -> Moments:
    """Moments of the filled 8-connected component whose border is `region`.

    Sums run over every foreground pixel of the component, not just the
    border, so m00 is the component's pixel count.
    """
    x0, y0 = region.points[0]
    bits = mask.bits
    h, w = bits.shape
    if not (0 <= x0 < w and 0 <= y0 < h) or not bits[y0, x0]:
        raise EmptyRegionError(f"contour start {x0, y0} is not a foreground pixel")
    seen = np.zeros((h, w), dtype=bool)
    pixels = _flood_component(bits, seen, x0, y0)
    m10 = sum(x for x, _ in pixels)
    m01 = sum(y for _, y in pixels)
    return Moments(m00=len(pixels), m10=m10, m01=m01)


def centroid(m: Moments) -> Centroid:
    """Centroid (m10/m00, m01/m00) of a region with positive mass."""
    if m.m00 == 0:
        raise ZeroMassError("cannot take the centroid of an empty region")
    return Centroid(cx=m.m10 / m.m00, cy=m.m01 / m.m00)


def centroid_contour_distance(c: Centroid, p: Point) -> float:
    """Euclidean distance from the centroid to one contour point."""
    return math.hypot(c.cx - p[0], c.cy - p[1])


def radial_profile(c: Centroid, contour: Contour) -> np.ndarray:
    """Centroid-to-point distance for every contour point, in contour order."""
    pts = contour.to_array().astype(np.float64)
    return np.hypot(pts[:, 0] - c.cx, pts[:, 1] - c.cy)


def extreme_points(contour: Contour) -> ExtremePoints:
    """Leftmost, rightmost, topmost and bottommost contour points.

    Ties resolve to the first occurrence in contour order, the usual
    first-hit behaviour of argmin/argmax.
    """
    pts = contour.to_array()
    xs, ys = pts[:, 0], pts[:, 1]
    pick = lambda i: (int(pts[i, 0]), int(pts[i, 1]))
    return ExtremePoints(
        left=pick(np.argmin(xs)),
        right=pick(np.argmax(xs)),
        top=pick(np.argmin(ys)),
        bottom=pick(np.argmax(ys)),
    )


def build_feature_vector(
    c: Centroid, e: ExtremePoints, label: str | None = None
) -> FeatureVector:
    """Assemble the 10-value descriptor; the centroid is truncated toward zero."""
    values = (
        int(c.cx), int(c.cy),
        e.left[0], e.left[1],
        e.right[0], e.right[1],
        e.top[0], e.top[1],
        e.bottom[0], e.bottom[1],
    )
    return FeatureVector(values=values, label=label)
