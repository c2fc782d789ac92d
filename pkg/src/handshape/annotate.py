"""Overlay drawing: traced contour, centroid marker, extreme-point markers."""

from __future__ import annotations

import math

import numpy as np

from .features import Centroid, ExtremePoints
from .imaging import Contour, PixelBuffer, Point

CONTOUR_COLOR = (0, 255, 0)
CENTROID_COLOR = (255, 0, 0)
EXTREME_COLOR = (0, 0, 255)
MARKER_RADIUS = 5


def draw_points(pixels: np.ndarray, points, color) -> None:
    """Color individual (x, y) points, ignoring any outside the image."""
    h, w = pixels.shape[:2]
    for x, y in points:
        if 0 <= x < w and 0 <= y < h:
            pixels[y, x] = color


def draw_disk(pixels: np.ndarray, center: Point, radius: int, color) -> None:
    """Fill all pixels within `radius` of the center."""
    cx, cy = center
    h, w = pixels.shape[:2]
    for y in range(max(0, cy - radius), min(h, cy + radius + 1)):
        for x in range(max(0, cx - radius), min(w, cx + radius + 1)):
            if (x - cx) ** 2 + (y - cy) ** 2 <= radius * radius:
                pixels[y, x] = color


def draw_circle(pixels: np.ndarray, center: Point, radius: int, color) -> None:
    """Draw a one-pixel ring at distance `radius` from the center."""
    cx, cy = center
    h, w = pixels.shape[:2]
    for y in range(max(0, cy - radius), min(h, cy + radius + 1)):
        for x in range(max(0, cx - radius), min(w, cx + radius + 1)):
            if abs(math.hypot(x - cx, y - cy) - radius) < 0.5:
                pixels[y, x] = color


def annotate_frame(
    frame: PixelBuffer,
    contour: Contour,
    center: Centroid,
    extremes: ExtremePoints,
) -> PixelBuffer:
    """Return a copy of the frame with the shape overlay drawn on top.

    The contour is traced in green, the centroid becomes a filled red disk,
    and each extreme point gets a blue ring; markers use MARKER_RADIUS.
    """
    pixels = frame.pixels.copy()
    draw_points(pixels, contour.points, CONTOUR_COLOR)
    draw_disk(pixels, (int(center.cx), int(center.cy)), MARKER_RADIUS, CENTROID_COLOR)
    for point in (extremes.left, extremes.right, extremes.top, extremes.bottom):
        draw_circle(pixels, point, MARKER_RADIUS, EXTREME_COLOR)
    return PixelBuffer(pixels)
