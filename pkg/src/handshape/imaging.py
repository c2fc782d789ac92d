"""Color conversion, skin masking, and contour extraction for RGB frames.

Coordinates are image coordinates: x grows right, y grows down, pixel (0, 0)
is the top-left corner. Contour points are (x, y) pairs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

Point = tuple[int, int]


class NoContoursError(ValueError):
    """No contour available, typically a frame without any skin pixels."""


def _as_channel_array(data, what: str) -> np.ndarray:
    arr = np.asarray(data)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"{what} must have shape (height, width, 3), got {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{what} must have positive width and height")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError(f"{what} channel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PixelBuffer:
    """An RGB frame stored row-major as a (height, width, 3) uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _as_channel_array(self.pixels, "PixelBuffer"))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class YCbCrBuffer:
    """A frame in YCbCr space, stored row-major as (height, width, 3) uint8 (Y, Cb, Cr)."""

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _as_channel_array(self.pixels, "YCbCrBuffer"))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True)
class SkinRange:
    """Inclusive per-channel bounds that classify a YCbCr pixel as skin."""

    y_min: int = 0
    y_max: int = 255
    cr_min: int = 133
    cr_max: int = 179
    cb_min: int = 77
    cb_max: int = 127

    def __post_init__(self):
        for lo, hi, name in (
            (self.y_min, self.y_max, "y"),
            (self.cr_min, self.cr_max, "cr"),
            (self.cb_min, self.cb_max, "cb"),
        ):
            if not (0 <= lo <= hi <= 255):
                raise ValueError(f"invalid {name} bounds: [{lo}, {hi}]")


#: Widely used skin-detection box: Y in [0, 255], Cr in [133, 179], Cb in [77, 127].
DEFAULT_SKIN_RANGE = SkinRange()


@dataclass(frozen=True)
class BinaryMask:
    """Per-pixel boolean foreground mask, shape (height, width), True = skin."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.bits, dtype=bool)
        if arr.ndim != 2:
            raise ValueError(f"BinaryMask must have shape (height, width), got {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise ValueError("BinaryMask must have positive width and height")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]


@dataclass(frozen=True)
class Contour:
    """Ordered closed sequence of (x, y) border pixels of one foreground region.

    Consecutive points of a traced contour are 8-connected and the sequence
    wraps around (the last point neighbours the first). A single point is a
    valid degenerate contour. Points may repeat where the border is one pixel
    wide and the walk doubles back.
    """

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple((int(x), int(y)) for x, y in self.points)
        if not pts:
            raise ValueError("a contour needs at least one point")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def to_array(self) -> np.ndarray:
        """Points as an (n, 2) int array with columns (x, y)."""
        return np.array(self.points, dtype=np.int64)


def rgb_to_ycbcr(src: PixelBuffer) -> YCbCrBuffer:
    """Convert an RGB frame to YCbCr (full-range BT.601).

    Y  = 0.299 R + 0.587 G + 0.114 B
    Cb = 128 - 0.168736 R - 0.331264 G + 0.5 B
    Cr = 128 + 0.5 R - 0.418688 G - 0.081312 B

    Each channel is rounded half-up and clamped to [0, 255].
    """
    rgb = src.pixels.astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    y = 0.299 * r + 0.587 * g + 0.114 * b
    cb = 128.0 - 0.168736 * r - 0.331264 * g + 0.5 * b
    cr = 128.0 + 0.5 * r - 0.418688 * g - 0.081312 * b
    out = np.stack([y, cb, cr], axis=-1)
    out = np.clip(np.floor(out + 0.5), 0, 255)
    return YCbCrBuffer(out.astype(np.uint8))


def skin_mask(src: YCbCrBuffer, skin: SkinRange = DEFAULT_SKIN_RANGE) -> BinaryMask:
    """Mark pixels whose (Y, Cr, Cb) values all fall inside the inclusive bounds."""
    y, cb, cr = src.pixels[..., 0], src.pixels[..., 1], src.pixels[..., 2]
    bits = (
        (y >= skin.y_min) & (y <= skin.y_max)
        & (cr >= skin.cr_min) & (cr <= skin.cr_max)
        & (cb >= skin.cb_min) & (cb <= skin.cb_max)
    )
    return BinaryMask(bits)


# Moore neighbourhood in clockwise screen order, starting north.
_DIRS = ((0, -1), (1, -1), (1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1))
_DIR_INDEX = {d: i for i, d in enumerate(_DIRS)}
_WEST = 6


def _flood_component(bits: np.ndarray, seen: np.ndarray, x0: int, y0: int) -> list[Point]:
    """Mark and return all pixels of the 8-connected component containing (x0, y0)."""
    h, w = bits.shape
    seen[y0, x0] = True
    queue = deque([(x0, y0)])
    pixels = []
    while queue:
        x, y = queue.popleft()
        pixels.append((x, y))
        for dx, dy in _DIRS:
            nx, ny = x + dx, y + dy
            if 0 <= nx < w and 0 <= ny < h and bits[ny, nx] and not seen[ny, nx]:
                seen[ny, nx] = True
                queue.append((nx, ny))
    return pixels


def _trace_border(bits: np.ndarray, x0: int, y0: int) -> tuple[Point, ...]:
    """Walk the outer border clockwise from (x0, y0), the component's first
    row-major pixel. Returns the closed walk with the start pixel first.
    """
    h, w = bits.shape

    def is_fg(x: int, y: int) -> bool:
        return 0 <= x < w and 0 <= y < h and bool(bits[y, x])

    def step(x: int, y: int, back: int) -> tuple[int, int, int] | None:
        # Scan the Moore ring clockwise starting just past the backtrack cell.
        for k in range(1, 9):
            d = (back + k) % 8
            nx, ny = x + _DIRS[d][0], y + _DIRS[d][1]
            if is_fg(nx, ny):
                px, py = x + _DIRS[d - 1][0], y + _DIRS[d - 1][1]
                # The previously scanned cell is background and 4-adjacent to
                # the new pixel; it becomes the new backtrack.
                nb = _DIR_INDEX[(px - nx, py - ny)]
                return nx, ny, nb
        return None

    first = step(x0, y0, _WEST)
    if first is None:
        return ((x0, y0),)

    walk = [first]
    state = first
    limit = 8 * h * w
    for _ in range(limit):
        state = step(*state)
        if state == first:
            break
        walk.append(state)
    else:
        raise RuntimeError("border walk failed to close")  # pragma: no cover

    points = [(x, y) for x, y, _ in walk]
    at_start = points.index((x0, y0))
    return tuple(points[at_start:] + points[:at_start])


def trace_contours(mask: BinaryMask) -> list[Contour]:
    """Trace the outer border of every 8-connected foreground component.

    Components are discovered in row-major scan order and each contributes
    exactly one contour, walked clockwise from its first row-major pixel.
    Interior holes are not traced. An empty mask yields an empty list.
    """
    bits = mask.bits
    h, w = bits.shape
    seen = np.zeros((h, w), dtype=bool)
    contours = []
    for y in range(h):
        row = bits[y]
        for x in np.flatnonzero(row & ~seen[y]):
            x = int(x)
            if seen[y, x]:
                continue
            _flood_component(bits, seen, x, y)
            contours.append(Contour(_trace_border(bits, x, y)))
    return contours


def contour_area(c: Contour) -> float:
    """Absolute shoelace (polygon) area of the contour's point sequence.

    This is the area of the polygon through the border pixel centres, not the
    pixel count of the enclosed region: the traced border of a filled 3x3
    square spans a 2x2 polygon and so has area 4, while the region holds 9
    pixels. Contours with fewer than 3 points have zero area.
    """
    pts = c.points
    if len(pts) < 3:
        return 0.0
    total = 0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        total += x0 * y1 - x1 * y0
    return abs(total) / 2.0


def contour_perimeter(c: Contour) -> float:
    """Arc length: Euclidean distance summed over consecutive points, loop closed."""
    pts = c.points
    if len(pts) < 2:
        return 0.0
    return sum(
        math.hypot(x1 - x0, y1 - y0)
        for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1])
    )


def convex_hull(c: Contour) -> Contour:
    """Convex hull of the contour points (monotone chain).

    Returns hull vertices in counter-clockwise order for conventional y-up
    axes, starting from the lexicographically smallest point. Collinear
    points along hull edges are dropped. One or two distinct points are
    returned as-is.
    """
    pts = sorted(set(c.points))
    if len(pts) <= 2:
        return Contour(tuple(pts))

    def cross(o: Point, a: Point, b: Point) -> int:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return Contour(tuple(lower[:-1] + upper[:-1]))


def largest_contour(contours: list[Contour]) -> Contour:
    """The contour with the greatest shoelace area; ties keep the earliest.

    Raises NoContoursError on an empty list, which callers treat as a frame
    with nothing to segment.
    """
    if not contours:
        raise NoContoursError("no contours to choose from")
    best = contours[0]
    best_area = contour_area(best)
    for c in contours[1:]:
        area = contour_area(c)
        if area > best_area:
            best, best_area = c, area
    return best
