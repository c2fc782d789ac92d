"""Contour tracing and the shape features derived from it.

Traces the borders of a two-blob mask, then reports per-contour area,
perimeter, convex hull, image moments, centroid, extreme points and the
centroid-to-border distance profile.

Run:  python3 demos/02_contours_and_features.py
"""

import numpy as np

from handshape import (
    BinaryMask,
    centroid,
    compute_moments,
    contour_area,
    contour_perimeter,
    convex_hull,
    extreme_points,
    largest_contour,
    radial_profile,
    trace_contours,
)

# A hand-ish blob (disk plus a finger) and a small speck of noise.
h, w = 80, 100
ys, xs = np.mgrid[0:h, 0:w]
bits = (xs - 45) ** 2 + (ys - 45) ** 2 <= 20 ** 2
bits |= (np.abs(xs - 45) <= 4) & (ys >= 12) & (ys <= 45)  # the "finger"
bits[10, 85] = True  # stray pixel far away
mask = BinaryMask(bits)

contours = trace_contours(mask)
print(f"traced {len(contours)} contours (row-major discovery order)")
for i, c in enumerate(contours):
    print(
        f"  contour {i}: {len(c.points):4d} points, "
        f"area {contour_area(c):7.1f}, perimeter {contour_perimeter(c):6.1f}"
    )

main = largest_contour(contours)
hull = convex_hull(main)
print(f"largest contour hull has {len(hull.points)} vertices "
      f"(area {contour_area(hull):.1f} vs raw {contour_area(main):.1f})")

moments = compute_moments(mask, main)
center = centroid(moments)
print(f"moments m00={moments.m00} m10={moments.m10} m01={moments.m01}")
print(f"centroid ({center.cx:.2f}, {center.cy:.2f})")

e = extreme_points(main)
print(f"extremes: left {e.left}  right {e.right}  top {e.top}  bottom {e.bottom}")

profile = radial_profile(center, main)
print(
    f"radial profile over {len(profile)} border points: "
    f"min {profile.min():.2f}, mean {profile.mean():.2f}, max {profile.max():.2f}"
)
print("the fingertip should be the farthest border point:",
      main.points[int(np.argmax(profile))])
