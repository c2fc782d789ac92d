"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with `pytest tests/test_acceptance.py -s` to see them).
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from handshape import (
    BinaryMask,
    CSV_HEADER,
    Centroid,
    FeatureTable,
    FeatureVector,
    KnnModel,
    YCbCrBuffer,
    accuracy,
    centroid,
    centroid_contour_distance,
    compute_moments,
    cross_validate,
    extreme_points,
    kfold_split,
    read_csv,
    read_frame,
    skin_mask,
    trace_contours,
    write_csv,
    write_ppm,
)
from handshape.cli import main
from synth import (
    bf_components,
    bf_outer_border,
    oracle_predict,
    random_mask,
    rasterize_disk,
    skin_ellipse_frame,
)

CLASSES = ("Palm to Palm", "Fingers Interlaced", "Fingers Interlocked")


@contextmanager
def criterion(number, description):
    try:
        yield
    except BaseException:
        print(f"[FAIL] criterion {number:2d}: {description}")
        raise
    print(f"[PASS] criterion {number:2d}: {description}")


def test_criterion_01_knn_oracle_equivalence():
    with criterion(1, "predict matches brute-force oracle on 1000 random instances"):
        rng = np.random.default_rng(2024)
        started = time.perf_counter()
        checked = 0
        for trial in range(1000):
            n = int(rng.integers(3, 51))
            high = 6 if trial % 2 == 0 else 400  # small range forces ties
            rows = [tuple(int(v) for v in rng.integers(0, high, size=10)) for _ in range(n)]
            labels = [CLASSES[int(rng.integers(0, 3))] for _ in range(n)]
            k = min(int(rng.choice([1, 2, 3, 5])), n)
            table = FeatureTable(
                rows=tuple(FeatureVector(values=v, label=l) for v, l in zip(rows, labels))
            )
            model = KnnModel(training=table, k_neighbors=k)
            query = tuple(int(v) for v in rng.integers(0, high, size=10))
            expected_label, expected_top = oracle_predict(rows, labels, query, k)
            result = model.predict(query)
            assert result.label == expected_label
            assert list(result.neighbor_indices) == [i for i, _ in expected_top]
            assert list(result.neighbor_distances) == pytest.approx(
                [d for _, d in expected_top]
            )
            checked += 1
        elapsed = time.perf_counter() - started
        assert checked == 1000
        assert elapsed < 10.0, f"oracle sweep took {elapsed:.1f}s"


def test_criterion_02_synthetic_cluster_accuracy():
    with criterion(2, "three separated Gaussian clusters score >= 95% mean accuracy"):
        started = time.perf_counter()
        rng = np.random.default_rng(7)
        sigma = 10.0
        centers = (60.0, 160.0, 260.0)  # inter-center distance 100*sqrt(10) >= 8 sigma
        assert min(
            np.linalg.norm(np.full(10, a) - np.full(10, b))
            for a in centers for b in centers if a != b
        ) >= 8 * sigma
        rows = []
        for center, name in zip(centers, CLASSES):
            for sample in rng.normal(center, sigma, size=(120, 10)):
                values = tuple(int(v) for v in np.clip(np.round(sample), 0, None))
                rows.append(FeatureVector(values=values, label=name))
        table = FeatureTable(rows=tuple(rows))
        report = cross_validate(table, k_folds=3, k_neighbors=3, seed=42)
        assert report.mean_accuracy >= 95.0
        normalized = cross_validate(table, k_folds=3, k_neighbors=3, seed=42, normalize=True)
        assert normalized.mean_accuracy >= 95.0
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"cluster evaluation took {elapsed:.1f}s"


def test_criterion_03_centroid_distance_formula():
    with criterion(3, "centroid-to-extreme-left distance equals sqrt(1733)"):
        d = centroid_contour_distance(Centroid(112, 175), (74, 192))
        assert abs(d - 41.6293165929973) <= 1e-6  # hand oracle: sqrt(38^2 + 17^2)
        assert abs(d - math.sqrt(1733)) <= 1e-6


def test_criterion_04_moments_match_triple_loop():
    with criterion(4, "moments equal the naive triple loop on 100 random masks"):
        rng = np.random.default_rng(4004)
        for _ in range(100):
            bits = random_mask(rng, max_side=16)
            mask = BinaryMask(bits)
            h, w = bits.shape
            for contour, component in zip(trace_contours(mask), bf_components(bits)):
                m = compute_moments(mask, contour)
                m00 = m10 = m01 = 0
                for y in range(h):
                    for x in range(w):
                        if (x, y) in component:
                            m00 += 1
                            m10 += x
                            m01 += y
                assert (m.m00, m.m10, m.m01) == (m00, m10, m01)
                c = centroid(m)
                xs = [x for x, _ in component]
                ys = [y for _, y in component]
                assert min(xs) <= c.cx <= max(xs)
                assert min(ys) <= c.cy <= max(ys)


def test_criterion_05_contours_match_border_scan():
    with criterion(5, "traced contours equal the brute-force border scan"):
        rng = np.random.default_rng(5005)
        for _ in range(100):
            bits = random_mask(rng, max_side=16)
            contours = trace_contours(BinaryMask(bits))
            components = bf_components(bits)
            assert len(contours) == len(components)
            for contour, component in zip(contours, components):
                assert set(contour.points) == bf_outer_border(bits, component)

        bits = rasterize_disk((100, 100), (50, 50), 20)
        (c,) = trace_contours(BinaryMask(bits))
        e = extreme_points(c)
        for found, expected in [
            (e.left, (30, 50)), (e.right, (70, 50)), (e.top, (50, 30)), (e.bottom, (50, 70)),
        ]:
            assert math.hypot(found[0] - expected[0], found[1] - expected[1]) <= 1.0


def test_criterion_06_skin_threshold_boundaries():
    with criterion(6, "all six skin thresholds are inclusive at the boundary"):
        def is_skin(y, cr, cb):
            buf = YCbCrBuffer(np.array([[[y, cb, cr]]], dtype=np.uint8))
            return bool(skin_mask(buf).bits[0, 0])

        assert is_skin(0, 133, 77)
        assert is_skin(255, 179, 127)
        assert not is_skin(128, 132, 100)
        assert not is_skin(128, 150, 76)

        mid = {"y": 128, "cr": 150, "cb": 100}
        bounds = {"y": (0, 255), "cr": (133, 179), "cb": (77, 127)}
        for channel, (lo, hi) in bounds.items():
            for probe in (lo - 1, lo, lo + 1, hi - 1, hi, hi + 1):
                if not 0 <= probe <= 255:
                    continue
                values = dict(mid)
                values[channel] = probe
                expected = lo <= probe <= hi
                assert is_skin(values["y"], values["cr"], values["cb"]) is expected, (
                    f"{channel}={probe} should be {'skin' if expected else 'rejected'}"
                )


def test_criterion_07_csv_round_trip(tmp_path):
    with criterion(7, "1000-row CSV survives write/read bit-identically"):
        rng = np.random.default_rng(7007)
        rows = tuple(
            FeatureVector(
                values=tuple(int(v) for v in rng.integers(0, 400, size=10)),
                label=CLASSES[int(rng.integers(0, 3))],
            )
            for _ in range(1000)
        )
        table = FeatureTable(rows=rows)
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        write_csv(table, first)
        recovered = read_csv(first)
        assert recovered == table
        write_csv(recovered, second)
        assert first.read_bytes() == second.read_bytes()

        write_csv(
            FeatureTable(rows=(
                FeatureVector(
                    values=(112, 175, 74, 192, 153, 149, 122, 104, 74, 239),
                    label="Palm to Palm",
                ),
            )),
            tmp_path / "sample.csv",
        )
        lines = (tmp_path / "sample.csv").read_text(encoding="utf-8").split("\n")
        assert lines[0] == CSV_HEADER
        assert lines[1] == "112,175,74,192,153,149,122,104,74,239,Palm to Palm"


def test_criterion_08_deterministic_reports(tmp_path, capsys):
    with criterion(8, "identical runs produce byte-identical reports; 364 rows split 122/121/121"):
        rng = np.random.default_rng(8008)
        rows = tuple(
            FeatureVector(
                values=tuple(int(v) for v in rng.integers(0, 300, size=10)),
                label=CLASSES[int(rng.integers(0, 3))],
            )
            for _ in range(364)
        )
        table = FeatureTable(rows=rows)
        assert cross_validate(table, 3, 3, seed=42) == cross_validate(table, 3, 3, seed=42)

        csv_path = tmp_path / "table.csv"
        write_csv(table, csv_path)
        r1, r2 = tmp_path / "r1.txt", tmp_path / "r2.txt"
        assert main(["cross-validate", "--input", str(csv_path), "--report", str(r1)]) == 0
        assert main(["cross-validate", "--input", str(csv_path), "--report", str(r2)]) == 0
        capsys.readouterr()
        assert r1.read_bytes() == r2.read_bytes()

        folds = kfold_split(364, 3, seed=42)
        assert sorted(folds.fold_sizes(), reverse=True) == [122, 121, 121]


def test_criterion_09_accuracy_formula():
    with criterion(9, "accuracy formats to 85.71 for 6/7 and 95.87 for 116/121"):
        six_of_seven = accuracy(["a"] * 6 + ["b"], ["a"] * 7)
        assert f"{six_of_seven:.2f}" == "85.71"
        fold_one = accuracy(["x"] * 121, ["x"] * 116 + ["y"] * 5)
        assert f"{fold_one:.2f}" == "95.87"


def test_criterion_10_end_to_end_pipeline(tmp_path, capsys):
    with criterion(10, "extract -> cross-validate -> predict -> annotate on synthetic frames"):
        started = time.perf_counter()
        geometries = {
            "round palm": (22, 22),
            "wide clasp": (45, 10),
            "tall clasp": (10, 45),
        }
        size = (160, 120)
        poses = [(80 + dx, 60 + dy) for dx in (-2, 0, 2) for dy in (-2, 0, 2)][:8]

        tables = []
        for name, axes in geometries.items():
            frame_dir = tmp_path / name.replace(" ", "_")
            frame_dir.mkdir()
            for i, center in enumerate(poses):
                write_ppm(skin_ellipse_frame(size, center, axes), frame_dir / f"f{i:03d}.ppm")
            out_csv = tmp_path / f"{name.replace(' ', '_')}.csv"
            assert main([
                "extract", "--input", str(frame_dir), "--output", str(out_csv),
                "--label", name,
            ]) == 0
            part = read_csv(out_csv)
            assert len(part) == len(poses)
            tables.append(part)

        merged = FeatureTable(rows=tuple(r for t in tables for r in t.rows))
        training_csv = tmp_path / "training.csv"
        write_csv(merged, training_csv)

        report_path = tmp_path / "report.txt"
        assert main([
            "cross-validate", "--input", str(training_csv), "--report", str(report_path),
        ]) == 0
        report_text = report_path.read_text(encoding="utf-8")
        assert report_text.endswith("mean_accuracy=100.00\n")

        query_dir = tmp_path / "queries"
        query_dir.mkdir()
        write_ppm(skin_ellipse_frame(size, (81, 61), (22, 22)), query_dir / "q0.ppm")
        write_ppm(skin_ellipse_frame(size, (79, 59), (45, 10)), query_dir / "q1.ppm")
        write_ppm(skin_ellipse_frame(size, (80, 60), (10, 45)), query_dir / "q2.ppm")
        capsys.readouterr()
        assert main([
            "predict", "--training", str(training_csv), "--input", str(query_dir),
        ]) == 0
        predictions = [
            line.split("\t")[1] for line in capsys.readouterr().out.strip().split("\n")
        ]
        assert predictions == ["round palm", "wide clasp", "tall clasp"]

        disk_dir = tmp_path / "disk"
        disk_dir.mkdir()
        center, radius = (80, 60), 22
        write_ppm(skin_ellipse_frame(size, center, (radius, radius)), disk_dir / "disk.ppm")
        annotated_dir = tmp_path / "annotated"
        assert main([
            "annotate", "--input", str(disk_dir), "--output", str(annotated_dir),
        ]) == 0
        capsys.readouterr()
        out = read_frame(annotated_dir / "disk.ppm")

        def color_pixels(color):
            match = (out.pixels == np.array(color, dtype=np.uint8)).all(axis=-1)
            ys, xs = np.nonzero(match)
            return list(zip(xs.tolist(), ys.tolist()))

        greens = color_pixels((0, 255, 0))
        assert greens
        for x, y in greens:
            assert abs(math.hypot(x - center[0], y - center[1]) - radius) <= 1.0

        reds = color_pixels((255, 0, 0))
        assert reds
        red_cx = sum(x for x, _ in reds) / len(reds)
        red_cy = sum(y for _, y in reds) / len(reds)
        assert math.hypot(red_cx - center[0], red_cy - center[1]) <= 1.0

        blues = color_pixels((0, 0, 255))
        assert blues
        marker_radius = 5
        oracle_extremes = [
            (center[0] - radius, center[1]), (center[0] + radius, center[1]),
            (center[0], center[1] - radius), (center[0], center[1] + radius),
        ]
        for ex, ey in oracle_extremes:
            ring = [
                (x, y) for x, y in blues
                if abs(math.hypot(x - ex, y - ey) - marker_radius) <= 1.0
            ]
            assert ring, f"no marker ring near extreme point ({ex}, {ey})"
        for x, y in blues:
            assert min(
                abs(math.hypot(x - ex, y - ey) - marker_radius)
                for ex, ey in oracle_extremes
            ) <= 1.0

        elapsed = time.perf_counter() - started
        assert elapsed < 30.0, f"end-to-end pipeline took {elapsed:.1f}s"
