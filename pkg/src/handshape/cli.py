"""Command-line front end for the frame -> features -> classification pipeline.

Four subcommands: `extract` turns a directory of frames into a labelled
feature CSV, `cross-validate` scores a labelled CSV with k-fold KNN,
`predict` classifies query rows (from a CSV or a frame directory) against a
training CSV, and `annotate` writes frames with the measured shape drawn on.

Fatal problems print a single `error: ...` line on stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .dataset import FeatureTable, read_csv, write_csv
from .imaging import SkinRange
from .knn import CvReport, KnnModel, accuracy, cross_validate
from .pipeline import (
    DEFAULT_MIN_AREA,
    annotate_directory,
    extract_directory,
    list_frame_files,
)

DEFAULT_K = 3
DEFAULT_FOLDS = 3
DEFAULT_SEED = 42


def _add_skin_flags(parser: argparse.ArgumentParser) -> None:
    defaults = SkinRange()
    group = parser.add_argument_group("skin mask bounds (inclusive)")
    for name in ("y_min", "y_max", "cr_min", "cr_max", "cb_min", "cb_max"):
        flag = "--" + name.replace("_", "-")
        group.add_argument(flag, type=int, default=getattr(defaults, name),
                           help=f"default {getattr(defaults, name)}")


def _skin_range(args: argparse.Namespace) -> SkinRange:
    return SkinRange(
        y_min=args.y_min, y_max=args.y_max,
        cr_min=args.cr_min, cr_max=args.cr_max,
        cb_min=args.cb_min, cb_max=args.cb_max,
    )


def _report_lines(report: CvReport, rows: int) -> tuple[list[str], list[str]]:
    """Key=value lines describing a run: (parameters, results)."""
    params = [
        f"rows={rows}",
        f"k_folds={report.k_folds}",
        f"k_neighbors={report.k_neighbors}",
        f"seed={report.seed}",
        f"normalize={'true' if report.normalized else 'false'}",
    ]
    results = [
        f"fold_{i}_accuracy={acc:.2f}"
        for i, acc in enumerate(report.fold_accuracies, start=1)
    ]
    results.append(f"mean_accuracy={report.mean_accuracy:.2f}")
    return params, results


def _cmd_extract(args: argparse.Namespace) -> int:
    table, stats = extract_directory(
        args.input, label=args.label, skin=_skin_range(args), min_area=args.min_area
    )
    for path, message in stats.failures:
        print(f"warning: skipping {path}: {message}", file=sys.stderr)
    if stats.rows == 0:
        print(f"error: no feature rows extracted from {args.input}", file=sys.stderr)
        return 1
    write_csv(table, args.output)
    print(f"rows_written={stats.rows}")
    print(f"frames_skipped={stats.skipped + len(stats.failures)}")
    return 0


def _cmd_cross_validate(args: argparse.Namespace) -> int:
    table = read_csv(args.input)
    try:
        report = cross_validate(
            table,
            k_folds=args.folds,
            k_neighbors=args.k,
            seed=args.seed,
            normalize=args.normalize,
        )
    except ValueError as exc:
        raise type(exc)(f"{args.input}: {exc}") from exc
    params, results = _report_lines(report, rows=len(table))
    for line in results:
        print(line)
    if args.report:
        Path(args.report).write_text("\n".join(params + results) + "\n", encoding="utf-8")
    return 0


def _load_queries(args: argparse.Namespace) -> FeatureTable:
    path = Path(args.input)
    if path.is_dir():
        table, stats = extract_directory(
            path, label=None, skin=_skin_range(args), min_area=args.min_area
        )
        for frame, message in stats.failures:
            print(f"warning: skipping {frame}: {message}", file=sys.stderr)
        return table
    return read_csv(path)


def _cmd_predict(args: argparse.Namespace) -> int:
    training = read_csv(args.training)
    queries = _load_queries(args)
    if len(queries) == 0:
        print("error: no query rows to classify", file=sys.stderr)
        return 1
    model = KnnModel(training=training, k_neighbors=args.k)

    predicted: list[str] = []
    expected: list[str] = []
    for row in queries.rows:
        result = model.predict(row.values)
        line = ",".join(str(v) for v in row.values) + f"\t{result.label}"
        if row.label is not None:
            mark = "correct" if result.label == row.label else "incorrect"
            line += f"\t{mark}"
            predicted.append(result.label)
            expected.append(row.label)
        print(line)
    if expected:
        print(f"accuracy={accuracy(predicted, expected):.2f}")
    return 0


def _cmd_annotate(args: argparse.Namespace) -> int:
    if not list_frame_files(args.input):
        print(f"error: no frames found in {args.input}", file=sys.stderr)
        return 1
    stats = annotate_directory(
        args.input, args.output, skin=_skin_range(args), min_area=args.min_area
    )
    for path, message in stats.failures:
        print(f"warning: skipping {path}: {message}", file=sys.stderr)
    print(f"frames_annotated={stats.rows}")
    print(f"frames_copied={stats.skipped}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="handshape",
        description="Hand-shape feature extraction and KNN gesture classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="frames directory -> feature CSV")
    p.add_argument("--input", required=True, help="directory of .ppm/.png frames")
    p.add_argument("--output", required=True, help="feature CSV to write")
    p.add_argument("--label", default=None, help="class label for every extracted row")
    p.add_argument("--min-area", type=float, default=DEFAULT_MIN_AREA,
                   help=f"minimum contour area in px^2 (default {DEFAULT_MIN_AREA:g}, 0 disables)")
    _add_skin_flags(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("cross-validate", help="k-fold evaluation of a labelled CSV")
    p.add_argument("--input", required=True, help="labelled feature CSV")
    p.add_argument("--folds", type=int, default=DEFAULT_FOLDS,
                   help=f"fold count (default {DEFAULT_FOLDS})")
    p.add_argument("--k", type=int, default=DEFAULT_K,
                   help=f"neighbour count (default {DEFAULT_K})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help=f"shuffle seed (default {DEFAULT_SEED})")
    p.add_argument("--normalize", action="store_true",
                   help="min-max scale features, fitted on training folds only")
    p.add_argument("--report", default=None, help="also write a key=value report file")
    p.set_defaults(func=_cmd_cross_validate)

    p = sub.add_parser("predict", help="classify query rows against a training CSV")
    p.add_argument("--training", required=True, help="labelled training CSV")
    p.add_argument("--input", required=True,
                   help="query CSV, or a frame directory to extract first")
    p.add_argument("--k", type=int, default=DEFAULT_K,
                   help=f"neighbour count (default {DEFAULT_K})")
    p.add_argument("--min-area", type=float, default=DEFAULT_MIN_AREA,
                   help="minimum contour area when --input is a directory")
    _add_skin_flags(p)
    p.set_defaults(func=_cmd_predict)

    p = sub.add_parser("annotate", help="draw contour/centroid/extremes onto frames")
    p.add_argument("--input", required=True, help="directory of .ppm/.png frames")
    p.add_argument("--output", required=True, help="directory for annotated frames")
    p.add_argument("--min-area", type=float, default=DEFAULT_MIN_AREA,
                   help=f"minimum contour area in px^2 (default {DEFAULT_MIN_AREA:g})")
    _add_skin_flags(p)
    p.set_defaults(func=_cmd_annotate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
