"""Feature persistence and resampling: CSV round-trip, min-max scaling,
and reproducible k-fold splits.

The CSV format is deliberately rigid so files are bit-exact across writers:
a fixed header, one comma-separated row of 10 non-negative integers plus a
label field (empty when unlabelled), UTF-8, LF line endings, no quoting.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .features import FeatureVector

CSV_HEADER = "cx,cy,left_x,left_y,right_x,right_y,top_x,top_y,bottom_x,bottom_y,label"


class CsvFormatError(ValueError):
    """A feature CSV that cannot be parsed; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line


class EmptyTableError(ValueError):
    """An operation that needs at least one feature row got none."""


class InvalidFoldsError(ValueError):
    """Fold count outside the valid range 2 <= k <= row count."""


@dataclass(frozen=True)
class FeatureTable:
    """An ordered collection of feature vectors.

    class_names lists the distinct labels present, in first-appearance order.
    """

    rows: tuple[FeatureVector, ...]
    class_names: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        names: list[str] = []
        for row in rows:
            if row.label is not None and row.label not in names:
                names.append(row.label)
        object.__setattr__(self, "class_names", tuple(names))

    def __len__(self) -> int:
        return len(self.rows)

    def to_matrix(self) -> np.ndarray:
        """All feature values as an (n, 10) int64 array."""
        return np.array([r.values for r in self.rows], dtype=np.int64).reshape(-1, 10)

    @property
    def labels(self) -> tuple[str | None, ...]:
        return tuple(r.label for r in self.rows)


@dataclass(frozen=True)
class NormalizationParams:
    """Per-column (min, max) pairs used for min-max scaling to [0, 1]."""

    mins: tuple[float, ...]
    maxs: tuple[float, ...]

    def __post_init__(self):
        if len(self.mins) != 10 or len(self.maxs) != 10:
            raise ValueError("normalization params cover exactly 10 columns")
        if any(lo > hi for lo, hi in zip(self.mins, self.maxs)):
            raise ValueError("column min exceeds max")

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "NormalizationParams":
        if matrix.shape[0] == 0:
            raise EmptyTableError("cannot fit normalization on an empty table")
        return cls(
            mins=tuple(float(v) for v in matrix.min(axis=0)),
            maxs=tuple(float(v) for v in matrix.max(axis=0)),
        )

    def transform(self, matrix: np.ndarray) -> np.ndarray:
        """Scale columns by (v - min) / (max - min); constant columns map to 0.

        Values outside the fitted range scale past [0, 1] unclamped.
        """
        mins = np.array(self.mins)
        span = np.array(self.maxs) - mins
        out = matrix.astype(np.float64) - mins
        nonzero = span != 0
        out[:, nonzero] /= span[nonzero]
        out[:, ~nonzero] = 0.0
        return out


@dataclass(frozen=True)
class FoldAssignment:
    """Maps each row index to a fold id in [0, k)."""

    k: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        if any(not (0 <= f < self.k) for f in self.assignment):
            raise ValueError("fold id out of range")
        sizes = self.fold_sizes()
        if sizes and max(sizes) - min(sizes) > 1:
            raise ValueError("fold sizes must differ by at most one")

    def fold_sizes(self) -> list[int]:
        sizes = [0] * self.k
        for f in self.assignment:
            sizes[f] += 1
        return sizes

    def fold_indices(self, fold: int) -> list[int]:
        """Row indices assigned to `fold`, in row order."""
        return [i for i, f in enumerate(self.assignment) if f == fold]


def write_csv(table: FeatureTable, destination: str | os.PathLike) -> None:
    """Write the table with the fixed header; unlabelled rows end in an
    empty label field. read_csv(write_csv(t)) reproduces t exactly."""
    lines = [CSV_HEADER]
    for row in table.rows:
        label = row.label if row.label is not None else ""
        lines.append(",".join(str(v) for v in row.values) + "," + label)
    with open(destination, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(source: str | os.PathLike) -> FeatureTable:
    """Parse a feature CSV written by write_csv, preserving row order.

    Raises CsvFormatError, naming the 1-based line, for a bad header, wrong
    field count, or a non-integer feature value.
    """
    with open(source, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != CSV_HEADER:
        raise CsvFormatError(f"{source}:1: missing or malformed header", line=1)

    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = line.split(",")
        if len(fields) != 11:
            raise CsvFormatError(
                f"{source}:{lineno}: expected 11 fields, got {len(fields)}", line=lineno
            )
        values = []
        for f in fields[:10]:
            if not (f.isascii() and f.isdigit()):
                raise CsvFormatError(
                    f"{source}:{lineno}: feature value {f!r} is not a non-negative integer",
                    line=lineno,
                )
            values.append(int(f))
        label = fields[10] or None
        try:
            rows.append(FeatureVector(values=tuple(values), label=label))
        except ValueError as exc:
            raise CsvFormatError(f"{source}:{lineno}: {exc}", line=lineno) from exc
    return FeatureTable(rows=tuple(rows))


def fit_normalization(table: FeatureTable) -> NormalizationParams:
    """Per-column min/max over the table's rows."""
    if not table.rows:
        raise EmptyTableError("cannot fit normalization on an empty table")
    return NormalizationParams.from_matrix(table.to_matrix())


def apply_normalization(table: FeatureTable, params: NormalizationParams) -> np.ndarray:
    """The table's rows min-max scaled, as an (n, 10) float array."""
    return params.transform(table.to_matrix())


class _SplitMix64:
    """SplitMix64 generator (Steele, Lea, Flood 2014).

    State advances by the golden-gamma constant 0x9E3779B97F4A7C15; each
    output mixes the state with xor-shifts and the multipliers
    0xBF58476D1CE4E5B9 and 0x94D049BB133111EB. Fixed here so fold splits
    reproduce bit-for-bit across platforms and implementations.
    """

    _MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self._state = seed & self._MASK

    def next_uint64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & self._MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self._MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self._MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish draw in [0, bound) by modulo reduction."""
        return self.next_uint64() % bound


def kfold_split(n: int, k: int, seed: int) -> FoldAssignment:
    """Randomly partition row indices [0, n) into k folds of near-equal size.

    Indices are shuffled with a Fisher-Yates pass driven by SplitMix64, then
    cut into contiguous blocks; the first n % k folds take one extra row.
    The same (n, k, seed) always yields the same assignment.
    """
    if k < 2 or k > n:
        raise InvalidFoldsError(f"fold count must satisfy 2 <= k <= {n}, got {k}")
    rng = _SplitMix64(seed)
    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]

    assignment = [0] * n
    base, extra = divmod(n, k)
    pos = 0
    for fold in range(k):
        size = base + (1 if fold < extra else 0)
        for idx in order[pos:pos + size]:
            assignment[idx] = fold
        pos += size
    return FoldAssignment(k=k, assignment=tuple(assignment))
