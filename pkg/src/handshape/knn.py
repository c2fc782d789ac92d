"""From-scratch K-nearest-neighbours classification with k-fold evaluation.

Every rule that could break determinism is pinned: neighbour ties at equal
distance prefer the lower training-row index, vote ties prefer the class
with the smaller summed neighbour distance and then the lexicographically
smaller name. Identical inputs therefore always produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import FeatureTable, NormalizationParams, kfold_split


class InsufficientRowsError(ValueError):
    """A training partition is smaller than the requested neighbour count."""


@dataclass(frozen=True)
class PredictionResult:
    """Predicted label plus the K neighbours that produced it."""

    label: str
    neighbor_indices: tuple[int, ...]
    neighbor_distances: tuple[float, ...]

    def __post_init__(self):
        if len(self.neighbor_indices) != len(self.neighbor_distances):
            raise ValueError("neighbour indices and distances must align")
        if any(b < a for a, b in zip(self.neighbor_distances, self.neighbor_distances[1:])):
            raise ValueError("neighbour distances must be non-decreasing")


@dataclass(frozen=True)
class CvReport:
    """Per-fold accuracies (percent) and their arithmetic mean."""

    fold_accuracies: tuple[float, ...]
    mean_accuracy: float
    k_folds: int
    k_neighbors: int
    seed: int
    normalized: bool = False

    def __post_init__(self):
        if any(not (0.0 <= a <= 100.0) for a in self.fold_accuracies):
            raise ValueError("fold accuracies are percentages in [0, 100]")
        expected = sum(self.fold_accuracies) / len(self.fold_accuracies)
        if abs(expected - self.mean_accuracy) > 1e-9:
            raise ValueError("mean accuracy must equal the mean of the folds")


def euclidean_distance(a, b) -> float:
    """Euclidean distance between two equal-length feature vectors."""
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    if av.shape != bv.shape:
        raise ValueError(f"arity mismatch: {av.shape} vs {bv.shape}")
    return float(np.sqrt(((av - bv) ** 2).sum()))


def _neighbors(train: np.ndarray, query: np.ndarray, k: int) -> tuple[list[int], list[float]]:
    """Indices and distances of the k nearest training rows, ascending;
    equal distances resolve to the lower row index."""
    diffs = train - query
    dists = np.sqrt((diffs * diffs).sum(axis=1))
    order = np.argsort(dists, kind="stable")[:k]
    return [int(i) for i in order], [float(dists[i]) for i in order]


def _vote(labels: list[str], indices: list[int], distances: list[float]) -> str:
    """Majority vote; ties fall to the smaller summed distance, then the
    lexicographically smaller class name."""
    counts: dict[str, int] = {}
    summed: dict[str, float] = {}
    for idx, dist in zip(indices, distances):
        name = labels[idx]
        counts[name] = counts.get(name, 0) + 1
        summed[name] = summed.get(name, 0.0) + dist
    return min(counts, key=lambda name: (-counts[name], summed[name], name))


@dataclass(frozen=True)
class KnnModel:
    """A labelled training table plus the neighbour count K (default 3)."""

    training: FeatureTable
    k_neighbors: int = 3
    _matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.training) == 0:
            raise ValueError("training table is empty")
        if any(label is None for label in self.training.labels):
            raise ValueError("every training row must carry a label")
        if not (1 <= self.k_neighbors <= len(self.training)):
            raise ValueError(
                f"k_neighbors must lie in [1, {len(self.training)}], got {self.k_neighbors}"
            )
        matrix = self.training.to_matrix().astype(np.float64)
        matrix.setflags(write=False)
        object.__setattr__(self, "_matrix", matrix)

    def nearest_neighbors(self, query) -> list[tuple[int, float]]:
        """The K training rows closest to the query, as (row index, distance)
        pairs in ascending distance order."""
        q = np.asarray(query, dtype=np.float64)
        indices, distances = _neighbors(self._matrix, q, self.k_neighbors)
        return list(zip(indices, distances))

    def predict(self, query) -> PredictionResult:
        """Classify a 10-vector by majority vote among its K neighbours."""
        q = np.asarray(query, dtype=np.float64)
        indices, distances = _neighbors(self._matrix, q, self.k_neighbors)
        label = _vote(list(self.training.labels), indices, distances)
        return PredictionResult(
            label=label,
            neighbor_indices=tuple(indices),
            neighbor_distances=tuple(distances),
        )


def accuracy(predicted, actual) -> float:
    """Percentage of positions where predicted and actual labels match."""
    predicted = list(predicted)
    actual = list(actual)
    if len(predicted) != len(actual):
        raise ValueError(f"length mismatch: {len(predicted)} vs {len(actual)}")
    if not predicted:
        raise ValueError("cannot score an empty prediction list")
    correct = sum(1 for p, a in zip(predicted, actual) if p == a)
    return 100.0 * correct / len(predicted)


def cross_validate(
    table: FeatureTable,
    k_folds: int,
    k_neighbors: int,
    seed: int,
    normalize: bool = False,
) -> CvReport:
    """K-fold cross-validation: each fold is predicted by a model trained on
    the remaining folds, and scored as percent correct.

    With normalize=True, min-max scaling is fitted on each training
    partition only and applied to both partitions before distances are
    taken. Results are deterministic for fixed inputs.
    """
    labels = table.labels
    if any(label is None for label in labels):
        raise ValueError("cross-validation needs a fully labelled table")
    n = len(table)
    folds = kfold_split(n, k_folds, seed)

    smallest_training = n - max(folds.fold_sizes())
    if k_neighbors > smallest_training:
        raise InsufficientRowsError(
            f"a training partition has only {smallest_training} rows, "
            f"fewer than k_neighbors={k_neighbors}"
        )

    matrix = table.to_matrix()
    fold_accuracies = []
    for fold in range(k_folds):
        val_idx = folds.fold_indices(fold)
        train_idx = [i for i in range(n) if folds.assignment[i] != fold]
        train = matrix[train_idx].astype(np.float64)
        val = matrix[val_idx].astype(np.float64)
        if normalize:
            params = NormalizationParams.from_matrix(matrix[train_idx])
            train = params.transform(matrix[train_idx])
            val = params.transform(matrix[val_idx])
        train_labels = [labels[i] for i in train_idx]
        predicted = []
        for row in val:
            indices, distances = _neighbors(train, row, k_neighbors)
            predicted.append(_vote(train_labels, indices, distances))
        actual = [labels[i] for i in val_idx]
        fold_accuracies.append(accuracy(predicted, actual))

    mean = sum(fold_accuracies) / len(fold_accuracies)
    return CvReport(
        fold_accuracies=tuple(fold_accuracies),
        mean_accuracy=mean,
        k_folds=k_folds,
        k_neighbors=k_neighbors,
        seed=seed,
        normalized=normalize,
    )
