"""Domain types: data points, immutable datasets, sufficient statistics.

A Dataset is an immutable snapshot backed by float64 arrays.  It caches the
averaged moments

    s_yx = (1/n) sum_i y_i x_i        (d,)
    s_xx = (1/n) sum_i x_i x_i^T      (d, d)

from which every gradient and candidate score downstream is computed.
Deleting a point produces a new snapshot whose stats are updated
incrementally (O(d^2)) rather than recomputed; the two paths agree to
1e-12 relative and tests enforce it.

Points carry stable integer ids so that reports written after a chain of
deletions can still reference the original sample.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    EmptyDataset,
    IndexOutOfRange,
    InvalidValue,
    WouldEmptyDataset,
)

_SNR_CONVENTIONS = ("paper", "consistent")


@dataclass(frozen=True)
class DataPoint:
    """One training sample: feature vector x and scalar label y."""

    x: np.ndarray
    y: float

    def __post_init__(self):
        x = np.array(self.x, dtype=np.float64)  # own copy; caller keeps theirs
        if x.ndim != 1 or x.size < 1:
            raise DimensionMismatch("x must be a vector of dimension >= 1")
        if not np.all(np.isfinite(x)) or not np.isfinite(self.y):
            raise InvalidValue("data point entries must be finite")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", float(self.y))

    @property
    def dim(self) -> int:
        return self.x.shape[0]


@dataclass(frozen=True)
class SufficientStats:
    """Averaged moments s_yx (vector) and s_xx (symmetric PSD matrix)."""

    s_yx: np.ndarray
    s_xx: np.ndarray

    def __post_init__(self):
        s_yx = np.asarray(self.s_yx, dtype=np.float64)
        s_xx = np.asarray(self.s_xx, dtype=np.float64)
        s_yx.setflags(write=False)
        s_xx.setflags(write=False)
        object.__setattr__(self, "s_yx", s_yx)
        object.__setattr__(self, "s_xx", s_xx)


def _stats_from_arrays(X: np.ndarray, y: np.ndarray) -> SufficientStats:
    n = X.shape[0]
    s_yx = X.T @ y / n
    s_xx = X.T @ X / n
    s_xx = (s_xx + s_xx.T) / 2.0  # kill BLAS rounding asymmetry
    return SufficientStats(s_yx=s_yx, s_xx=s_xx)


def compute_stats(points: Sequence[DataPoint]) -> SufficientStats:
    """Averaged moments of a point sequence.

    Raises EmptyDataset for no points, DimensionMismatch for mixed
    dimensions, InvalidValue for non-finite entries.
    """
    points = list(points)
    if not points:
        raise EmptyDataset("cannot compute stats of an empty point sequence")
    d = points[0].dim
    for p in points:
        if p.dim != d:
            raise DimensionMismatch(f"mixed dimensions: {p.dim} vs {d}")
    X = np.stack([p.x for p in points])
    y = np.array([p.y for p in points])
    return _stats_from_arrays(X, y)


@dataclass(frozen=True)
class Dataset:
    """Immutable ordered collection of points with cached stats.

    Construct through from_arrays / from_points / load_csv.  delete_point
    returns a new snapshot; existing snapshots are never mutated, so any
    number of readers can share one.
    """

    X: np.ndarray
    y: np.ndarray
    ids: np.ndarray
    stats: SufficientStats

    @classmethod
    def from_arrays(cls, X, y, ids=None) -> "Dataset":
        # own copies: the snapshot is frozen read-only, callers keep theirs
        X = np.array(X, dtype=np.float64, order="C")
        y = np.array(y, dtype=np.float64, order="C")
        if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0]:
            raise DimensionMismatch(
                f"need X (n, d) and y (n,), got {X.shape} and {y.shape}")
        if X.shape[0] < 1:
            raise EmptyDataset("a dataset needs at least one point")
        if X.shape[1] < 1:
            raise DimensionMismatch("feature dimension must be >= 1")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
            raise InvalidValue("dataset entries must be finite")
        if ids is None:
            ids = np.arange(X.shape[0], dtype=np.int64)
        else:
            ids = np.array(ids, dtype=np.int64)
            if ids.shape != (X.shape[0],):
                raise DimensionMismatch("ids must have one entry per point")
        for a in (X, y, ids):
            a.setflags(write=False)
        return cls(X=X, y=y, ids=ids, stats=_stats_from_arrays(X, y))

    @classmethod
    def from_points(cls, points: Sequence[DataPoint]) -> "Dataset":
        points = list(points)
        if not points:
            raise EmptyDataset("a dataset needs at least one point")
        d = points[0].dim
        for p in points:
            if p.dim != d:
                raise DimensionMismatch(f"mixed dimensions: {p.dim} vs {d}")
        X = np.stack([p.x for p in points])
        y = np.array([p.y for p in points])
        return cls.from_arrays(X, y)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    def point(self, index: int) -> DataPoint:
        if not 0 <= index < self.n:
            raise IndexOutOfRange(f"index {index} outside [0, {self.n})")
        return DataPoint(x=self.X[index], y=float(self.y[index]))

    @property
    def points(self) -> list[DataPoint]:
        return [self.point(i) for i in range(self.n)]

    def position_of(self, point_id: int) -> int:
        """Current position of an original point id (ids stay sorted)."""
        pos = int(np.searchsorted(self.ids, point_id))
        if pos >= self.n or self.ids[pos] != point_id:
            raise IndexOutOfRange(f"point id {point_id} not in dataset")
        return pos


def delete_point(ds: Dataset, index: int) -> Dataset:
    """New dataset without the point at position ``index``.

    Stats are updated incrementally:
        s_yx' = (n s_yx - y_v x_v) / (n - 1)
        s_xx' = (n s_xx - x_v x_v^T) / (n - 1)
    """
    if ds.n == 1:
        raise WouldEmptyDataset("cannot delete the only remaining point")
    if not 0 <= index < ds.n:
        raise IndexOutOfRange(f"index {index} outside [0, {ds.n})")
    n = ds.n
    xv = ds.X[index]
    yv = ds.y[index]
    s_yx = (n * ds.stats.s_yx - yv * xv) / (n - 1)
    s_xx = (n * ds.stats.s_xx - np.outer(xv, xv)) / (n - 1)
    X = np.delete(ds.X, index, axis=0)
    y = np.delete(ds.y, index)
    ids = np.delete(ds.ids, index)
    for a in (X, y, ids):
        a.setflags(write=False)
    return Dataset(X=X, y=y, ids=ids,
                   stats=SufficientStats(s_yx=s_yx, s_xx=s_xx))


@dataclass(frozen=True)
class HyperParams:
    """Run parameters shared by scoring, selection, bounds, and simulation.

    alpha must lie strictly inside (0, 0.5) so the advantage-nulling target
    2 * phi_inv(1 - alpha) is positive.  gamma = 0 or sigma = 0 are legal to
    construct (the plain SGD step tolerates them) but any operation whose
    formula divides by them raises DegenerateNoise.
    """

    gamma: float
    sigma: float
    alpha: float
    delta: float = 100.0
    snr_convention: str = "paper"
    seed: int = 0

    def __post_init__(self):
        if not (self.gamma >= 0.0 and np.isfinite(self.gamma)):
            raise DomainError(f"gamma must be >= 0 and finite, got {self.gamma}")
        if not (self.sigma >= 0.0 and np.isfinite(self.sigma)):
            raise DomainError(f"sigma must be >= 0 and finite, got {self.sigma}")
        if not (0.0 < self.alpha < 0.5):
            raise DomainError(f"alpha must lie in (0, 0.5), got {self.alpha}")
        if not (self.delta >= 0.0 and np.isfinite(self.delta)):
            raise DomainError(f"delta must be >= 0 and finite, got {self.delta}")
        if self.snr_convention not in _SNR_CONVENTIONS:
            raise DomainError(
                f"snr_convention must be one of {_SNR_CONVENTIONS}, "
                f"got {self.snr_convention!r}")
        object.__setattr__(self, "seed", int(self.seed))


_HEADER_RE = re.compile(r"^x(\d+)$")


def save_csv(ds: Dataset, path) -> None:
    """Write the dataset in the canonical CSV layout x0,...,x{d-1},y."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"x{j}" for j in range(ds.dim)] + ["y"])
        for i in range(ds.n):
            writer.writerow([repr(float(v)) for v in ds.X[i]]
                            + [repr(float(ds.y[i]))])


def load_csv(path) -> Dataset:
    """Read a dataset from the canonical CSV layout."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise EmptyDataset(f"{path}: empty file")
    header = rows[0]
    if len(header) < 2 or header[-1] != "y":
        raise InvalidValue(f"{path}: header must be x0,...,x{{d-1}},y")
    for j, name in enumerate(header[:-1]):
        m = _HEADER_RE.match(name)
        if not m or int(m.group(1)) != j:
            raise InvalidValue(f"{path}: unexpected column {name!r} at {j}")
    d = len(header) - 1
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != d + 1:
            raise DimensionMismatch(
                f"{path}:{lineno}: expected {d + 1} fields, got {len(row)}")
        try:
            data.append([float(v) for v in row])
        except ValueError as exc:
            raise InvalidValue(f"{path}:{lineno}: {exc}") from None
    if not data:
        raise EmptyDataset(f"{path}: no data rows")
    arr = np.asarray(data, dtype=np.float64)
    return Dataset.from_arrays(arr[:, :d], arr[:, d])
