import numpy as np
import pytest

from delpoint import Dataset, HyperParams, advantage_target
from delpoint.snr import snr_denominator


@pytest.fixture
def t3():
    """Three 1-D points with simple rational stats: s_yx=23/3, s_xx=14/3."""
    return Dataset.from_arrays([[1.0], [2.0], [3.0]], [2.0, 3.0, 5.0])


@pytest.fixture
def hp_default():
    return HyperParams(gamma=0.01, sigma=2.0, alpha=0.01, delta=100.0)


def random_dataset(rng, n=None, d=None):
    n = n if n is not None else int(rng.integers(2, 51))
    d = d if d is not None else int(rng.integers(1, 6))
    X = rng.normal(0.0, 3.0, (n, d))
    y = rng.normal(0.0, 5.0, n)
    return Dataset.from_arrays(X, y)


def assign_labels_1d(X, w, hp, d_vs):
    """Labels for a 1-D dataset placing the first n-1 points' d_v exactly.

    The score numerators are linear in the label vector but always sum to
    zero across the dataset, so only n-1 of them are free: the last point
    absorbs the slack (its d_v is roughly the sum of the others, far from
    any prescribed value).
    """
    x = np.asarray(X, float)[:, 0]
    n = x.shape[0]
    assert len(d_vs) == n - 1 and np.all(x[:-1] != 0.0)
    s_xx = float(x @ x) / n
    t = np.asarray(d_vs, float) * snr_denominator(n, hp)
    A = -np.outer(np.ones(n - 1), x[:-1]) / n
    A[np.diag_indices(n - 1)] = x[:-1] * (n - 1) / n
    rhs = t + (x[:-1] * x[:-1]) * w[0] - s_xx * w[0]
    y = np.zeros(n)
    y[:-1] = np.linalg.solve(A, rhs)
    return y


def tuned_dataset(rng, hp, targets, w, n=8):
    """Random 1-D dataset whose first len(targets) points hit the given d_v."""
    X = rng.normal(1.0, 0.5, (n, 1))
    fillers = advantage_target(hp.alpha) + 2.0 + rng.uniform(0, 5, n - 1 - len(targets))
    y = assign_labels_1d(X, w, hp, list(targets) + fillers.tolist())
    return Dataset.from_arrays(X, y)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
