"""Shared fixtures-in-spirit: random dataset construction for property tests."""

import numpy as np

from kotaro import Dataset


def random_dataset(rng, n=None, m=None, box=5.0):
    """Random dataset with both classes present and no duplicate points."""
    n = n if n is not None else int(rng.integers(5, 51))
    m = m if m is not None else int(rng.integers(1, 6))
    while True:
        features = rng.uniform(0.0, box, size=(n, m))
        if np.unique(features, axis=0).shape[0] == n:
            break
    labels = np.where(rng.random(n) < 0.3, 1, -1)
    # force both classes
    labels[0] = 1
    labels[-1] = -1
    return Dataset(features=features, labels=labels)


def random_rotation(rng, m):
    """Haar-ish random orthogonal matrix via QR."""
    q, r = np.linalg.qr(rng.standard_normal((m, m)))
    return q * np.sign(np.diag(r))
