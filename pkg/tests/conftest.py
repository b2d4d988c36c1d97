"""Shared helpers for the test suite."""

import numpy as np

from coniccond import polar_decompose
from coniccond.harness import gaussian_matrix, trial_stream


def stream(seed, index=0):
    return trial_stream(seed, index)


def random_matrix(rng, m, n):
    return gaussian_matrix(rng, m, n)


def random_balanced(rng, m, n):
    return polar_decompose(gaussian_matrix(rng, m, n)).balanced_part


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(gaussian_matrix(rng, n, n))
    return q * np.sign(np.diag(r))


def random_spd(rng, m, lo=0.5, hi=4.0):
    q = random_orthogonal(rng, m)
    eigs = lo + (hi - lo) * rng.random(m)
    return (q * eigs) @ q.T
