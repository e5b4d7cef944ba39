"""Shared samplers for the randomized suites.

All sampling is done with explicitly seeded numpy generators so every test
run sees the same stream.
"""

from __future__ import annotations

import numpy as np

from lgfeas import JointDistribution, pairwise_probability


def pair_table_nonneg(b_i: float, b_j: float, c_ij: float) -> bool:
    return all(
        pairwise_probability(b_i, b_j, c_ij, s_i, s_j) >= 0.0
        for s_i in (1, -1)
        for s_j in (1, -1)
    )


def sample_nonneg_pair_moments(rng, n, pairs):
    """Rejection-sample averages and correlators whose listed pair tables
    are all non-negative (the standard precondition of the feasibility
    questions)."""
    while True:
        b = rng.uniform(-1.0, 1.0, n)
        c = {pair: float(rng.uniform(-1.0, 1.0)) for pair in pairs}
        if all(pair_table_nonneg(b[i - 1], b[j - 1], c[(i, j)]) for i, j in pairs):
            return b, c


def random_nonneg_distribution(rng, n) -> JointDistribution:
    weights = rng.exponential(1.0, 1 << n)
    return JointDistribution(n, weights / weights.sum())
