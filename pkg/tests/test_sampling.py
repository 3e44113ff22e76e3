from __future__ import annotations

import numpy as np
import pytest

from conftest import random_matrix

from kaczmarz import (
    DegenerateMatrixError,
    RngState,
    build_row_sampler,
    sample_row,
)


def test_probabilities_hand_example() -> None:
    sampler = build_row_sampler(np.array([[1.0, 0.0], [0.0, 2.0]]))
    assert sampler.probabilities == pytest.approx([0.2, 0.8], abs=0.0)
    assert sampler.total == 5.0


def test_identical_rows_uniform() -> None:
    a = np.tile(np.array([1.0, 2.0]), (4, 1))
    sampler = build_row_sampler(a)
    assert np.allclose(sampler.probabilities, 0.25, atol=1e-15)


def test_zero_row_gets_zero_probability() -> None:
    sampler = build_row_sampler(np.array([[0.0, 0.0], [1.0, 1.0]]))
    assert sampler.probabilities[0] == 0.0
    assert sampler.probabilities[1] == 1.0


def test_probabilities_sum_to_one() -> None:
    for seed in range(5):
        a = random_matrix(17, 9, seed)
        a[seed % 17] = 0.0
        sampler = build_row_sampler(a)
        assert abs(float(np.sum(sampler.probabilities)) - 1.0) <= 1e-12


def test_dyadic_norms_give_exact_ratios() -> None:
    # squared row norms 1, 4: scaling 0.2 by 4 is exact in binary
    sampler = build_row_sampler(np.array([[1.0, 0.0], [2.0, 0.0]]))
    assert sampler.probabilities[1] == 4.0 * sampler.probabilities[0]


def test_all_zero_matrix_rejected() -> None:
    with pytest.raises(DegenerateMatrixError):
        build_row_sampler(np.zeros((3, 4)))


def test_degenerate_distribution_always_picks_the_live_row() -> None:
    sampler = build_row_sampler(np.array([[0.0, 0.0], [3.0, 4.0]]))
    rng = RngState(0)
    assert all(sample_row(sampler, rng) == 1 for _ in range(500))


def test_zero_rows_never_sampled() -> None:
    a = random_matrix(10, 6, 3)
    a[0] = 0.0
    a[4] = 0.0
    a[9] = 0.0  # trailing zero row exercises the clip guard
    sampler = build_row_sampler(a)
    rng = RngState(99)
    counts = np.zeros(10, dtype=int)
    for _ in range(20000):
        counts[sample_row(sampler, rng)] += 1
    assert counts[0] == 0 and counts[4] == 0 and counts[9] == 0
    assert counts.sum() == 20000


def test_uniform_matrix_frequencies_within_5_sigma() -> None:
    m, draws = 8, 10**6
    sampler = build_row_sampler(np.ones((m, 3)))
    rng = RngState(2024)
    counts = np.zeros(m, dtype=int)
    for _ in range(draws):
        counts[sample_row(sampler, rng)] += 1
    p = 1.0 / m
    sigma = np.sqrt(draws * p * (1.0 - p))
    assert np.all(np.abs(counts - draws * p) <= 5.0 * sigma)


def test_sampling_is_deterministic_per_seed() -> None:
    sampler = build_row_sampler(random_matrix(12, 5, 8))
    seq1 = [sample_row(sampler, RngState(77)) for _ in range(1)]
    rng_a, rng_b = RngState(77), RngState(77)
    seq_a = [sample_row(sampler, rng_a) for _ in range(300)]
    seq_b = [sample_row(sampler, rng_b) for _ in range(300)]
    assert seq_a == seq_b
    assert seq1[0] == seq_a[0]


def test_chi_square_goodness_of_fit() -> None:
    scipy_stats = pytest.importorskip("scipy.stats")
    a = random_matrix(15, 6, 21)
    a[3] = 0.0
    sampler = build_row_sampler(a)
    rng = RngState(555)
    draws = 10**5
    counts = np.zeros(15, dtype=int)
    for _ in range(draws):
        counts[sample_row(sampler, rng)] += 1
    live = sampler.probabilities > 0
    expected = sampler.probabilities[live] * draws
    stat = float(np.sum((counts[live] - expected) ** 2 / expected))
    dof = int(np.sum(live)) - 1
    threshold = float(scipy_stats.chi2.ppf(1.0 - 1e-3, dof))
    assert stat <= threshold
    assert counts[3] == 0
