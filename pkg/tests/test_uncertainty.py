"""Entropy scoring and top-k selection against a linear-scan oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alsent.errors import InvalidDistribution
from alsent.nn.rng import rng_stream
from alsent.uncertainty import (UncertaintyScore, entropy, score_pool,
                                select_batch)


def oracle_top_k(scores, k):
    """Repeated linear-scan maximum with the documented tie-break; no
    sorting, so it cannot share a bug with the implementation."""
    remaining = list(scores)
    picked = []
    while remaining and len(picked) < k:
        best = remaining[0]
        for s in remaining[1:]:
            if s.entropy > best.entropy or (s.entropy == best.entropy
                                            and s.sample_id < best.sample_id):
                best = s
        picked.append(best.sample_id)
        remaining.remove(best)
    return picked


class TestEntropy:
    def test_uniform_binary_is_ln2(self):
        assert entropy([0.5, 0.5]) == pytest.approx(math.log(2.0), abs=1e-12)

    def test_certain_is_zero(self):
        assert entropy([1.0, 0.0]) == 0.0

    def test_skewed_binary(self):
        # -0.9 ln 0.9 - 0.1 ln 0.1
        expected = -(0.9 * math.log(0.9) + 0.1 * math.log(0.1))
        assert entropy([0.9, 0.1]) == pytest.approx(expected, abs=1e-12)
        assert entropy([0.9, 0.1]) == pytest.approx(0.325083, abs=1e-6)

    def test_uniform_ternary(self):
        assert entropy([1 / 3] * 3) == pytest.approx(math.log(3.0), abs=1e-12)

    @pytest.mark.parametrize("bad", [
        [],
        [0.5, 0.6],
        [0.7, 0.4],
        [-0.1, 1.1],
        [float("nan"), 1.0],
        [float("inf"), 0.0],
    ])
    def test_malformed_distributions(self, bad):
        with pytest.raises(InvalidDistribution):
            entropy(bad)

    def test_matrix_input_rejected(self):
        with pytest.raises(InvalidDistribution):
            entropy(np.array([[0.5, 0.5]]))

    @given(st.floats(0.0, 1.0))
    @settings(max_examples=200, deadline=None)
    def test_binary_symmetry(self, p):
        assert entropy([p, 1.0 - p]) == pytest.approx(entropy([1.0 - p, p]),
                                                      abs=1e-12)

    @given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=6),
           st.randoms())
    @settings(max_examples=200, deadline=None)
    def test_permutation_invariance(self, weights, rnd):
        dist = [w / sum(weights) for w in weights]
        shuffled = list(dist)
        rnd.shuffle(shuffled)
        assert entropy(dist) == pytest.approx(entropy(shuffled), abs=1e-12)

    @given(st.lists(st.floats(0.01, 1.0), min_size=2, max_size=6))
    @settings(max_examples=200, deadline=None)
    def test_uniform_is_maximal(self, weights):
        dist = [w / sum(weights) for w in weights]
        c = len(dist)
        assert entropy(dist) <= entropy([1.0 / c] * c) + 1e-12


class TestScorePool:
    def test_ids_paired_with_rows(self):
        probs = np.array([[0.5, 0.5], [0.99, 0.01]])
        scores = score_pool(["a", "b"], probs)
        assert [s.sample_id for s in scores] == ["a", "b"]
        assert scores[0].entropy > scores[1].entropy

    def test_length_mismatch(self):
        with pytest.raises(InvalidDistribution):
            score_pool(["a"], np.array([[0.5, 0.5], [0.4, 0.6]]))


class TestSelectBatch:
    def test_worked_example(self):
        scores = [UncertaintyScore("a", 0.1), UncertaintyScore("b", 0.69),
                  UncertaintyScore("c", 0.5)]
        assert select_batch(scores, 2) == ["b", "c"]

    def test_k_zero(self):
        assert select_batch([UncertaintyScore("a", 0.1)], 0) == []

    def test_tie_break_ascending_id(self):
        scores = [UncertaintyScore("b", 0.5), UncertaintyScore("a", 0.5)]
        assert select_batch(scores, 1) == ["a"]

    def test_k_exceeds_pool_returns_all(self):
        scores = [UncertaintyScore("b", 0.2), UncertaintyScore("a", 0.7)]
        assert select_batch(scores, 10) == ["a", "b"]

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            select_batch([], -1)

    def test_matches_linear_scan_oracle(self):
        # >= 1000 random pools, entropies drawn from a tiny value set so
        # duplicate-entropy ties are frequent
        rng = rng_stream(77)
        tie_values = [0.0, 0.25, 0.5, 0.69, 0.69, 0.7]
        for trial in range(1200):
            n = int(rng.integers(0, 12))
            ids = [f"s{int(v):03d}" for v in
                   rng.choice(1000, size=n, replace=False)]
            entropies = rng.choice(tie_values, size=n)
            scores = [UncertaintyScore(i, float(e))
                      for i, e in zip(ids, entropies)]
            k = int(rng.integers(0, n + 3))
            assert select_batch(scores, k) == oracle_top_k(scores, k)
