"""Entropy scoring and batch selection for the labeling loop.

Samples are ranked by the Shannon entropy (in nats) of their predicted
class distribution; each cycle the top-k most uncertain ids are sent to
the annotator. Ties break on ascending sample id so runs replay exactly.
"""

from dataclasses import dataclass

import numpy as np

from alsent.errors import InvalidDistribution

SUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class UncertaintyScore:
    sample_id: str
    entropy: float


def entropy(dist) -> float:
    """H = -sum_c p_c ln p_c with 0 ln 0 := 0. Input must be a
    probability vector (entries >= 0, summing to 1 within 1e-9)."""
    p = np.asarray(dist, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise InvalidDistribution(f"expected a 1-D probability vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise InvalidDistribution("distribution contains non-finite entries")
    if np.any(p < 0):
        raise InvalidDistribution("distribution contains negative entries")
    total = float(p.sum())
    if abs(total - 1.0) > SUM_TOLERANCE:
        raise InvalidDistribution(f"distribution sums to {total!r}, not 1")
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def score_pool(ids, probabilities) -> list[UncertaintyScore]:
    """Entropy score for each pool sample; row i of `probabilities` is
    the predicted distribution for ids[i]."""
    probabilities = np.asarray(probabilities, dtype=np.float64)
    if len(ids) != probabilities.shape[0]:
        raise InvalidDistribution(
            f"{len(ids)} ids but {probabilities.shape[0]} probability rows")
    return [UncertaintyScore(sample_id=str(sid), entropy=entropy(row))
            for sid, row in zip(ids, probabilities)]


def select_batch(scores: list[UncertaintyScore], k: int) -> list[str]:
    """Ids of the k highest-entropy scores, descending; equal entropies
    order by ascending sample id. k larger than the pool returns all."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    ranked = sorted(scores, key=lambda s: (-s.entropy, s.sample_id))
    return [s.sample_id for s in ranked[:k]]
