"""Seeded shuffle-then-slice dataset splitting."""

import math
from typing import Sequence, TypeVar

from alsent.errors import DatasetTooSmall
from alsent.models.spec import SplitSpec
from alsent.nn.rng import rng_stream

T = TypeVar("T")


def split_dataset(samples: Sequence[T], spec: SplitSpec) -> tuple[list[T], list[T], list[T]]:
    """Partition into (train, val, test).

    Validation and test sizes are floored fractions; the remainder goes
    to training, so 11 samples split 7/2/2. The shuffle is a seeded
    permutation, making the partition deterministic.
    """
    n = len(samples)
    if n < 5:
        raise DatasetTooSmall(f"need at least 5 samples to split, got {n}")
    rng = rng_stream(spec.seed)
    order = rng.permutation(n)
    # The epsilon guards against float products like 10*0.2 = 1.9999...
    n_val = math.floor(n * spec.val_frac + 1e-9)
    n_test = math.floor(n * spec.test_frac + 1e-9)
    n_train = n - n_val - n_test
    shuffled = [samples[i] for i in order]
    return (shuffled[:n_train],
            shuffled[n_train:n_train + n_val],
            shuffled[n_train + n_val:])
