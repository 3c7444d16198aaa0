"""Split encoding and labeled/unlabeled pool bookkeeping.

`prepare_splits` is shared by baseline and labeling-loop runs: same
seed, same 60/20/20 partition, same vocabulary (built from the training
split's TEXTS only, labels unseen), so their test sets hash identically
and accuracies are comparable.

The pool invariant: labeled ids and pool ids partition the training
split at all times; validation and test rows never enter either side.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from alsent.errors import DatasetTooSmall, MissingGold
from alsent.models.encoding import (encode_samples, preprocess_samples,
                                    split_fingerprint, vocab_fingerprint)
from alsent.models.spec import SplitSpec
from alsent.models.split import split_dataset
from alsent.nn.rng import derived_stream
from alsent.orchestrator.records import StoppingRule
from alsent.textprep.vocab import Vocabulary, build_vocab

SEED_SOURCE = "seed"  # label source recorded for the initial labeled set


@dataclass(frozen=True)
class EncodedSplits:
    label_set: tuple[str, ...]
    vocab: Vocabulary
    vocab_hash: str
    train_ids: list[str]
    x_train: np.ndarray
    y_train: np.ndarray
    val_ids: list[str]
    x_val: np.ndarray
    y_val: np.ndarray
    test_ids: list[str]
    x_test: np.ndarray
    y_test: np.ndarray
    test_hash: str
    raw_texts: dict[str, str]
    gold_train: dict[str, str]
    majority_label: str

    @property
    def train_size(self) -> int:
        return len(self.train_ids)


def prepare_splits(dataset, seed: int) -> EncodedSplits:
    train, val, test = split_dataset(dataset.samples, SplitSpec(seed=seed))
    vocab = build_vocab(preprocess_samples(train))
    x_train, y_train, train_ids = encode_samples(train, vocab, dataset.label_set)
    x_val, y_val, val_ids = encode_samples(val, vocab, dataset.label_set)
    x_test, y_test, test_ids = encode_samples(test, vocab, dataset.label_set)
    return EncodedSplits(
        label_set=dataset.label_set, vocab=vocab,
        vocab_hash=vocab_fingerprint(vocab),
        train_ids=train_ids, x_train=x_train, y_train=y_train,
        val_ids=val_ids, x_val=x_val, y_val=y_val,
        test_ids=test_ids, x_test=x_test, y_test=y_test,
        test_hash=split_fingerprint(test_ids, x_test),
        raw_texts={s.id: s.text for s in train},
        gold_train={s.id: s.gold_label for s in train if s.gold_label},
        majority_label=dataset.majority_label(),
    )


@dataclass(frozen=True)
class PoolState:
    """Immutable snapshot of one labeling run between cycles. Cycle
    transitions return a fresh state, so a failed cycle changes nothing."""

    splits: EncodedSplits
    rule: StoppingRule
    labeled_order: tuple[str, ...]
    labels: dict[str, str]  # sample id -> label name
    sources: dict[str, str]  # sample id -> label source
    pool_ids: tuple[str, ...]
    cycle: int = 0
    row_index: dict[str, int] = field(default_factory=dict)

    def labeled_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Training arrays for the current labeled set, in labeling order."""
        rows = [self.row_index[sid] for sid in self.labeled_order]
        label_pos = {label: i for i, label in enumerate(self.splits.label_set)}
        y = np.asarray([label_pos[self.labels[sid]] for sid in self.labeled_order],
                       dtype=np.int64)
        return self.splits.x_train[rows], y

    def pool_matrix(self) -> np.ndarray:
        rows = [self.row_index[sid] for sid in self.pool_ids]
        return self.splits.x_train[rows]

    def absorb(self, batch: list[tuple[str, str, str]], cycle: int) -> "PoolState":
        """New state with (id, label, source) triples moved from the pool
        into the labeled set, in the given order."""
        absorbed = [sid for sid, _, _ in batch]
        missing = set(absorbed) - set(self.pool_ids)
        if missing:
            raise KeyError(f"ids not in pool: {sorted(missing)}")
        labels = dict(self.labels)
        sources = dict(self.sources)
        for sid, label, source in batch:
            labels[sid] = label
            sources[sid] = source
        remaining = tuple(sid for sid in self.pool_ids if sid not in set(absorbed))
        return replace(self, labeled_order=self.labeled_order + tuple(absorbed),
                       labels=labels, sources=sources, pool_ids=remaining,
                       cycle=cycle)


def init_al(dataset, rule: StoppingRule, seed: int,
            splits: EncodedSplits | None = None) -> PoolState:
    """Seed the labeled set with `rule.seed_size` uniformly drawn training
    samples (gold labels attached); the rest become the unlabeled pool."""
    if splits is None:
        splits = prepare_splits(dataset, seed)
    n = splits.train_size
    if n < rule.seed_size:
        raise DatasetTooSmall(
            f"training split has {n} samples, need >= {rule.seed_size} seeds")
    rng = derived_stream(seed, 4)
    picks = rng.permutation(n)[:rule.seed_size]
    seed_ids = [splits.train_ids[i] for i in sorted(picks)]
    seed_set = set(seed_ids)
    labels = {}
    for sid in seed_ids:
        gold = splits.gold_train.get(sid)
        if gold is None:
            raise MissingGold(f"seed sample {sid!r} has no gold label")
        labels[sid] = gold
    return PoolState(
        splits=splits, rule=rule,
        labeled_order=tuple(seed_ids), labels=labels,
        sources={sid: SEED_SOURCE for sid in seed_ids},
        pool_ids=tuple(sid for sid in splits.train_ids if sid not in seed_set),
        cycle=0,
        row_index={sid: i for i, sid in enumerate(splits.train_ids)},
    )
