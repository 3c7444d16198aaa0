"""Bridging helpers: raw samples -> token lists -> padded id arrays."""

import hashlib
import json

import numpy as np

from alsent.textprep.steps import preprocess
from alsent.textprep.types import ProcessedSample, RawSample
from alsent.textprep.vocab import Vocabulary, encode


def preprocess_samples(samples: list[RawSample]) -> list[ProcessedSample]:
    return [ProcessedSample(s.id, tuple(preprocess(s.text))) for s in samples]


def encode_samples(samples: list[RawSample], vocab: Vocabulary,
                   label_set: tuple[str, ...]) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Returns (ids [n, 100], label indices [n], sample ids). Samples
    lacking a gold label get label index -1; callers that train must
    not pass those in."""
    label_index = {label: i for i, label in enumerate(label_set)}
    xs, ys, sample_ids = [], [], []
    for sample in samples:
        tokens = preprocess(sample.text)
        xs.append(encode(tokens, vocab))
        ys.append(label_index[sample.gold_label] if sample.gold_label else -1)
        sample_ids.append(sample.id)
    x = np.asarray(xs, dtype=np.int64) if xs else np.zeros((0, 100), dtype=np.int64)
    return x, np.asarray(ys, dtype=np.int64), sample_ids


def vocab_fingerprint(vocab: Vocabulary) -> str:
    payload = json.dumps(sorted(vocab.word_to_index.items()), ensure_ascii=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def split_fingerprint(ids: list[str], encoded: np.ndarray) -> str:
    """Hash of a split's sample ids plus their encoded rows; used to verify
    that two runs evaluated against byte-identical data."""
    digest = hashlib.sha256()
    for sample_id, row in zip(ids, encoded):
        digest.update(sample_id.encode("utf-8"))
        digest.update(row.tobytes())
    return digest.hexdigest()
