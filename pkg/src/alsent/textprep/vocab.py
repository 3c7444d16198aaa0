"""Vocabulary construction and fixed-length integer encoding."""

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from alsent.errors import EmptyCorpus
from alsent.textprep.types import ProcessedSample

PAD_INDEX = 0
OOV_INDEX = 1
MAX_VOCAB = 2000
SEQ_LEN = 100


@dataclass(frozen=True)
class Vocabulary:
    """Word→index map; 0 and 1 are reserved for padding and OOV."""

    word_to_index: dict[str, int]
    max_size: int = MAX_VOCAB
    pad_index: int = PAD_INDEX
    oov_index: int = OOV_INDEX

    @property
    def size(self) -> int:
        """Highest assigned index plus one; every encoded id is below this."""
        return 2 + len(self.word_to_index)

    def index_of(self, token: str) -> int:
        return self.word_to_index.get(token, self.oov_index)


@dataclass(frozen=True)
class EncodedSample:
    id: str
    ids: tuple[int, ...]
    label_index: int


def build_vocab(corpus: Iterable[ProcessedSample], max_size: int = MAX_VOCAB) -> Vocabulary:
    """Rank words by corpus frequency (ties lexicographic), keep the top
    max_size − 2, and assign indices from 2 upward.

    Call this on the training split only; encoding other splits through
    the resulting vocabulary is what keeps them leak-free.
    """
    samples = list(corpus)
    if not samples:
        raise EmptyCorpus("cannot build a vocabulary from zero samples")
    counts = Counter(token for sample in samples for token in sample.tokens)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    kept = ranked[: max_size - 2]
    return Vocabulary({word: i + 2 for i, (word, _) in enumerate(kept)}, max_size=max_size)


def encode(tokens: Iterable[str], vocab: Vocabulary, length: int = SEQ_LEN) -> tuple[int, ...]:
    """Map tokens to indices, pre-truncate to the LAST `length` tokens,
    and pre-pad with pad_index up to exactly `length`."""
    tail = list(tokens)[-length:]
    ids = [vocab.index_of(t) for t in tail]
    return tuple([vocab.pad_index] * (length - len(ids)) + ids)
