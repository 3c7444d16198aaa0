"""Arabic text preprocessing: cleaning steps, vocabulary, encoding."""

from alsent.textprep.dataset import (
    Dataset,
    LABEL_ORDER,
    dataset_from_samples,
    load_dataset_csv,
    write_dataset_csv,
)
from alsent.textprep.steps import (
    dedupe,
    normalize,
    preprocess,
    remove_digits,
    remove_stopwords,
    stem,
    strip_non_arabic,
    strip_punctuation,
    tokenize,
)
from alsent.textprep.stemmer import stem_token
from alsent.textprep.stopwords import STOPWORDS
from alsent.textprep.types import ProcessedSample, RawSample
from alsent.textprep.vocab import (
    MAX_VOCAB,
    OOV_INDEX,
    PAD_INDEX,
    SEQ_LEN,
    EncodedSample,
    Vocabulary,
    build_vocab,
    encode,
)

__all__ = [
    "Dataset", "LABEL_ORDER", "dataset_from_samples", "load_dataset_csv",
    "write_dataset_csv", "dedupe", "normalize", "preprocess", "remove_digits",
    "remove_stopwords", "stem", "strip_non_arabic", "strip_punctuation",
    "tokenize", "stem_token", "STOPWORDS", "ProcessedSample", "RawSample",
    "MAX_VOCAB", "OOV_INDEX", "PAD_INDEX", "SEQ_LEN", "EncodedSample",
    "Vocabulary", "build_vocab", "encode",
]
