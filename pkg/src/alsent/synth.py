"""Synthetic Arabic review corpus with planted sentiment keywords.

Construction: every review is a bag of neutral domain filler words
(restaurant/service vocabulary) plus 1-3 keywords drawn from its
class's keyword set, shuffled into a random order. The keyword sets are
the ONLY class signal; fillers appear in both classes with equal
probability. All words are chosen so the preprocessing pipeline keeps
them: they survive the character filters, are not stopwords, and their
stems stay distinct across classes and from every filler stem (checked
at generation time). A linear scan of the embedded sequence therefore
suffices for perfect classification, which is what makes the corpus a
fair end-to-end probe: a correct training stack should score nearly
1.0, and failures point at the stack rather than the data.

The default draw is 2,000 reviews, exactly balanced between Positive
and Negative, ids syn-0000 through syn-1999, deterministic in the seed.
"""

from alsent.errors import SpecError
from alsent.nn.rng import rng_stream
from alsent.textprep.dataset import Dataset, dataset_from_samples
from alsent.textprep.steps import preprocess
from alsent.textprep.types import RawSample

POSITIVE_KEYWORDS = (
    "ممتاز", "رائع", "جميل", "لذيذ", "سريع", "نظيف", "مذهل", "محترم",
)
NEGATIVE_KEYWORDS = (
    "بطيء", "وسخ", "مقرف", "فاشل", "مزعج", "بارد", "مهمل", "كارثي",
)
FILLERS = (
    "الطعام", "الخدمة", "المطعم", "الطلب", "السعر", "المكان", "وجبة",
    "قهوة", "دجاج", "سمك", "خبز", "اليوم", "صباح", "مساء",
)


def _stem_of(word: str) -> str:
    tokens = preprocess(word)
    if len(tokens) != 1:
        raise SpecError(f"planted word {word!r} does not survive preprocessing")
    return tokens[0]


def check_keyword_separation() -> None:
    """Fail fast if preprocessing would blur the planted signal."""
    pos = {_stem_of(w) for w in POSITIVE_KEYWORDS}
    neg = {_stem_of(w) for w in NEGATIVE_KEYWORDS}
    filler = set()
    for w in FILLERS:
        tokens = preprocess(w)  # fillers may be stopwords and vanish
        filler.update(tokens)
    if len(pos) != len(POSITIVE_KEYWORDS) or len(neg) != len(NEGATIVE_KEYWORDS):
        raise SpecError("keyword stems collide within a class")
    overlap = (pos & neg) | (pos & filler) | (neg & filler)
    if overlap:
        raise SpecError(f"planted stems are not separable: {sorted(overlap)}")


def generate_reviews(n: int = 2000, seed: int = 0) -> Dataset:
    """Balanced binary corpus of n reviews (n even), deterministic in seed."""
    if n < 2 or n % 2:
        raise SpecError(f"n must be an even number >= 2, got {n}")
    check_keyword_separation()
    rng = rng_stream(seed)
    labels = ["Positive"] * (n // 2) + ["Negative"] * (n // 2)
    order = rng.permutation(n)
    samples = []
    for i in range(n):
        label = labels[order[i]]
        keywords = POSITIVE_KEYWORDS if label == "Positive" else NEGATIVE_KEYWORDS
        n_fill = int(rng.integers(4, 10))
        n_kw = int(rng.integers(1, 4))
        words = [FILLERS[j] for j in rng.integers(0, len(FILLERS), size=n_fill)]
        words += [keywords[j] for j in rng.choice(len(keywords), size=n_kw,
                                                  replace=False)]
        perm = rng.permutation(len(words))
        text = " ".join(words[j] for j in perm)
        samples.append(RawSample(id=f"syn-{i:04d}", text=text, gold_label=label))
    return dataset_from_samples(f"synthetic-{seed}", samples)
