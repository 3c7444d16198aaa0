"""Bundled Arabic stop-word list.

The list ships as a data file so it can be audited and versioned
independently of the code; golden tests pin pipeline behavior to it.
"""

from pathlib import Path

_DATA_FILE = Path(__file__).parent / "data" / "stopwords.txt"


def load_stopwords(path: Path = _DATA_FILE) -> frozenset[str]:
    """Read one word per line; blank lines and ``#`` comments are skipped."""
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        word = line.split("#", 1)[0].strip()
        if word:
            words.append(word)
    return frozenset(words)


STOPWORDS = load_stopwords()
