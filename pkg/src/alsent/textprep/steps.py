"""Text cleaning steps for Arabic reviews.

Each step is a pure function on str (or token lists); ``preprocess``
composes them in a fixed order. Steps are total: any unicode input is
accepted and narrowed down to bare Arabic-letter tokens.
"""

import re

from alsent.textprep.stemmer import stem_token
from alsent.textprep.stopwords import STOPWORDS

# ASCII digits, Arabic-Indic digits, and Extended (Persian) Arabic-Indic digits.
DIGITS_RE = re.compile(r"[0-9٠-٩۰-۹]")

# Everything that is not: an Arabic letter (U+0621-U+064A, U+0671-U+06D3),
# a diacritic (U+064B-U+065F, U+0670), tatweel (U+0640), or whitespace.
NON_ARABIC_RE = re.compile(r"[^ء-يٱ-ۓً-ٰٟـ\s]")

# ASCII punctuation plus the Arabic comma/semicolon/question mark/percent
# and common typographic quotes, dashes and ellipsis.
PUNCT_RE = re.compile(
    r"[!-/:-@\[-`{-~،؛؟٪"
    r"«»‘’“”–—…]"
)

# Harakat and related marks (U+064B-U+065F), superscript alef (U+0670),
# and tatweel (U+0640).
DIACRITICS_RE = re.compile(r"[ً-ٰٟـ]")


def remove_digits(text: str) -> str:
    """Delete ASCII and Arabic-Indic digit characters."""
    return DIGITS_RE.sub("", text)


def strip_non_arabic(text: str) -> str:
    """Delete every character outside the Arabic script, keeping whitespace.

    Letters, diacritics and tatweel survive; Latin text, emoji, digits
    and punctuation do not.
    """
    return NON_ARABIC_RE.sub("", text)


def strip_punctuation(text: str) -> str:
    """Delete ASCII and Arabic punctuation marks, preserving whitespace."""
    return PUNCT_RE.sub("", text)


def normalize(text: str) -> str:
    """Remove diacritical marks and tatweel. Letter forms are left alone."""
    return DIACRITICS_RE.sub("", text)


def tokenize(text: str) -> list[str]:
    """Split on unicode whitespace runs; never yields empty tokens."""
    return text.split()


def remove_stopwords(tokens: list[str]) -> list[str]:
    """Drop tokens found in the shipped stopword list, preserving order."""
    return [t for t in tokens if t not in STOPWORDS]


def stem(tokens: list[str]) -> list[str]:
    """Light-stem each token with the shipped affix rule table."""
    return [stem_token(t) for t in tokens]


def dedupe(tokens: list[str]) -> list[str]:
    """Keep only the first occurrence of each token."""
    seen = set()
    out = []
    for t in tokens:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def preprocess(text: str) -> list[str]:
    """Run the full cleaning pipeline on one raw review.

    Order: digits, non-Arabic, punctuation, diacritics, tokenize,
    stopwords, stem, dedupe. A review may legitimately come out empty;
    callers keep such samples rather than dropping them.
    """
    cleaned = normalize(strip_punctuation(strip_non_arabic(remove_digits(text))))
    return dedupe(stem(remove_stopwords(tokenize(cleaned))))
