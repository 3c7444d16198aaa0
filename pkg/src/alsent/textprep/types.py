"""Sample containers shared across the pipeline."""

from dataclasses import dataclass


@dataclass(frozen=True)
class RawSample:
    """One review as it appears in the dataset file."""

    id: str
    text: str
    gold_label: str | None = None


@dataclass(frozen=True)
class ProcessedSample:
    """A review after the cleaning pipeline: bare Arabic-letter tokens,
    first occurrences only. ``tokens`` may be empty; such samples are
    kept and encode to all-padding."""

    id: str
    tokens: tuple[str, ...]
