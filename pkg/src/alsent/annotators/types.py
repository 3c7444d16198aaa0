"""Shared annotator datatypes.

An annotator turns AnnotationRequests into AnnotationResults. Requests
carry the ORIGINAL review text, never the preprocessed tokens: label
sources read natural language. A request that fails after retries comes
back as an AnnotationFailure in the same list position, so results and
failures always partition the input.
"""

from dataclasses import dataclass, field
from typing import Protocol, Sequence, Union

from alsent.errors import AnnotationError, SpecError


@dataclass(frozen=True)
class AnnotationRequest:
    sample_id: str
    raw_text: str
    label_set: tuple[str, ...]

    def __post_init__(self):
        if not self.label_set:
            raise SpecError("label_set must be non-empty")


@dataclass(frozen=True)
class AnnotationResult:
    sample_id: str
    label: str
    source: str  # "llm" | "human" | "oracle"
    raw_response: str | None = None
    latency_ms: int | None = None


@dataclass(frozen=True)
class AnnotationFailure:
    sample_id: str
    error: AnnotationError
    raw_response: str | None = None


AnnotationOutcome = Union[AnnotationResult, AnnotationFailure]


class Annotator(Protocol):
    name: str
    source: str

    def annotate(self, requests: Sequence[AnnotationRequest]
                 ) -> list[AnnotationOutcome]: ...


@dataclass(frozen=True)
class LlmConfig:
    """Chat-completions client settings. Temperature is pinned to 0 and
    the reply budget defaults to 15 tokens so the model answers with a
    bare label."""

    endpoint_url: str
    model_name: str
    api_key_env: str
    temperature: float = 0
    max_tokens: int = 15
    max_retries: int = 3  # total attempts per request
    parallelism: int = 4
    timeout_ms: int = 30000
    retry_backoff_ms: int = 250

    def __post_init__(self):
        if self.temperature != 0:
            raise SpecError("temperature must be exactly 0")
        if self.max_tokens <= 0:
            raise SpecError("max_tokens must be positive")
        if self.max_retries < 1:
            raise SpecError("max_retries counts total attempts, must be >= 1")
        if self.parallelism < 1:
            raise SpecError("parallelism must be >= 1")
        if self.timeout_ms <= 0:
            raise SpecError("timeout_ms must be positive")
        if self.retry_backoff_ms < 0:
            raise SpecError("retry_backoff_ms must be >= 0")


@dataclass(frozen=True)
class BenchmarkReport:
    """Per-annotator exact-match accuracy on one shared seeded draw."""

    dataset_id: str
    seed: int
    sample_ids: tuple[str, ...]
    accuracies: dict[str, float] = field(default_factory=dict)
    error_counts: dict[str, int] = field(default_factory=dict)
