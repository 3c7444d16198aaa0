"""Gold-label replay annotator, standing in for a perfect human."""

from typing import Mapping, Sequence

from alsent.annotators.types import (AnnotationOutcome, AnnotationRequest,
                                     AnnotationResult)
from alsent.errors import MissingGold, SpecError


class OracleAnnotator:
    source = "oracle"
    name = "oracle"

    def __init__(self, gold: Mapping[str, str]):
        self.gold = dict(gold)

    @classmethod
    def from_dataset(cls, dataset) -> "OracleAnnotator":
        return cls(dataset.gold_labels())

    def annotate(self, requests: Sequence[AnnotationRequest]
                 ) -> list[AnnotationOutcome]:
        out: list[AnnotationOutcome] = []
        for request in requests:
            label = self.gold.get(request.sample_id)
            if label is None:
                raise MissingGold(f"no gold label for sample {request.sample_id!r}")
            if label not in request.label_set:
                raise SpecError(
                    f"gold label {label!r} outside label set {request.label_set}")
            out.append(AnnotationResult(sample_id=request.sample_id, label=label,
                                        source=self.source))
        return out
