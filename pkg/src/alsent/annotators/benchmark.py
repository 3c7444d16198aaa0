"""Annotator shoot-out on one shared seeded draw.

Every annotator sees the IDENTICAL sample set, so accuracies are
comparable; unparseable or failed responses count as wrong answers.
"""

from typing import Sequence

from alsent.annotators.types import (AnnotationRequest, AnnotationResult,
                                     Annotator, BenchmarkReport)
from alsent.errors import MissingGold, SpecError
from alsent.nn.rng import rng_stream


def benchmark_annotators(dataset, n: int, annotators: Sequence[Annotator],
                         seed: int) -> BenchmarkReport:
    if not 1 <= n <= len(dataset.samples):
        raise SpecError(f"n must be in [1, {len(dataset.samples)}], got {n}")
    rng = rng_stream(seed)
    picks = rng.permutation(len(dataset.samples))[:n]
    samples = [dataset.samples[i] for i in picks]
    for sample in samples:
        if sample.gold_label is None:
            raise MissingGold(f"sample {sample.id!r} has no gold label")
    requests = [AnnotationRequest(sample_id=s.id, raw_text=s.text,
                                  label_set=dataset.label_set)
                for s in samples]
    accuracies: dict[str, float] = {}
    error_counts: dict[str, int] = {}
    for annotator in annotators:
        outcomes = annotator.annotate(requests)
        correct = 0
        failures = 0
        for outcome, sample in zip(outcomes, samples):
            if isinstance(outcome, AnnotationResult):
                correct += outcome.label == sample.gold_label
            else:
                failures += 1
        accuracies[annotator.name] = correct / n
        error_counts[annotator.name] = failures
    return BenchmarkReport(dataset_id=dataset.dataset_id, seed=seed,
                           sample_ids=tuple(s.id for s in samples),
                           accuracies=accuracies, error_counts=error_counts)
