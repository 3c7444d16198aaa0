"""The labeling loop: train, score the pool, select, annotate, absorb,
evaluate, one cycle at a time, transactionally.

Each cycle trains a FRESHLY initialized model (per-cycle seed) on the
current labeled set; warm starts would entangle cycles through
optimizer state. CycleRecord.label_count is the number of labels that
model was trained on, so cycle 1 reports the seed-set size.

Annotation failures that survive the annotator's own retries are filled
with the dataset's majority class under source "fallback" and counted
in flagged_fallbacks; errors outside that policy (auth, missing gold,
cancellation) abort the cycle with the state unchanged.
"""

from collections import Counter
from dataclasses import replace

from alsent.annotators.types import (AnnotationFailure, AnnotationRequest,
                                     AnnotationResult, Annotator)
from alsent.errors import SpecError
from alsent.models.metrics import evaluate
from alsent.models.network import build_model
from alsent.models.train import train
from alsent.nn.rng import derived_stream
from alsent.orchestrator.pool import PoolState, init_al, prepare_splits
from alsent.orchestrator.records import (CycleRecord, RunRecord, RunStore,
                                         StoppingRule, new_run_record)
from alsent.uncertainty import score_pool, select_batch

FALLBACK_SOURCE = "fallback"


def run_cycle(state: PoolState, spec, config,
              annotator: Annotator) -> tuple[PoolState, CycleRecord]:
    splits = state.splits
    cycle = state.cycle + 1
    label_count = len(state.labeled_order)

    model = build_model(spec, derived_stream(config.seed, 3, cycle))
    trained = train(model, state.labeled_matrix(),
                    (splits.x_val, splits.y_val), config)

    batch: list[tuple[str, str, str]] = []
    flagged = 0
    if state.pool_ids:
        probs = trained.model.predict_proba(state.pool_matrix())
        scores = score_pool(state.pool_ids, probs)
        chosen = select_batch(scores, min(state.rule.batch_size,
                                          len(state.pool_ids)))
        requests = [AnnotationRequest(sample_id=sid,
                                      raw_text=splits.raw_texts[sid],
                                      label_set=splits.label_set)
                    for sid in chosen]
        outcomes = annotator.annotate(requests)
        if len(outcomes) != len(requests):
            raise SpecError("annotator returned a different number of outcomes")
        for request, outcome in zip(requests, outcomes):
            if outcome.sample_id != request.sample_id:
                raise SpecError("annotator reordered outcomes")
            if isinstance(outcome, AnnotationResult):
                if outcome.label not in splits.label_set:
                    raise SpecError(f"label {outcome.label!r} outside label set")
                batch.append((outcome.sample_id, outcome.label, outcome.source))
            elif isinstance(outcome, AnnotationFailure):
                batch.append((outcome.sample_id, splits.majority_label,
                              FALLBACK_SOURCE))
                flagged += 1
            else:
                raise SpecError(f"unexpected outcome type {type(outcome)!r}")

    new_state = state.absorb(batch, cycle) if batch else replace(state, cycle=cycle)
    metrics = evaluate(trained.model, (splits.x_test, splits.y_test))
    record = CycleRecord(
        cycle=cycle, label_count=label_count,
        accuracy=metrics.accuracy, precision=metrics.precision,
        recall=metrics.recall, f1=metrics.f1,
        annotation_sources=dict(Counter(source for _, _, source in batch)),
        flagged_fallbacks=flagged)
    return new_state, record


def find_matching_cycle(record: RunRecord, target: float) -> int | None:
    """Earliest cycle whose accuracy matches the target at the 2-decimal
    reporting precision; None when no cycle reaches it."""
    for cycle_record in record.cycles:
        if round(cycle_record.accuracy, 2) >= round(target, 2):
            return cycle_record.cycle
    return None


def run_active_learning(dataset, spec, config, annotator: Annotator,
                        rule: StoppingRule,
                        store: RunStore | None = None) -> RunRecord:
    """Drive cycles until max_cycles, or one final cycle after the pool
    empties (training on everything labeled so far). The record is
    persisted after every cycle, so a crashed or cancelled run keeps all
    completed cycles."""
    splits = prepare_splits(dataset, config.seed)
    state = init_al(dataset, rule, config.seed, splits=splits)
    record = new_run_record(kind=f"al_{annotator.source}", dataset=dataset,
                            spec=spec, config=config, rule=rule,
                            annotator=annotator.name,
                            vocab_hash=splits.vocab_hash,
                            test_hash=splits.test_hash,
                            train_size=splits.train_size)
    if store is not None:
        store.save(record)
    while state.cycle < rule.max_cycles:
        pool_was_empty = not state.pool_ids
        state, cycle_record = run_cycle(state, spec, config, annotator)
        record.cycles.append(cycle_record)
        if rule.target_accuracy is not None:
            record.chosen_cycle = find_matching_cycle(record, rule.target_accuracy)
        if store is not None:
            store.save(record)
        if pool_was_empty:
            break  # that was the final train-on-everything cycle
    return record
