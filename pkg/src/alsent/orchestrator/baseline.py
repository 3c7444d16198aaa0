"""Non-active baseline: train once on the full training split.

Its accuracy is the target the labeling loop tries to match with fewer
labels. The record carries a single cycle-0 entry whose label_count is
the training-split size.
"""

from alsent.models.metrics import evaluate
from alsent.models.network import build_model
from alsent.models.train import train
from alsent.nn.rng import rng_stream
from alsent.orchestrator.pool import prepare_splits
from alsent.orchestrator.records import (CycleRecord, RunRecord, RunStore,
                                         new_run_record)


def run_baseline(dataset, spec, config, store: RunStore | None = None) -> RunRecord:
    splits = prepare_splits(dataset, config.seed)
    model = build_model(spec, rng_stream(config.seed))
    trained = train(model, (splits.x_train, splits.y_train),
                    (splits.x_val, splits.y_val), config)
    metrics = evaluate(trained.model, (splits.x_test, splits.y_test))
    record = new_run_record(kind="baseline", dataset=dataset, spec=spec,
                            config=config, rule=None, annotator=None,
                            vocab_hash=splits.vocab_hash,
                            test_hash=splits.test_hash,
                            train_size=splits.train_size)
    record.cycles.append(CycleRecord(
        cycle=0, label_count=splits.train_size,
        accuracy=metrics.accuracy, precision=metrics.precision,
        recall=metrics.recall, f1=metrics.f1,
        annotation_sources={"gold": splits.train_size}, flagged_fallbacks=0))
    if store is not None:
        store.save(record)
    return record
