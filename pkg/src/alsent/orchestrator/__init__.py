"""Experiment phases: baseline runs, annotator benchmarks, the labeling
loop, run persistence, reporting, and the HTTP service."""

from alsent.orchestrator.baseline import run_baseline
from alsent.orchestrator.loop import (find_matching_cycle, run_active_learning,
                                      run_cycle)
from alsent.orchestrator.pool import EncodedSplits, PoolState, init_al, prepare_splits
from alsent.orchestrator.records import (SCHEMA_VERSION, CycleRecord, RunRecord,
                                         RunStore, StoppingRule, new_run_record)
from alsent.orchestrator.report import report, report_csv
from alsent.orchestrator.service import create_app

__all__ = [
    "SCHEMA_VERSION", "CycleRecord", "EncodedSplits", "PoolState", "RunRecord",
    "RunStore", "StoppingRule", "create_app", "find_matching_cycle", "init_al",
    "new_run_record", "prepare_splits", "report", "report_csv",
    "run_active_learning", "run_baseline", "run_cycle",
]
