"""Persistent run records.

One JSON document per run, filename = run_id, schema-versioned. Run ids
are derived from the run's full configuration, so repeating a run with
identical inputs overwrites the same file with identical bytes (only
the timestamps differ), which is what makes replay comparisons and
crash-resume trivial.
"""

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from alsent.errors import RunNotFound, SpecError
from alsent.models.spec import ModelSpec, TrainConfig

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class StoppingRule:
    max_cycles: int = 25
    batch_size: int = 50
    seed_size: int = 50
    target_accuracy: float | None = None

    def __post_init__(self):
        if self.max_cycles < 1:
            raise SpecError("max_cycles must be >= 1")
        if self.batch_size < 1 or self.seed_size < 1:
            raise SpecError("batch_size and seed_size must be >= 1")


@dataclass(frozen=True)
class CycleRecord:
    """One labeling cycle: the model trained on `label_count` labels and
    its test metrics. Cycle 0 is reserved for baselines (full split)."""

    cycle: int
    label_count: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    annotation_sources: dict[str, int] = field(default_factory=dict)
    flagged_fallbacks: int = 0

    def to_json(self) -> dict:
        return {"cycle": self.cycle, "label_count": self.label_count,
                "accuracy": self.accuracy, "precision": self.precision,
                "recall": self.recall, "f1": self.f1,
                "annotation_sources": dict(sorted(self.annotation_sources.items())),
                "flagged_fallbacks": self.flagged_fallbacks}

    @classmethod
    def from_json(cls, row: dict) -> "CycleRecord":
        return cls(cycle=row["cycle"], label_count=row["label_count"],
                   accuracy=row["accuracy"], precision=row["precision"],
                   recall=row["recall"], f1=row["f1"],
                   annotation_sources=dict(row["annotation_sources"]),
                   flagged_fallbacks=row["flagged_fallbacks"])


RUN_KINDS = ("baseline", "al_human", "al_llm", "al_oracle")


@dataclass
class RunRecord:
    run_id: str
    kind: str
    dataset_id: str
    dataset_hash: str
    spec: ModelSpec
    config: TrainConfig
    rule: StoppingRule | None
    annotator: str | None
    vocab_hash: str
    test_hash: str
    train_size: int
    cycles: list[CycleRecord] = field(default_factory=list)
    chosen_cycle: int | None = None
    created_at: str = ""
    updated_at: str = ""

    def __post_init__(self):
        if self.kind not in RUN_KINDS:
            raise SpecError(f"unknown run kind {self.kind!r}")

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "run_id": self.run_id,
            "kind": self.kind,
            "dataset_id": self.dataset_id,
            "dataset_hash": self.dataset_hash,
            "spec": asdict(self.spec),
            "config": asdict(self.config),
            "rule": None if self.rule is None else asdict(self.rule),
            "annotator": self.annotator,
            "vocab_hash": self.vocab_hash,
            "test_hash": self.test_hash,
            "train_size": self.train_size,
            "cycles": [c.to_json() for c in self.cycles],
            "chosen_cycle": self.chosen_cycle,
            "created_at": self.created_at,
            "updated_at": self.updated_at,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "RunRecord":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise SpecError(f"unsupported run schema {doc.get('schema_version')!r}")
        spec = dict(doc["spec"])
        spec["units"] = tuple(spec["units"])
        return cls(
            run_id=doc["run_id"], kind=doc["kind"],
            dataset_id=doc["dataset_id"], dataset_hash=doc["dataset_hash"],
            spec=ModelSpec(**spec), config=TrainConfig(**doc["config"]),
            rule=None if doc["rule"] is None else StoppingRule(**doc["rule"]),
            annotator=doc["annotator"], vocab_hash=doc["vocab_hash"],
            test_hash=doc["test_hash"], train_size=doc["train_size"],
            cycles=[CycleRecord.from_json(c) for c in doc["cycles"]],
            chosen_cycle=doc["chosen_cycle"],
            created_at=doc["created_at"], updated_at=doc["updated_at"],
        )


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def derive_run_id(kind: str, dataset_id: str, dataset_hash: str,
                  spec: ModelSpec, config: TrainConfig,
                  rule: StoppingRule | None, annotator: str | None) -> str:
    payload = json.dumps({
        "kind": kind, "dataset_hash": dataset_hash, "spec": asdict(spec),
        "config": asdict(config),
        "rule": None if rule is None else asdict(rule),
        "annotator": annotator,
    }, sort_keys=True)
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()[:10]
    return f"{kind}-{dataset_id}-{spec.arch}-s{config.seed}-{digest}"


def new_run_record(kind: str, dataset, spec: ModelSpec, config: TrainConfig,
                   rule: StoppingRule | None, annotator: str | None,
                   vocab_hash: str, test_hash: str, train_size: int) -> RunRecord:
    run_id = derive_run_id(kind, dataset.dataset_id, dataset.content_hash,
                           spec, config, rule, annotator)
    stamp = _now()
    return RunRecord(run_id=run_id, kind=kind, dataset_id=dataset.dataset_id,
                     dataset_hash=dataset.content_hash, spec=spec, config=config,
                     rule=rule, annotator=annotator, vocab_hash=vocab_hash,
                     test_hash=test_hash, train_size=train_size,
                     created_at=stamp, updated_at=stamp)


class RunStore:
    """Directory of run documents with atomic writes."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, run_id: str) -> Path:
        return self.root / f"{run_id}.json"

    def save(self, record: RunRecord) -> Path:
        record.updated_at = _now()
        path = self.path_for(record.run_id)
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(record.to_json(), ensure_ascii=False,
                                  sort_keys=True, indent=1),
                       encoding="utf-8")
        os.replace(tmp, path)
        return path

    def load(self, run_id: str) -> RunRecord:
        path = self.path_for(run_id)
        if not path.exists():
            raise RunNotFound(f"no run record {run_id!r} under {self.root}")
        return RunRecord.from_json(json.loads(path.read_text(encoding="utf-8")))

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))
