"""Dataset file loading and label bookkeeping.

Datasets are UTF-8 CSV files with header ``id,text,label`` (RFC-4180
quoting). Label names come from the fixed sentiment trio; a dataset's
label set is whichever of the three its rows actually use, in canonical
order.
"""

import csv
import hashlib
import io
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from alsent.errors import DatasetError
from alsent.textprep.types import RawSample

LABEL_ORDER = ("Negative", "Neutral", "Positive")


@dataclass(frozen=True)
class Dataset:
    dataset_id: str
    samples: tuple[RawSample, ...]
    label_set: tuple[str, ...]
    content_hash: str

    def gold_labels(self) -> dict[str, str]:
        """id→label map over the samples that have gold labels."""
        return {s.id: s.gold_label for s in self.samples if s.gold_label is not None}

    def majority_label(self) -> str:
        """Most frequent gold label; ties break toward canonical order."""
        counts = Counter(s.gold_label for s in self.samples if s.gold_label is not None)
        if not counts:
            raise DatasetError("dataset has no gold labels")
        return max(self.label_set, key=lambda lab: counts.get(lab, 0))


def _parse_rows(rows: list[list[str]], dataset_id: str) -> Dataset:
    if not rows or [h.strip() for h in rows[0]] != ["id", "text", "label"]:
        raise DatasetError("expected CSV header 'id,text,label'")
    samples = []
    seen_ids = set()
    present = set()
    for lineno, row in enumerate(rows[1:], 2):
        if len(row) != 3:
            raise DatasetError(f"row {lineno}: expected 3 fields, got {len(row)}")
        sample_id, text, label = row
        if not sample_id:
            raise DatasetError(f"row {lineno}: empty id")
        if sample_id in seen_ids:
            raise DatasetError(f"row {lineno}: duplicate id {sample_id!r}")
        if not text:
            raise DatasetError(f"row {lineno}: empty text for id {sample_id!r}")
        gold = label or None
        if gold is not None and gold not in LABEL_ORDER:
            raise DatasetError(f"row {lineno}: unknown label {gold!r}")
        seen_ids.add(sample_id)
        if gold is not None:
            present.add(gold)
        samples.append(RawSample(sample_id, text, gold))
    if not samples:
        raise DatasetError("dataset has no rows")
    label_set = tuple(lab for lab in LABEL_ORDER if lab in present)
    if len(label_set) < 2:
        raise DatasetError("dataset must use at least two labels")
    digest = hashlib.sha256(repr(rows).encode("utf-8")).hexdigest()
    return Dataset(dataset_id, tuple(samples), label_set, digest)


def load_dataset_csv(path: str | Path) -> Dataset:
    path = Path(path)
    raw = path.read_bytes()
    rows = list(csv.reader(io.StringIO(raw.decode("utf-8"))))
    dataset = _parse_rows(rows, dataset_id=path.stem)
    # Hash the file bytes so the run record pins the exact input.
    return Dataset(dataset.dataset_id, dataset.samples, dataset.label_set,
                   hashlib.sha256(raw).hexdigest())


def dataset_from_samples(dataset_id: str, samples: list[RawSample]) -> Dataset:
    """Build an in-memory dataset (synthetic corpora, tests)."""
    rows = [["id", "text", "label"]]
    rows += [[s.id, s.text, s.gold_label or ""] for s in samples]
    return _parse_rows(rows, dataset_id)


def write_dataset_csv(dataset: Dataset, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "text", "label"])
        for s in dataset.samples:
            writer.writerow([s.id, s.text, s.gold_label or ""])
