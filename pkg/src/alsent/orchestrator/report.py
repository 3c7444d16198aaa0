"""Comparison document over stored runs: per-cycle accuracy series plus
baseline reference lines, as plot-ready JSON and CSV. Values are copied
from the records verbatim; no metric is recomputed here."""

import csv
import io

from alsent.errors import SpecError
from alsent.orchestrator.records import RunStore


def report(run_ids: list[str], store: RunStore) -> dict:
    if not run_ids:
        raise SpecError("report needs at least one run id")
    series = []
    references = {}
    for run_id in run_ids:
        record = store.load(run_id)
        points = [{"cycle": c.cycle, "label_count": c.label_count,
                   "accuracy": c.accuracy, "precision": c.precision,
                   "recall": c.recall, "f1": c.f1}
                  for c in record.cycles]
        series.append({"run_id": record.run_id, "kind": record.kind,
                       "dataset_id": record.dataset_id,
                       "annotator": record.annotator,
                       "chosen_cycle": record.chosen_cycle,
                       "points": points})
        if record.kind == "baseline" and record.cycles:
            references[record.run_id] = record.cycles[0].accuracy
    return {"series": series, "baseline_references": references}


def report_csv(doc: dict) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["run_id", "kind", "cycle", "label_count", "accuracy",
                     "precision", "recall", "f1"])
    for entry in doc["series"]:
        for point in entry["points"]:
            writer.writerow([entry["run_id"], entry["kind"], point["cycle"],
                             point["label_count"], point["accuracy"],
                             point["precision"], point["recall"], point["f1"]])
    return out.getvalue()
