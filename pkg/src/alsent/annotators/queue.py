"""File-backed task queue behind the human annotation endpoints.

State is one JSON document guarded by a file lock, so the HTTP service
and the labeling loop can live in different processes and a crash loses
nothing: pending tasks are still pending after restart. Task ids are a
persisted counter, which keeps restarts from renumbering anything.

A sample is annotated at most once per run, so `enqueue` reuses any
existing task for the same sample id instead of duplicating it; that is
what lets an interrupted cycle resume where it stopped.
"""

import json
import os
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from filelock import FileLock

from alsent.annotators.types import AnnotationRequest
from alsent.errors import Cancelled, InvalidLabel, UnknownTask

QUEUE_VERSION = 1


@dataclass(frozen=True)
class Task:
    task_id: str
    sample_id: str
    text: str
    label_set: tuple[str, ...]
    status: str  # "pending" | "done"
    label: str | None = None
    created_at: float = 0.0
    resolved_at: float | None = None

    def to_json(self) -> dict:
        return {"task_id": self.task_id, "sample_id": self.sample_id,
                "text": self.text, "label_set": list(self.label_set),
                "status": self.status, "label": self.label,
                "created_at": self.created_at, "resolved_at": self.resolved_at}

    @classmethod
    def from_json(cls, row: dict) -> "Task":
        return cls(task_id=row["task_id"], sample_id=row["sample_id"],
                   text=row["text"], label_set=tuple(row["label_set"]),
                   status=row["status"], label=row["label"],
                   created_at=row["created_at"], resolved_at=row["resolved_at"])


def _empty_state() -> dict:
    return {"version": QUEUE_VERSION, "cancelled": False, "next_seq": 0,
            "order": [], "tasks": {}}


class TaskQueue:
    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self.lock = FileLock(str(self.path) + ".lock")

    def _load(self) -> dict:
        if not self.path.exists():
            return _empty_state()
        return json.loads(self.path.read_text(encoding="utf-8"))

    def _save(self, state: dict) -> None:
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        tmp.write_text(json.dumps(state, ensure_ascii=False, indent=1),
                       encoding="utf-8")
        os.replace(tmp, self.path)

    def enqueue(self, requests: Sequence[AnnotationRequest]) -> list[str]:
        """Create pending tasks; an existing task for the same sample id
        (pending or done) is reused. Returns task ids in request order."""
        with self.lock:
            state = self._load()
            by_sample = {row["sample_id"]: tid
                         for tid, row in state["tasks"].items()}
            ids = []
            now = time.time()
            for request in requests:
                existing = by_sample.get(request.sample_id)
                if existing is not None:
                    ids.append(existing)
                    continue
                task_id = f"t{state['next_seq']:06d}"
                state["next_seq"] += 1
                task = Task(task_id=task_id, sample_id=request.sample_id,
                            text=request.raw_text, label_set=request.label_set,
                            status="pending", created_at=now)
                state["tasks"][task_id] = task.to_json()
                state["order"].append(task_id)
                by_sample[request.sample_id] = task_id
                ids.append(task_id)
            self._save(state)
            return ids

    def tasks(self) -> list[Task]:
        with self.lock:
            state = self._load()
        return [Task.from_json(state["tasks"][tid]) for tid in state["order"]]

    def pending(self) -> list[Task]:
        return [t for t in self.tasks() if t.status == "pending"]

    def get(self, task_id: str) -> Task:
        with self.lock:
            state = self._load()
        row = state["tasks"].get(task_id)
        if row is None:
            raise UnknownTask(f"no task {task_id!r}")
        return Task.from_json(row)

    def resolve(self, task_id: str, label: str) -> Task:
        """Attach a label to a pending task. Unknown or already-resolved
        ids raise UnknownTask; a label outside the task's label set
        raises InvalidLabel and leaves the queue unchanged."""
        with self.lock:
            state = self._load()
            row = state["tasks"].get(task_id)
            if row is None or row["status"] != "pending":
                raise UnknownTask(f"no pending task {task_id!r}")
            if label not in row["label_set"]:
                raise InvalidLabel(
                    f"label {label!r} not in {tuple(row['label_set'])}")
            row["status"] = "done"
            row["label"] = label
            row["resolved_at"] = time.time()
            self._save(state)
            return Task.from_json(row)

    def cancel(self) -> None:
        """Abort flag for waiters; pending tasks stay in the file."""
        with self.lock:
            state = self._load()
            state["cancelled"] = True
            self._save(state)

    def is_cancelled(self) -> bool:
        with self.lock:
            return bool(self._load()["cancelled"])

    def wait(self, task_ids: Sequence[str], poll_interval_s: float = 0.2,
             timeout_s: float | None = None) -> dict[str, Task]:
        """Block until every listed task is resolved. Raises Cancelled if
        the queue is cancelled (or the optional timeout elapses) first."""
        deadline = None if timeout_s is None else time.monotonic() + timeout_s
        wanted = list(task_ids)
        while True:
            with self.lock:
                state = self._load()
            if state["cancelled"]:
                raise Cancelled("annotation queue was cancelled")
            rows = {}
            all_done = True
            for tid in wanted:
                row = state["tasks"].get(tid)
                if row is None:
                    raise UnknownTask(f"no task {tid!r}")
                if row["status"] != "done":
                    all_done = False
                    break
                rows[tid] = Task.from_json(row)
            if all_done:
                return rows
            if deadline is not None and time.monotonic() >= deadline:
                raise Cancelled("timed out waiting for annotations")
            time.sleep(poll_interval_s)
