"""HTTP surface for annotation and run inspection.

Four endpoints, JSON in and out:
  GET  /api/tasks                 pending annotation tasks, id order
  POST /api/tasks/{id}/label      resolve one task exactly once
  GET  /api/run/{id}              full stored run record
  GET  /api/run/{id}/progress     latest-cycle counters for dashboards

Stale or unknown task ids answer 404 so a console that lost a race with
another annotator can drop the card; a label outside the task's label
set answers 422 and changes nothing.
"""

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from alsent.annotators.queue import TaskQueue
from alsent.errors import InvalidLabel, RunNotFound, UnknownTask
from alsent.orchestrator.records import RunStore


class LabelBody(BaseModel):
    label: str


def create_app(queue: TaskQueue, store: RunStore) -> FastAPI:
    app = FastAPI(title="annotation service")

    @app.get("/api/tasks")
    def list_tasks() -> list[dict]:
        return [{"task_id": t.task_id, "text": t.text,
                 "label_set": list(t.label_set)}
                for t in queue.pending()]

    @app.post("/api/tasks/{task_id}/label")
    def post_label(task_id: str, body: LabelBody) -> dict:
        try:
            task = queue.resolve(task_id, body.label)
        except UnknownTask as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except InvalidLabel as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"task_id": task.task_id, "status": task.status,
                "label": task.label}

    @app.get("/api/run/{run_id}")
    def get_run(run_id: str) -> dict:
        try:
            return store.load(run_id).to_json()
        except RunNotFound as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    @app.get("/api/run/{run_id}/progress")
    def get_progress(run_id: str) -> dict:
        try:
            record = store.load(run_id)
        except RunNotFound as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        last = record.cycles[-1] if record.cycles else None
        return {
            "run_id": record.run_id,
            "kind": record.kind,
            "cycle": last.cycle if last else 0,
            "label_count": last.label_count if last else 0,
            "last_accuracy": last.accuracy if last else None,
            "pending_tasks": len(queue.pending()),
            "chosen_cycle": record.chosen_cycle,
        }

    return app
