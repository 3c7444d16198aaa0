"""Human label source: enqueue tasks, block until the console (or any
API client) resolves them."""

from typing import Sequence

from alsent.annotators.queue import TaskQueue
from alsent.annotators.types import (AnnotationOutcome, AnnotationRequest,
                                     AnnotationResult)


class HumanAnnotator:
    source = "human"
    name = "human"

    def __init__(self, queue: TaskQueue, poll_interval_s: float = 0.2,
                 timeout_s: float | None = None):
        self.queue = queue
        self.poll_interval_s = poll_interval_s
        self.timeout_s = timeout_s

    def annotate(self, requests: Sequence[AnnotationRequest]
                 ) -> list[AnnotationOutcome]:
        if not requests:
            return []
        task_ids = self.queue.enqueue(requests)
        tasks = self.queue.wait(task_ids, self.poll_interval_s, self.timeout_s)
        out: list[AnnotationOutcome] = []
        for request, tid in zip(requests, task_ids):
            task = tasks[tid]
            latency = None
            if task.resolved_at is not None and task.created_at:
                latency = max(0, int((task.resolved_at - task.created_at) * 1000))
            out.append(AnnotationResult(sample_id=request.sample_id,
                                        label=task.label, source=self.source,
                                        latency_ms=latency))
        return out
