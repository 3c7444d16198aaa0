"""Chat-completions annotator.

Speaks the OpenAI-compatible wire shape: POST {endpoint_url} with
{"model", "messages", "temperature", "max_tokens"} and a Bearer token
read from the environment. Each request retries up to
config.max_retries total attempts on transport failures or replies that
cannot be mapped to a label; what still fails comes back as an
AnnotationFailure in place, never dropped. At most config.parallelism
calls are in flight at once and reply order matches request order.
"""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import requests as _requests

from alsent.annotators.prompt import build_prompt, parse_label
from alsent.annotators.types import (AnnotationFailure, AnnotationOutcome,
                                     AnnotationRequest, AnnotationResult,
                                     LlmConfig)
from alsent.errors import AuthError, TransportError, UnparseableResponse


class LlmAnnotator:
    source = "llm"

    def __init__(self, config: LlmConfig):
        self.config = config
        self.name = config.model_name

    def annotate(self, requests: Sequence[AnnotationRequest]
                 ) -> list[AnnotationOutcome]:
        key = os.environ.get(self.config.api_key_env, "")
        if not key:
            raise AuthError(
                f"no API key in environment variable {self.config.api_key_env!r}")
        if not requests:
            return []
        workers = min(self.config.parallelism, len(requests))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda r: self._annotate_one(r, key), requests))

    def _annotate_one(self, request: AnnotationRequest,
                      key: str) -> AnnotationOutcome:
        cfg = self.config
        body = {
            "model": cfg.model_name,
            "messages": [{"role": "user", "content": build_prompt(request)}],
            "temperature": cfg.temperature,
            "max_tokens": cfg.max_tokens,
        }
        headers = {"Authorization": f"Bearer {key}"}
        last_error: Exception = TransportError("no attempt made")
        for attempt in range(cfg.max_retries):
            if attempt and cfg.retry_backoff_ms:
                time.sleep(cfg.retry_backoff_ms / 1000.0)
            started = time.perf_counter()
            try:
                resp = _requests.post(cfg.endpoint_url, json=body, headers=headers,
                                      timeout=cfg.timeout_ms / 1000.0)
            except _requests.RequestException as exc:
                last_error = TransportError(str(exc))
                continue
            if resp.status_code in (401, 403):
                # deterministic rejection, retrying cannot help
                raise AuthError(f"endpoint rejected credentials (HTTP {resp.status_code})")
            if not 200 <= resp.status_code < 300:
                last_error = TransportError(f"HTTP {resp.status_code}")
                continue
            try:
                raw = resp.json()["choices"][0]["message"]["content"]
                if not isinstance(raw, str):
                    raise TypeError
            except (ValueError, KeyError, IndexError, TypeError):
                last_error = UnparseableResponse(
                    "malformed completion payload", raw_response=resp.text[:500])
                continue
            try:
                label = parse_label(raw, request.label_set)
            except UnparseableResponse as exc:
                last_error = exc
                continue
            latency = int((time.perf_counter() - started) * 1000)
            return AnnotationResult(sample_id=request.sample_id, label=label,
                                    source=self.source, raw_response=raw,
                                    latency_ms=latency)
        return AnnotationFailure(sample_id=request.sample_id, error=last_error,
                                 raw_response=getattr(last_error, "raw_response", None))
