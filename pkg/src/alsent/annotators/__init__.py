"""Interchangeable label sources: LLM, human queue, gold-label oracle."""

from alsent.annotators.benchmark import benchmark_annotators
from alsent.annotators.human import HumanAnnotator
from alsent.annotators.llm import LlmAnnotator
from alsent.annotators.oracle import OracleAnnotator
from alsent.annotators.prompt import PROMPT_TEMPLATE, build_prompt, parse_label
from alsent.annotators.queue import Task, TaskQueue
from alsent.annotators.types import (AnnotationFailure, AnnotationOutcome,
                                     AnnotationRequest, AnnotationResult,
                                     Annotator, BenchmarkReport, LlmConfig)

__all__ = [
    "AnnotationFailure", "AnnotationOutcome", "AnnotationRequest",
    "AnnotationResult", "Annotator", "BenchmarkReport", "HumanAnnotator",
    "LlmAnnotator", "LlmConfig", "OracleAnnotator", "PROMPT_TEMPLATE",
    "Task", "TaskQueue", "benchmark_annotators", "build_prompt", "parse_label",
]
