"""Model checkpointing as a single self-describing JSON document."""

import dataclasses
import json
from pathlib import Path

import numpy as np

from alsent.errors import SpecError
from alsent.models.network import SequenceClassifier, build_model
from alsent.models.spec import ModelSpec
from alsent.nn.layers import BatchNorm
from alsent.nn.rng import rng_stream

CHECKPOINT_VERSION = 1


def save_checkpoint(model: SequenceClassifier, path: str | Path,
                    vocab_hash: str, seed: int) -> None:
    doc = {
        "version": CHECKPOINT_VERSION,
        "spec": dataclasses.asdict(model.spec),
        "vocab_hash": vocab_hash,
        "seed": seed,
        "parameters": [
            {"name": p.name, "shape": list(p.value.shape),
             "values": p.value.ravel().tolist()}
            for p in model.parameters()
        ],
        "batchnorm": [
            {"running_mean": mean.tolist(), "running_var": var.tolist()}
            for mean, var in model.batchnorm_state()
        ],
    }
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


def load_checkpoint(path: str | Path) -> tuple[SequenceClassifier, dict]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("version") != CHECKPOINT_VERSION:
        raise SpecError(f"unsupported checkpoint version {doc.get('version')!r}")
    spec_fields = dict(doc["spec"])
    spec_fields["units"] = tuple(spec_fields["units"])
    spec = ModelSpec(**spec_fields)
    model = build_model(spec, rng_stream(doc["seed"]))
    weights = []
    for p, stored in zip(model.parameters(), doc["parameters"]):
        if list(p.value.shape) != stored["shape"]:
            raise SpecError(f"checkpoint shape mismatch for {stored['name']}")
        weights.append(np.asarray(stored["values"], dtype=np.float64)
                       .reshape(stored["shape"]))
    model.set_weights(weights)
    model.set_batchnorm_state([
        (np.asarray(b["running_mean"]), np.asarray(b["running_var"]))
        for b in doc["batchnorm"]
    ])
    return model, doc
