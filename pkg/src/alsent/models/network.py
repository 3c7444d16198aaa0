"""Classifier assembly: spec -> layer stack -> loss/gradients/probabilities."""

import numpy as np

from alsent.errors import SpecError
from alsent.nn.adam import Adam
from alsent.nn.layers import (
    BatchNorm,
    Context,
    Dense,
    Embedding,
    GRU,
    LSTM,
    SimpleRNN,
)
from alsent.nn.ops import bce_loss, categorical_ce, clamp_probs
from alsent.nn.params import Parameter


class SequenceClassifier:
    """One of the three presets, assembled and ready to train.

    Binary specs end in a single sigmoid unit trained with binary
    cross-entropy; multiclass specs end in a softmax trained with
    categorical cross-entropy. The loss backward starts at the logits
    ((p - y) / batch), which is exact for both heads.
    """

    def __init__(self, spec, rng: np.random.Generator):
        self.spec = spec
        self.layers = []
        emb = Embedding(spec.vocab_size, spec.embed_dim, rng)
        self.layers.append(emb)
        if spec.arch == "rnn":
            self.layers.append(SimpleRNN(spec.embed_dim, spec.units[0], rng,
                                         return_sequences=True,
                                         input_dropout=spec.input_dropout,
                                         recurrent_dropout=spec.recurrent_dropout,
                                         name="rnn1"))
            self.layers.append(BatchNorm(spec.units[0], name="bn1"))
            self.layers.append(SimpleRNN(spec.units[0], spec.units[1], rng,
                                         return_sequences=False,
                                         input_dropout=spec.input_dropout,
                                         recurrent_dropout=spec.recurrent_dropout,
                                         name="rnn2"))
            self.layers.append(BatchNorm(spec.units[1], name="bn2"))
            last = spec.units[1]
        elif spec.arch == "lstm":
            self.layers.append(LSTM(spec.embed_dim, spec.units[0], rng,
                                    input_dropout=spec.input_dropout,
                                    recurrent_dropout=spec.recurrent_dropout))
            last = spec.units[0]
        elif spec.arch == "gru":
            self.layers.append(GRU(spec.embed_dim, spec.units[0], rng,
                                   input_dropout=spec.input_dropout,
                                   recurrent_dropout=spec.recurrent_dropout))
            self.layers.append(BatchNorm(spec.units[0], name="bn1"))
            last = spec.units[0]
        else:
            raise SpecError(f"unknown arch {spec.arch!r}")
        self.layers.append(Dense(last, spec.head_units, spec.activation, rng))

    def parameters(self) -> list[Parameter]:
        return [p for layer in self.layers for p in layer.params]

    def parameter_count(self) -> int:
        return sum(p.value.size for p in self.parameters())

    def forward(self, ids: np.ndarray, ctx: Context) -> np.ndarray:
        out = np.asarray(ids)
        for layer in self.layers:
            out = layer.forward(out, ctx)
        return out

    def per_sample_loss(self, probs: np.ndarray, labels: np.ndarray) -> np.ndarray:
        if self.spec.output_classes == 2:
            return bce_loss(probs[:, 0], labels)
        return categorical_ce(probs, labels)

    def loss_value(self, ids: np.ndarray, labels: np.ndarray,
                   training: bool = True, rng=None) -> float:
        """Mean loss without touching gradients or running statistics."""
        ctx = Context(training=training, rng=rng, update_stats=False)
        probs = self.forward(ids, ctx)
        return float(self.per_sample_loss(probs, labels).mean())

    def loss_and_backward(self, ids: np.ndarray, labels: np.ndarray,
                          rng=None, update_stats: bool = True) -> tuple[float, np.ndarray]:
        """Training-mode forward, mean loss, full backward pass.

        Gradients accumulate into the parameters; the caller owns the
        optimizer step and the zeroing that comes with it.
        """
        labels = np.asarray(labels)
        batch = labels.shape[0]
        ctx = Context(training=True, rng=rng, update_stats=update_stats)
        probs = self.forward(ids, ctx)
        loss = float(self.per_sample_loss(probs, labels).mean())
        if self.spec.output_classes == 2:
            dlogits = (clamp_probs(probs) - labels[:, None]) / batch
        else:
            onehot = np.zeros_like(probs)
            onehot[np.arange(batch), labels] = 1.0
            dlogits = (clamp_probs(probs) - onehot) / batch
        upstream = dlogits
        for layer in reversed(self.layers):
            upstream = layer.backward(upstream)
        return loss, probs

    def predict_proba(self, ids: np.ndarray, batch_size: int = 256) -> np.ndarray:
        """Class distributions [n, C]; dropout off, batch norm in inference
        mode. Binary heads return columns [1 - p, p]."""
        ids = np.asarray(ids)
        rows = []
        ctx = Context(training=False)
        for start in range(0, ids.shape[0], batch_size):
            probs = self.forward(ids[start:start + batch_size], ctx)
            if self.spec.output_classes == 2:
                p = probs[:, 0]
                rows.append(np.column_stack([1.0 - p, p]))
            else:
                rows.append(probs)
        return np.concatenate(rows, axis=0) if rows else np.zeros((0, self.spec.output_classes))

    def get_weights(self) -> list[np.ndarray]:
        return [p.value.copy() for p in self.parameters()]

    def set_weights(self, weights: list[np.ndarray]) -> None:
        params = self.parameters()
        if len(weights) != len(params):
            raise SpecError("weight list does not match parameter list")
        for p, w in zip(params, weights):
            if p.value.shape != w.shape:
                raise SpecError(f"shape mismatch for {p.name}")
            p.value[...] = w

    def batchnorm_state(self) -> list[tuple[np.ndarray, np.ndarray]]:
        return [(l.running_mean.copy(), l.running_var.copy())
                for l in self.layers if isinstance(l, BatchNorm)]

    def set_batchnorm_state(self, state) -> None:
        bns = [l for l in self.layers if isinstance(l, BatchNorm)]
        for layer, (mean, var) in zip(bns, state):
            layer.running_mean = mean.copy()
            layer.running_var = var.copy()


def build_model(spec, rng: np.random.Generator) -> SequenceClassifier:
    return SequenceClassifier(spec, rng)


def make_optimizer(model: SequenceClassifier, config) -> Adam:
    return Adam(model.parameters(), lr=config.lr, clip_norm=config.clip_norm)
