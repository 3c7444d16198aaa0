"""Training loop: mini-batches, early stopping, best-epoch restoration."""

from dataclasses import dataclass

import numpy as np

from alsent.errors import Diverged, EmptyCorpus
from alsent.models.network import SequenceClassifier, make_optimizer
from alsent.models.spec import TrainConfig
from alsent.nn.rng import derived_stream


@dataclass
class TrainedModel:
    model: SequenceClassifier
    history: list[dict]
    best_epoch: int  # 1-indexed, minimum validation loss

    @property
    def spec(self):
        return self.model.spec


def _batches(n: int, batch_size: int, rng: np.random.Generator):
    """Shuffled batch index lists. A trailing single-sample batch is folded
    into its predecessor so batch statistics stay defined."""
    order = rng.permutation(n)
    chunks = [order[i:i + batch_size] for i in range(0, n, batch_size)]
    if len(chunks) > 1 and len(chunks[-1]) == 1:
        chunks[-2] = np.concatenate([chunks[-2], chunks[-1]])
        chunks.pop()
    return chunks


def _accuracy(probs: np.ndarray, labels: np.ndarray, classes: int) -> float:
    if classes == 2:
        predicted = (probs[:, -1] >= 0.5).astype(int)
    else:
        predicted = probs.argmax(axis=1)
    return float((predicted == labels).mean())


def train(model: SequenceClassifier, train_set: tuple[np.ndarray, np.ndarray],
          val_set: tuple[np.ndarray, np.ndarray], config: TrainConfig) -> TrainedModel:
    """Fit the model, stopping when validation loss fails to improve for
    ``patience`` consecutive epochs, and restore the best epoch's weights.

    History rows carry the running-average training loss (measured as
    batches are consumed) plus validation loss/accuracy per epoch.
    """
    x_train, y_train = train_set
    x_val, y_val = val_set
    if len(y_train) == 0 or len(y_val) == 0:
        raise EmptyCorpus("training and validation sets must be non-empty")
    optimizer = make_optimizer(model, config)
    shuffle_rng = derived_stream(config.seed, 1)
    dropout_rng = derived_stream(config.seed, 2)
    history: list[dict] = []
    best_loss = np.inf
    best_epoch = 0
    best_weights = model.get_weights()
    best_bn = model.batchnorm_state()
    stall = 0
    for epoch in range(1, config.epochs + 1):
        epoch_loss = 0.0
        epoch_hits = 0.0
        seen = 0
        for batch in _batches(len(y_train), config.batch_size, shuffle_rng):
            loss, probs = model.loss_and_backward(x_train[batch], y_train[batch],
                                                  rng=dropout_rng)
            if not np.isfinite(loss):
                raise Diverged(epoch)
            optimizer.step()
            epoch_loss += loss * len(batch)
            if model.spec.output_classes == 2:
                hits = ((probs[:, 0] >= 0.5).astype(int) == y_train[batch]).sum()
            else:
                hits = (probs.argmax(axis=1) == y_train[batch]).sum()
            epoch_hits += float(hits)
            seen += len(batch)
        val_probs = model.predict_proba(x_val)
        val_loss = model.loss_value(x_val, y_val, training=False)
        if not np.isfinite(val_loss):
            raise Diverged(epoch)
        history.append({
            "epoch": epoch,
            "train_loss": epoch_loss / seen,
            "val_loss": val_loss,
            "train_acc": epoch_hits / seen,
            "val_acc": _accuracy(val_probs, y_val, model.spec.output_classes),
        })
        if val_loss < best_loss:
            best_loss = val_loss
            best_epoch = epoch
            best_weights = model.get_weights()
            best_bn = model.batchnorm_state()
            stall = 0
        else:
            stall += 1
            if stall >= config.patience:
                break
    model.set_weights(best_weights)
    model.set_batchnorm_state(best_bn)
    return TrainedModel(model=model, history=history, best_epoch=best_epoch)
