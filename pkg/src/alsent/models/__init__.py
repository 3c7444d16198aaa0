"""Architecture presets, training with early stopping, metrics, splits."""

from alsent.models.checkpoint import load_checkpoint, save_checkpoint
from alsent.models.encoding import (
    encode_samples,
    preprocess_samples,
    split_fingerprint,
    vocab_fingerprint,
)
from alsent.models.metrics import (
    MetricsReport,
    confusion_matrix,
    evaluate,
    metrics_from_confusion,
)
from alsent.models.network import SequenceClassifier, build_model
from alsent.models.spec import (
    ARCHS,
    DEFAULT_EPOCHS,
    ModelSpec,
    SplitSpec,
    TrainConfig,
    default_train_config,
    preset,
    without_dropout,
)
from alsent.models.split import split_dataset
from alsent.models.train import TrainedModel, train

__all__ = [
    "load_checkpoint", "save_checkpoint", "encode_samples", "preprocess_samples",
    "split_fingerprint", "vocab_fingerprint", "MetricsReport", "confusion_matrix",
    "evaluate", "metrics_from_confusion", "SequenceClassifier", "build_model",
    "ARCHS", "DEFAULT_EPOCHS", "ModelSpec", "SplitSpec", "TrainConfig",
    "default_train_config", "preset", "without_dropout", "split_dataset",
    "TrainedModel", "train",
]
