"""Model and training specifications with the three architecture presets."""

from dataclasses import dataclass, field, replace

from alsent.errors import SpecError

ARCHS = ("rnn", "lstm", "gru")


@dataclass(frozen=True)
class ModelSpec:
    """Wiring of one classifier.

    Presets (see ``preset``):
      rnn:  embedding(2000x32) -> SimpleRNN(32, sequences) -> batchnorm
            -> SimpleRNN(32) -> batchnorm -> dense; dropout 0.2/0.2
      lstm: embedding -> LSTM(32) -> dense; dropout 0.5/0.5
      gru:  embedding -> GRU(16) -> batchnorm -> dense; dropout 0.5/0.5

    The output head is sigmoid for 2 classes, softmax otherwise.
    """

    arch: str
    vocab_size: int = 2000
    embed_dim: int = 32
    seq_len: int = 100
    units: tuple[int, ...] = (32,)
    input_dropout: float = 0.0
    recurrent_dropout: float = 0.0
    output_classes: int = 2

    def __post_init__(self):
        if self.arch not in ARCHS:
            raise SpecError(f"unknown arch {self.arch!r}")
        if self.vocab_size < 2 or self.embed_dim < 1 or self.seq_len < 1:
            raise SpecError("vocab_size/embed_dim/seq_len out of range")
        if not self.units or any(u < 1 for u in self.units):
            raise SpecError("units must be positive")
        if self.arch == "rnn" and len(self.units) != 2:
            raise SpecError("rnn preset stacks exactly two recurrent layers")
        if self.arch in ("lstm", "gru") and len(self.units) != 1:
            raise SpecError(f"{self.arch} preset has exactly one recurrent layer")
        if not (0.0 <= self.input_dropout < 1.0 and 0.0 <= self.recurrent_dropout < 1.0):
            raise SpecError("dropout rates must lie in [0, 1)")
        if self.output_classes < 2:
            raise SpecError("output_classes must be at least 2")

    @property
    def activation(self) -> str:
        return "sigmoid" if self.output_classes == 2 else "softmax"

    @property
    def head_units(self) -> int:
        return 1 if self.output_classes == 2 else self.output_classes


_PRESETS = {
    "rnn": dict(units=(32, 32), input_dropout=0.2, recurrent_dropout=0.2),
    "lstm": dict(units=(32,), input_dropout=0.5, recurrent_dropout=0.5),
    "gru": dict(units=(16,), input_dropout=0.5, recurrent_dropout=0.5),
}

DEFAULT_EPOCHS = {"rnn": 20, "lstm": 20, "gru": 100}


def preset(arch: str, output_classes: int = 2, vocab_size: int = 2000,
           seq_len: int = 100) -> ModelSpec:
    if arch not in _PRESETS:
        raise SpecError(f"unknown arch {arch!r}")
    return ModelSpec(arch=arch, vocab_size=vocab_size, seq_len=seq_len,
                     output_classes=output_classes, **_PRESETS[arch])


def without_dropout(spec: ModelSpec) -> ModelSpec:
    return replace(spec, input_dropout=0.0, recurrent_dropout=0.0)


@dataclass(frozen=True)
class TrainConfig:
    epochs: int
    seed: int
    batch_size: int = 32
    patience: int = 5
    lr: float = 0.001
    clip_norm: float | None = None

    def __post_init__(self):
        if self.epochs < 1 or self.patience < 1 or self.batch_size < 1:
            raise SpecError("epochs, patience and batch_size must be >= 1")


def default_train_config(arch: str, seed: int, epochs: int | None = None) -> TrainConfig:
    return TrainConfig(epochs=epochs or DEFAULT_EPOCHS[arch], seed=seed)


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    train_frac: float = 0.6
    val_frac: float = 0.2
    test_frac: float = 0.2

    def __post_init__(self):
        if abs(self.train_frac + self.val_frac + self.test_frac - 1.0) > 1e-9:
            raise SpecError("split fractions must sum to 1")
