"""Trainable parameters and their initializers."""

import numpy as np


class Parameter:
    """A named float64 tensor plus its gradient accumulator."""

    __slots__ = ("name", "value", "grad")

    def __init__(self, name: str, value: np.ndarray):
        self.name = name
        self.value = np.asarray(value, dtype=np.float64)
        self.grad = np.zeros_like(self.value)

    def zero_grad(self) -> None:
        self.grad[...] = 0.0

    def __repr__(self) -> str:
        return f"Parameter({self.name}, shape={self.value.shape})"


def glorot_uniform(rng: np.random.Generator, fan_in: int, fan_out: int,
                   shape: tuple[int, ...] | None = None) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape or (fan_in, fan_out))


def orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random n x n orthogonal matrix via QR with sign fixing."""
    a = rng.normal(size=(n, n))
    q, r = np.linalg.qr(a)
    return q * np.sign(np.diag(r))


def recurrent_orthogonal(rng: np.random.Generator, units: int, gates: int) -> np.ndarray:
    """[units, gates*units] matrix whose per-gate blocks are orthogonal."""
    return np.concatenate([orthogonal(rng, units) for _ in range(gates)], axis=1)


def embedding_uniform(rng: np.random.Generator, vocab: int, dim: int) -> np.ndarray:
    return rng.uniform(-0.05, 0.05, size=(vocab, dim))
