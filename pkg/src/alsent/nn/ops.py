"""Stateless step functions: activations, recurrent cells, losses.

These are the numeric kernels the layer classes build on. Training runs
in float64; the kernels preserve wider float inputs so the gradient
checker can evaluate losses in extended precision. Batch convention:
rows are samples, so a step input is [batch, features].
"""

import numpy as np

from alsent.errors import ShapeError

PROB_CLAMP = 1e-7  # probabilities clamped into [PROB_CLAMP, 1 - PROB_CLAMP]


def sigmoid(x: np.ndarray) -> np.ndarray:
    x = _as_float(x)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    ex = np.exp(shifted)
    return ex / ex.sum(axis=-1, keepdims=True)


def _require_2d(name: str, a: np.ndarray, cols: int | None = None) -> None:
    if a.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {a.shape}")
    if cols is not None and a.shape[1] != cols:
        raise ShapeError(f"{name} must have {cols} columns, got {a.shape[1]}")


def embedding_forward(ids: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Row lookup: output[t] = table[ids[t]]. Ids must lie in [0, vocab)."""
    ids = np.asarray(ids)
    if ids.size and (ids.min() < 0 or ids.max() >= table.shape[0]):
        raise IndexError(
            f"embedding id out of range [0, {table.shape[0]})")
    return table[ids]


def simple_rnn_step(x_t: np.ndarray, h_prev: np.ndarray, wx: np.ndarray,
                    wh: np.ndarray, b: np.ndarray) -> np.ndarray:
    """h_t = tanh(x_t @ wx + h_prev @ wh + b)."""
    _require_2d("x_t", x_t, wx.shape[0])
    _require_2d("h_prev", h_prev, wh.shape[0])
    if wx.shape[1] != wh.shape[1] or b.shape[-1] != wh.shape[1]:
        raise ShapeError("simple_rnn_step: wx/wh/b widths disagree")
    return np.tanh(x_t @ wx + h_prev @ wh + b)


def lstm_step(x_t: np.ndarray, h_prev: np.ndarray, c_prev: np.ndarray,
              wx: np.ndarray, wh: np.ndarray, b: np.ndarray
              ) -> tuple[np.ndarray, np.ndarray]:
    """One LSTM step. Gate order along the 4H axis: input, forget,
    candidate, output. Returns (h_t, c_t)."""
    units = wh.shape[0]
    _require_2d("x_t", x_t, wx.shape[0])
    _require_2d("h_prev", h_prev, units)
    _require_2d("c_prev", c_prev, units)
    if wx.shape[1] != 4 * units or wh.shape[1] != 4 * units or b.shape[-1] != 4 * units:
        raise ShapeError("lstm_step: expected 4*units gate width")
    z = x_t @ wx + h_prev @ wh + b
    i = sigmoid(z[:, :units])
    f = sigmoid(z[:, units:2 * units])
    g = np.tanh(z[:, 2 * units:3 * units])
    o = sigmoid(z[:, 3 * units:])
    c_t = f * c_prev + i * g
    h_t = o * np.tanh(c_t)
    return h_t, c_t


def gru_step(x_t: np.ndarray, h_prev: np.ndarray, wx: np.ndarray,
             wh: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One GRU step. Gate order along the 3H axis: update, reset,
    candidate. h_t = (1 - z) * h_prev + z * candidate."""
    units = wh.shape[0]
    _require_2d("x_t", x_t, wx.shape[0])
    _require_2d("h_prev", h_prev, units)
    if wx.shape[1] != 3 * units or wh.shape[1] != 3 * units or b.shape[-1] != 3 * units:
        raise ShapeError("gru_step: expected 3*units gate width")
    z = sigmoid(x_t @ wx[:, :units] + h_prev @ wh[:, :units] + b[:units])
    r = sigmoid(x_t @ wx[:, units:2 * units] + h_prev @ wh[:, units:2 * units]
                + b[units:2 * units])
    hh = np.tanh(x_t @ wx[:, 2 * units:] + (r * h_prev) @ wh[:, 2 * units:]
                 + b[2 * units:])
    return (1.0 - z) * h_prev + z * hh


def dropout_mask(shape: tuple[int, ...], rate: float,
                 rng: np.random.Generator) -> np.ndarray:
    """Inverted dropout: zeros with probability `rate`, else 1/(1-rate)."""
    if not 0.0 <= rate < 1.0:
        raise ValueError(f"dropout rate must be in [0, 1), got {rate}")
    if rate == 0.0:
        return np.ones(shape)
    keep = rng.random(shape) >= rate
    return keep / (1.0 - rate)


def dense_forward(h: np.ndarray, w: np.ndarray, b: np.ndarray,
                  activation: str) -> np.ndarray:
    if h.ndim != 2 or h.shape[1] != w.shape[0]:
        raise ShapeError(f"dense_forward: {h.shape} @ {w.shape} mismatch")
    logits = h @ w + b
    if activation == "sigmoid":
        return sigmoid(logits)
    if activation == "softmax":
        return softmax(logits)
    raise ShapeError(f"unknown activation {activation!r}")


def _as_float(a) -> np.ndarray:
    """Cast integers to float64 but keep wider float dtypes intact (the
    gradient checker evaluates losses in extended precision)."""
    a = np.asarray(a)
    return a.astype(np.float64) if a.dtype.kind != "f" else a


def clamp_probs(p: np.ndarray) -> np.ndarray:
    p = _as_float(p)
    return np.clip(p, PROB_CLAMP, 1.0 - PROB_CLAMP)


def bce_loss(p: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Elementwise binary cross-entropy with clamped probabilities."""
    p = clamp_probs(p)
    y = _as_float(y)
    return -(y * np.log(p) + (1.0 - y) * np.log1p(-p))


def bce_grad(p: np.ndarray, y: np.ndarray) -> np.ndarray:
    """dL/dp of the clamped loss at interior p."""
    p = clamp_probs(p)
    y = _as_float(y)
    return (p - y) / (p * (1.0 - p))


def categorical_ce(dist: np.ndarray, label_index: int | np.ndarray) -> np.ndarray:
    """-ln dist[label] with clamping; accepts a batch of rows."""
    dist = _as_float(dist)
    if dist.ndim == 1:
        return -np.log(clamp_probs(dist[label_index]))
    rows = np.arange(dist.shape[0])
    return -np.log(clamp_probs(dist[rows, label_index]))
