"""Layer classes with exact backpropagation (through time where needed).

Each layer caches what its backward pass needs during forward and
accumulates parameter gradients in place. Single-writer discipline:
one thread trains a model instance; frozen models are safe to share
for inference.
"""

import numpy as np

from alsent.errors import DegenerateBatch, ShapeError
from alsent.nn import ops
from alsent.nn.params import (
    Parameter,
    embedding_uniform,
    glorot_uniform,
    recurrent_orthogonal,
)


class Context:
    """Per-forward settings threaded through the layer stack."""

    __slots__ = ("training", "rng", "update_stats")

    def __init__(self, training: bool = False, rng: np.random.Generator | None = None,
                 update_stats: bool = True):
        self.training = training
        self.rng = rng
        self.update_stats = update_stats


INFERENCE = Context(training=False)


def _masks(ctx: Context, shape_in, rate_in, shape_rec, rate_rec):
    """One input mask and one recurrent mask per sequence, reused at
    every timestep (variational dropout)."""
    if not ctx.training or (rate_in == 0.0 and rate_rec == 0.0):
        return None, None
    if ctx.rng is None:
        raise ValueError("training forward with dropout requires a rng")
    m_in = ops.dropout_mask(shape_in, rate_in, ctx.rng) if rate_in > 0 else None
    m_rec = ops.dropout_mask(shape_rec, rate_rec, ctx.rng) if rate_rec > 0 else None
    return m_in, m_rec


class Embedding:
    def __init__(self, vocab_size: int, dim: int, rng: np.random.Generator):
        self.table = Parameter("embedding", embedding_uniform(rng, vocab_size, dim))
        self.params = [self.table]
        self._ids = None

    def forward(self, ids: np.ndarray, ctx: Context) -> np.ndarray:
        self._ids = np.asarray(ids)
        return ops.embedding_forward(self._ids, self.table.value)

    def backward(self, dout: np.ndarray) -> None:
        np.add.at(self.table.grad, self._ids, dout)
        return None


class SimpleRNN:
    def __init__(self, input_dim: int, units: int, rng: np.random.Generator,
                 return_sequences: bool, input_dropout: float = 0.0,
                 recurrent_dropout: float = 0.0, name: str = "rnn"):
        self.units = units
        self.return_sequences = return_sequences
        self.input_dropout = input_dropout
        self.recurrent_dropout = recurrent_dropout
        self.wx = Parameter(f"{name}.wx", glorot_uniform(rng, input_dim, units))
        self.wh = Parameter(f"{name}.wh", recurrent_orthogonal(rng, units, 1))
        self.b = Parameter(f"{name}.b", np.zeros(units))
        self.params = [self.wx, self.wh, self.b]
        self._cache = None

    def forward(self, x: np.ndarray, ctx: Context) -> np.ndarray:
        if x.ndim != 3:
            raise ShapeError(f"SimpleRNN expects [batch, time, features], got {x.shape}")
        batch, steps, _ = x.shape
        m_in, m_rec = _masks(ctx, (batch, x.shape[2]), self.input_dropout,
                             (batch, self.units), self.recurrent_dropout)
        h = np.zeros((batch, self.units))
        xs, h_prevs, hs = [], [], []
        for t in range(steps):
            x_t = x[:, t, :] if m_in is None else x[:, t, :] * m_in
            h_in = h if m_rec is None else h * m_rec
            h_prevs.append(h_in)
            h = ops.simple_rnn_step(x_t, h_in, self.wx.value, self.wh.value, self.b.value)
            xs.append(x_t)
            hs.append(h)
        self._cache = (xs, h_prevs, hs, m_in, m_rec, x.shape)
        return np.stack(hs, axis=1) if self.return_sequences else h

    def backward(self, dout: np.ndarray) -> np.ndarray:
        xs, h_prevs, hs, m_in, m_rec, x_shape = self._cache
        batch, steps, input_dim = x_shape
        dx = np.zeros(x_shape)
        dh_carry = np.zeros((batch, self.units))
        for t in reversed(range(steps)):
            if self.return_sequences:
                dh = dh_carry + dout[:, t, :]
            else:
                dh = dh_carry + dout if t == steps - 1 else dh_carry
            da = dh * (1.0 - hs[t] ** 2)
            self.wx.grad += xs[t].T @ da
            self.wh.grad += h_prevs[t].T @ da
            self.b.grad += da.sum(axis=0)
            dx_t = da @ self.wx.value.T
            dx[:, t, :] = dx_t if m_in is None else dx_t * m_in
            dh_carry = da @ self.wh.value.T
            if m_rec is not None:
                dh_carry = dh_carry * m_rec
        return dx


class LSTM:
    def __init__(self, input_dim: int, units: int, rng: np.random.Generator,
                 return_sequences: bool = False, input_dropout: float = 0.0,
                 recurrent_dropout: float = 0.0, name: str = "lstm"):
        self.units = units
        self.return_sequences = return_sequences
        self.input_dropout = input_dropout
        self.recurrent_dropout = recurrent_dropout
        self.wx = Parameter(f"{name}.wx",
                            glorot_uniform(rng, input_dim, 4 * units, (input_dim, 4 * units)))
        self.wh = Parameter(f"{name}.wh", recurrent_orthogonal(rng, units, 4))
        b = np.zeros(4 * units)
        b[units:2 * units] = 1.0  # forget-gate bias starts at 1
        self.b = Parameter(f"{name}.b", b)
        self.params = [self.wx, self.wh, self.b]
        self._cache = None

    def forward(self, x: np.ndarray, ctx: Context) -> np.ndarray:
        if x.ndim != 3:
            raise ShapeError(f"LSTM expects [batch, time, features], got {x.shape}")
        batch, steps, _ = x.shape
        u = self.units
        m_in, m_rec = _masks(ctx, (batch, x.shape[2]), self.input_dropout,
                             (batch, u), self.recurrent_dropout)
        h = np.zeros((batch, u))
        c = np.zeros((batch, u))
        cache = []
        hs = []
        for t in range(steps):
            x_t = x[:, t, :] if m_in is None else x[:, t, :] * m_in
            h_in = h if m_rec is None else h * m_rec
            z = x_t @ self.wx.value + h_in @ self.wh.value + self.b.value
            i = ops.sigmoid(z[:, :u])
            f = ops.sigmoid(z[:, u:2 * u])
            g = np.tanh(z[:, 2 * u:3 * u])
            o = ops.sigmoid(z[:, 3 * u:])
            c_next = f * c + i * g
            tanh_c = np.tanh(c_next)
            h = o * tanh_c
            cache.append((x_t, h_in, c, i, f, g, o, tanh_c))
            c = c_next
            hs.append(h)
        self._cache = (cache, m_in, m_rec, x.shape)
        return np.stack(hs, axis=1) if self.return_sequences else h

    def backward(self, dout: np.ndarray) -> np.ndarray:
        cache, m_in, m_rec, x_shape = self._cache
        batch, steps, _ = x_shape
        u = self.units
        dx = np.zeros(x_shape)
        dh_carry = np.zeros((batch, u))
        dc_carry = np.zeros((batch, u))
        for t in reversed(range(steps)):
            x_t, h_in, c_prev, i, f, g, o, tanh_c = cache[t]
            if self.return_sequences:
                dh = dh_carry + dout[:, t, :]
            else:
                dh = dh_carry + dout if t == steps - 1 else dh_carry
            do = dh * tanh_c
            dc = dc_carry + dh * o * (1.0 - tanh_c ** 2)
            di = dc * g
            df = dc * c_prev
            dg = dc * i
            dc_carry = dc * f
            dz = np.concatenate([di * i * (1.0 - i), df * f * (1.0 - f),
                                 dg * (1.0 - g ** 2), do * o * (1.0 - o)], axis=1)
            self.wx.grad += x_t.T @ dz
            self.wh.grad += h_in.T @ dz
            self.b.grad += dz.sum(axis=0)
            dx_t = dz @ self.wx.value.T
            dx[:, t, :] = dx_t if m_in is None else dx_t * m_in
            dh_carry = dz @ self.wh.value.T
            if m_rec is not None:
                dh_carry = dh_carry * m_rec
        return dx


class GRU:
    def __init__(self, input_dim: int, units: int, rng: np.random.Generator,
                 return_sequences: bool = False, input_dropout: float = 0.0,
                 recurrent_dropout: float = 0.0, name: str = "gru"):
        self.units = units
        self.return_sequences = return_sequences
        self.input_dropout = input_dropout
        self.recurrent_dropout = recurrent_dropout
        self.wx = Parameter(f"{name}.wx",
                            glorot_uniform(rng, input_dim, 3 * units, (input_dim, 3 * units)))
        self.wh = Parameter(f"{name}.wh", recurrent_orthogonal(rng, units, 3))
        self.b = Parameter(f"{name}.b", np.zeros(3 * units))
        self.params = [self.wx, self.wh, self.b]
        self._cache = None

    def forward(self, x: np.ndarray, ctx: Context) -> np.ndarray:
        if x.ndim != 3:
            raise ShapeError(f"GRU expects [batch, time, features], got {x.shape}")
        batch, steps, _ = x.shape
        u = self.units
        m_in, m_rec = _masks(ctx, (batch, x.shape[2]), self.input_dropout,
                             (batch, u), self.recurrent_dropout)
        h = np.zeros((batch, u))
        cache = []
        hs = []
        for t in range(steps):
            x_t = x[:, t, :] if m_in is None else x[:, t, :] * m_in
            h_in = h if m_rec is None else h * m_rec
            z = ops.sigmoid(x_t @ self.wx.value[:, :u]
                            + h_in @ self.wh.value[:, :u] + self.b.value[:u])
            r = ops.sigmoid(x_t @ self.wx.value[:, u:2 * u]
                            + h_in @ self.wh.value[:, u:2 * u] + self.b.value[u:2 * u])
            hh = np.tanh(x_t @ self.wx.value[:, 2 * u:]
                         + (r * h_in) @ self.wh.value[:, 2 * u:] + self.b.value[2 * u:])
            h_next = (1.0 - z) * h + z * hh
            cache.append((x_t, h, h_in, z, r, hh))
            h = h_next
            hs.append(h)
        self._cache = (cache, m_in, m_rec, x.shape)
        return np.stack(hs, axis=1) if self.return_sequences else h

    def backward(self, dout: np.ndarray) -> np.ndarray:
        cache, m_in, m_rec, x_shape = self._cache
        batch, steps, _ = x_shape
        u = self.units
        wx, wh = self.wx.value, self.wh.value
        dx = np.zeros(x_shape)
        dh_carry = np.zeros((batch, u))
        for t in reversed(range(steps)):
            x_t, h_prev, h_in, z, r, hh = cache[t]
            if self.return_sequences:
                dh = dh_carry + dout[:, t, :]
            else:
                dh = dh_carry + dout if t == steps - 1 else dh_carry
            dhh = dh * z
            dz = dh * (hh - h_prev)
            dh_prev = dh * (1.0 - z)
            da_h = dhh * (1.0 - hh ** 2)
            self.wx.grad[:, 2 * u:] += x_t.T @ da_h
            self.wh.grad[:, 2 * u:] += (r * h_in).T @ da_h
            self.b.grad[2 * u:] += da_h.sum(axis=0)
            drh = da_h @ wh[:, 2 * u:].T
            dr = drh * h_in
            dh_in = drh * r
            da_z = dz * z * (1.0 - z)
            self.wx.grad[:, :u] += x_t.T @ da_z
            self.wh.grad[:, :u] += h_in.T @ da_z
            self.b.grad[:u] += da_z.sum(axis=0)
            dh_in += da_z @ wh[:, :u].T
            da_r = dr * r * (1.0 - r)
            self.wx.grad[:, u:2 * u] += x_t.T @ da_r
            self.wh.grad[:, u:2 * u] += h_in.T @ da_r
            self.b.grad[u:2 * u] += da_r.sum(axis=0)
            dh_in += da_r @ wh[:, u:2 * u].T
            dx_t = da_h @ wx[:, 2 * u:].T + da_z @ wx[:, :u].T + da_r @ wx[:, u:2 * u].T
            dx[:, t, :] = dx_t if m_in is None else dx_t * m_in
            dh_carry = dh_prev + (dh_in if m_rec is None else dh_in * m_rec)
        return dx


class BatchNorm:
    """Per-feature batch normalization (eps 1e-3, momentum 0.99).

    A 3-D input [batch, time, features] is normalized over batch x time
    per feature. Training mode needs at least 2 rows; inference uses the
    running statistics.
    """

    def __init__(self, features: int, momentum: float = 0.99, eps: float = 1e-3,
                 name: str = "bn"):
        self.features = features
        self.momentum = momentum
        self.eps = eps
        self.gamma = Parameter(f"{name}.gamma", np.ones(features))
        self.beta = Parameter(f"{name}.beta", np.zeros(features))
        self.params = [self.gamma, self.beta]
        self.running_mean = np.zeros(features)
        self.running_var = np.ones(features)
        self._cache = None

    def forward(self, x: np.ndarray, ctx: Context) -> np.ndarray:
        shape = x.shape
        if shape[-1] != self.features:
            raise ShapeError(f"BatchNorm expects {self.features} features, got {shape[-1]}")
        flat = x.reshape(-1, self.features)
        if ctx.training:
            if flat.shape[0] < 2:
                raise DegenerateBatch("batch norm needs at least 2 rows to train")
            mean = flat.mean(axis=0)
            var = flat.var(axis=0)
            if ctx.update_stats:
                self.running_mean = self.momentum * self.running_mean + (1 - self.momentum) * mean
                self.running_var = self.momentum * self.running_var + (1 - self.momentum) * var
        else:
            mean = self.running_mean
            var = self.running_var
        inv_std = 1.0 / np.sqrt(var + self.eps)
        xhat = (flat - mean) * inv_std
        out = self.gamma.value * xhat + self.beta.value
        self._cache = (xhat, inv_std, shape, ctx.training)
        return out.reshape(shape)

    def backward(self, dout: np.ndarray) -> np.ndarray:
        xhat, inv_std, shape, trained = self._cache
        dflat = dout.reshape(-1, self.features)
        n = dflat.shape[0]
        self.gamma.grad += (dflat * xhat).sum(axis=0)
        self.beta.grad += dflat.sum(axis=0)
        dxhat = dflat * self.gamma.value
        if trained:
            # Gradient through the batch statistics.
            dx = (inv_std / n) * (n * dxhat - dxhat.sum(axis=0)
                                  - xhat * (dxhat * xhat).sum(axis=0))
        else:
            dx = dxhat * inv_std
        return dx.reshape(shape)


class Dense:
    """Affine map with sigmoid or softmax head. ``backward`` takes the
    gradient at the LOGITS (the loss supplies p - y directly)."""

    def __init__(self, input_dim: int, out_dim: int, activation: str,
                 rng: np.random.Generator, name: str = "dense"):
        if activation not in ("sigmoid", "softmax"):
            raise ShapeError(f"unknown activation {activation!r}")
        self.activation = activation
        self.w = Parameter(f"{name}.w", glorot_uniform(rng, input_dim, out_dim))
        self.b = Parameter(f"{name}.b", np.zeros(out_dim))
        self.params = [self.w, self.b]
        self._h = None

    def forward(self, h: np.ndarray, ctx: Context) -> np.ndarray:
        self._h = h
        return ops.dense_forward(h, self.w.value, self.b.value, self.activation)

    def backward(self, dlogits: np.ndarray) -> np.ndarray:
        self.w.grad += self._h.T @ dlogits
        self.b.grad += dlogits.sum(axis=0)
        return dlogits @ self.w.value.T
