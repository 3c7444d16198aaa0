"""From-scratch dense-tensor engine: layers, BPTT, Adam, grad checks."""

from alsent.nn.adam import Adam
from alsent.nn.gradcheck import check_array, check_params, grad_check
from alsent.nn.layers import (
    BatchNorm,
    Context,
    Dense,
    Embedding,
    GRU,
    INFERENCE,
    LSTM,
    SimpleRNN,
)
from alsent.nn.ops import (
    bce_grad,
    bce_loss,
    categorical_ce,
    clamp_probs,
    dense_forward,
    dropout_mask,
    embedding_forward,
    gru_step,
    lstm_step,
    sigmoid,
    simple_rnn_step,
    softmax,
)
from alsent.nn.params import Parameter, glorot_uniform, orthogonal
from alsent.nn.rng import derived_stream, rng_stream

__all__ = [
    "Adam", "check_array", "check_params", "grad_check", "BatchNorm", "Context",
    "Dense", "Embedding", "GRU", "INFERENCE", "LSTM", "SimpleRNN", "bce_grad",
    "bce_loss", "categorical_ce", "clamp_probs", "dense_forward", "dropout_mask",
    "embedding_forward", "gru_step", "lstm_step", "sigmoid", "simple_rnn_step",
    "softmax", "Parameter", "glorot_uniform", "orthogonal", "derived_stream",
    "rng_stream",
]
