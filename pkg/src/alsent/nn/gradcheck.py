"""Central finite-difference verification of analytic gradients.

The relative error for one parameter entry is
|analytic - numeric| / max(|analytic|, |numeric|, 1e-8); checkers return
the maximum over all entries. Dropout must be off so the loss is a
deterministic function of the parameters.

Accuracy of the oracle itself matters here: entries whose true gradient
sits near the 1e-8 denominator floor need the difference quotient good
to ~1e-12. The checkers therefore evaluate the loss with
extended-precision parameters (killing float64 roundoff) and re-estimate
any suspicious entry with the five-point central stencil (killing the
eps^2 truncation term).
"""

import numpy as np

from alsent.errors import NumericalError
from alsent.nn.params import Parameter

REFINE_THRESHOLD = 1e-6  # three-point results above this get the five-point pass


def _rel_err(analytic: float, numeric: float) -> float:
    return float(abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-8))


def _entry_error(loss_fn, flat: np.ndarray, i: int, analytic_i: float,
                 epsilon: float) -> float:
    orig = flat[i]

    def at(offset: float):
        flat[i] = orig + offset
        value = loss_fn()
        flat[i] = orig
        if not np.isfinite(value):
            raise NumericalError("non-finite loss during finite differences")
        return value

    numeric = (at(epsilon) - at(-epsilon)) / (2.0 * epsilon)
    err = _rel_err(analytic_i, numeric)
    if err <= REFINE_THRESHOLD:
        return err
    numeric5 = (at(-2 * epsilon) - 8 * at(-epsilon)
                + 8 * at(epsilon) - at(2 * epsilon)) / (12.0 * epsilon)
    return _rel_err(analytic_i, numeric5)


def check_params(loss_fn, params: list[Parameter], analytic: list[np.ndarray],
                 epsilon: float = 1e-5) -> float:
    """Compare stored analytic gradients against central differences of
    ``loss_fn()`` under perturbation of every parameter entry."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    worst = 0.0
    for p, grad in zip(params, analytic):
        flat_value = p.value.ravel()
        flat_grad = grad.ravel()
        for i in range(flat_value.size):
            worst = max(worst, _entry_error(loss_fn, flat_value, i,
                                            flat_grad[i], epsilon))
    return worst


def check_array(loss_fn, array: np.ndarray, analytic: np.ndarray,
                epsilon: float = 1e-5) -> float:
    """Same comparison for a non-parameter input array (e.g. layer inputs)."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    worst = 0.0
    flat = array.ravel()
    flat_grad = analytic.ravel()
    for i in range(flat.size):
        worst = max(worst, _entry_error(loss_fn, flat, i, flat_grad[i], epsilon))
    return worst


def grad_check(model, ids: np.ndarray, labels: np.ndarray,
               epsilon: float = 1e-5) -> float:
    """Whole-model check: analytic gradients of the mean training loss
    versus central differences, perturbing every parameter.

    The model's dropout rates must be zero; batch-norm runs in training
    mode with running-statistic updates suppressed.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    loss, _ = model.loss_and_backward(ids, labels, update_stats=False)
    if not np.isfinite(loss):
        raise NumericalError("non-finite loss at the evaluation point")
    from alsent.nn.layers import Context  # local import avoids a cycle

    params = model.parameters()
    analytic = [p.grad.copy() for p in params]
    for p in params:
        p.zero_grad()

    def loss_fn():
        probs = model.forward(ids, Context(training=True, update_stats=False))
        return model.per_sample_loss(probs, labels).mean()

    saved = [p.value for p in params]
    for p in params:
        p.value = p.value.astype(np.longdouble)
    try:
        return check_params(loss_fn, params, analytic, epsilon)
    finally:
        for p, orig in zip(params, saved):
            p.value = orig
