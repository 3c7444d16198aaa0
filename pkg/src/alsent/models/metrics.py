"""Confusion-matrix metrics."""

from dataclasses import dataclass

import numpy as np

from alsent.errors import EmptyTestSet


@dataclass(frozen=True)
class MetricsReport:
    """accuracy/precision/recall/f1 plus the confusion matrix
    (rows = true class, columns = predicted class).

    Binary reports score the positive class (index 1); multiclass reports
    use macro averaging, with f1 the harmonic mean of the macro precision
    and macro recall. Values stay full-precision here; rounding to four
    decimals happens only in ``to_json``.
    """

    accuracy: float
    precision: float
    recall: float
    f1: float
    confusion: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {
            "accuracy": round(self.accuracy, 4),
            "precision": round(self.precision, 4),
            "recall": round(self.recall, 4),
            "f1": round(self.f1, 4),
            "confusion": [list(row) for row in self.confusion],
        }


def _safe_div(num: float, den: float) -> float:
    return num / den if den > 0 else 0.0


def confusion_matrix(true: np.ndarray, predicted: np.ndarray, classes: int) -> np.ndarray:
    matrix = np.zeros((classes, classes), dtype=np.int64)
    np.add.at(matrix, (true, predicted), 1)
    return matrix


def metrics_from_confusion(matrix: np.ndarray) -> MetricsReport:
    classes = matrix.shape[0]
    total = int(matrix.sum())
    accuracy = _safe_div(float(np.trace(matrix)), total)
    if classes == 2:
        tp = float(matrix[1, 1])
        fp = float(matrix[0, 1])
        fn = float(matrix[1, 0])
        precision = _safe_div(tp, tp + fp)
        recall = _safe_div(tp, tp + fn)
    else:
        per_p = [_safe_div(float(matrix[c, c]), float(matrix[:, c].sum()))
                 for c in range(classes)]
        per_r = [_safe_div(float(matrix[c, c]), float(matrix[c, :].sum()))
                 for c in range(classes)]
        precision = float(np.mean(per_p))
        recall = float(np.mean(per_r))
    f1 = _safe_div(2.0 * precision * recall, precision + recall)
    return MetricsReport(accuracy=accuracy, precision=precision, recall=recall,
                         f1=f1, confusion=tuple(tuple(int(v) for v in row)
                                                for row in matrix))


def evaluate(model, test_set: tuple[np.ndarray, np.ndarray]) -> MetricsReport:
    """Score a frozen model: threshold 0.5 for the binary head, argmax
    otherwise, then metrics from the confusion matrix."""
    x_test, y_test = test_set
    if len(y_test) == 0:
        raise EmptyTestSet("cannot evaluate on an empty test set")
    probs = model.predict_proba(x_test)
    classes = model.spec.output_classes
    if classes == 2:
        predicted = (probs[:, 1] >= 0.5).astype(np.int64)
    else:
        predicted = probs.argmax(axis=1).astype(np.int64)
    matrix = confusion_matrix(np.asarray(y_test, dtype=np.int64), predicted, classes)
    return metrics_from_confusion(matrix)
