"""Classification and regression scores; undefined ratios are ``None``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class ConfusionMatrix:
    TP: int
    FP: int
    FN: int
    TN: int

    def __post_init__(self):
        if min(self.TP, self.FP, self.FN, self.TN) < 0:
            raise DomainError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.TP + self.FP + self.FN + self.TN


def _ratio(a, b):
    return a / b if b > 0 else None


def metrics(cm: ConfusionMatrix) -> dict[str, float | None]:
    """Precision, recall, accuracy and F1."""
    P = _ratio(cm.TP, cm.TP + cm.FP)
    R = _ratio(cm.TP, cm.TP + cm.FN)
    A = _ratio(cm.TP + cm.TN, cm.total)
    F1 = None if P is None or R is None else _ratio(2 * P * R, P + R)
    return {"precision": P, "recall": R, "accuracy": A, "f1": F1}


def one_vs_rest(y_true: Sequence[Hashable], y_pred: Sequence[Hashable]) -> dict[Hashable, ConfusionMatrix]:
    """Per-label confusion matrices treating each label in turn as positive."""
    if len(y_true) != len(y_pred):
        raise DomainError("label sequences differ in length")
    labels = sorted(set(y_true) | set(y_pred), key=str)
    out = {}
    for c in labels:
        tp = sum(1 for a, b in zip(y_true, y_pred) if a == c and b == c)
        fp = sum(1 for a, b in zip(y_true, y_pred) if a != c and b == c)
        fn = sum(1 for a, b in zip(y_true, y_pred) if a == c and b != c)
        out[c] = ConfusionMatrix(tp, fp, fn, len(y_true) - tp - fp - fn)
    return out


def r2(y: Sequence[float], y_hat: Sequence[float]) -> float | None:
    """Coefficient of determination; ``None`` when ``y`` is constant."""
    y = np.asarray(y, dtype=float)
    y_hat = np.asarray(y_hat, dtype=float)
    if y.shape != y_hat.shape or y.size == 0:
        raise DomainError("y and y_hat must be non-empty and equal length")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0:
        return None
    return 1.0 - float(np.sum((y - y_hat) ** 2)) / ss_tot
