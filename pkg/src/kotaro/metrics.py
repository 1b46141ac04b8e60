"""Confusion-matrix metrics with +1 (minority) as the positive class."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ClassAbsentError, InvalidLabelError, LengthMismatchError, UndefinedMetricError


@dataclass(frozen=True)
class ConfusionCounts:
    """TP/FN/TN/FP tallies; positive class is +1."""

    tp: int
    fn: int
    tn: int
    fp: int

    def __post_init__(self):
        if min(self.tp, self.fn, self.tn, self.fp) < 0:
            raise ValueError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fn + self.tn + self.fp


def confusion(true_labels, predicted_labels) -> ConfusionCounts:
    """Tally a confusion matrix from two equal-length {-1, +1} vectors."""
    t = np.asarray(true_labels)
    p = np.asarray(predicted_labels)
    if t.shape != p.shape or t.ndim != 1:
        raise LengthMismatchError(f"label vectors differ in shape: {t.shape} vs {p.shape}")
    for name, v in (("true", t), ("predicted", p)):
        if not np.all(np.isin(v, (-1, 1))):
            raise InvalidLabelError(f"{name} labels must be -1 or +1")
    pos = t == 1
    pred_pos = p == 1
    return ConfusionCounts(
        tp=int(np.count_nonzero(pos & pred_pos)),
        fn=int(np.count_nonzero(pos & ~pred_pos)),
        tn=int(np.count_nonzero(~pos & ~pred_pos)),
        fp=int(np.count_nonzero(~pos & pred_pos)),
    )


def recall(c: ConfusionCounts) -> float:
    """Sensitivity TP / (TP + FN)."""
    if c.tp + c.fn == 0:
        raise UndefinedMetricError("recall undefined: no positive samples in truth")
    return c.tp / (c.tp + c.fn)


def specificity(c: ConfusionCounts) -> float:
    """TN / (TN + FP)."""
    if c.tn + c.fp == 0:
        raise UndefinedMetricError("specificity undefined: no negative samples in truth")
    return c.tn / (c.tn + c.fp)


def precision(c: ConfusionCounts) -> float:
    """TP / (TP + FP)."""
    if c.tp + c.fp == 0:
        raise UndefinedMetricError("precision undefined: no positive predictions")
    return c.tp / (c.tp + c.fp)


def accuracy(c: ConfusionCounts) -> float:
    """(TP + TN) / total."""
    if c.total == 0:
        raise UndefinedMetricError("accuracy undefined on empty counts")
    return (c.tp + c.tn) / c.total


def gmean(c: ConfusionCounts) -> float:
    """sqrt(sensitivity * specificity); zero iff either class is entirely missed."""
    if c.tp + c.fn == 0 or c.tn + c.fp == 0:
        raise ClassAbsentError("gmean needs both classes present in truth")
    return math.sqrt(recall(c) * specificity(c))


def f1(c: ConfusionCounts) -> float:
    """Harmonic mean of precision and recall; defined as 0 when TP = 0.

    The zero convention is what makes degenerate majority-only predictors
    score 0 instead of blowing up on an empty positive-prediction set.
    """
    if c.tp == 0:
        return 0.0
    p = precision(c)
    r = recall(c)
    return 2.0 * p * r / (p + r)
