"""
Evaluation metrics for imbalanced multiclass classification.

Multiclass ROC analysis is done one-vs-one: for every pair of classes
`(a, b)` the samples of both classes are ranked by the score margin
`s_a - s_b`. The pairwise AUC values are combined to the normalized polar
area `AUC_area` over the ring of pairs in canonical order
`(0, 1), (0, 2), ..., (0, k-1), (1, 2), ..., (k-2, k-1)`.
"""

from itertools import combinations
from typing import NamedTuple

import numpy as np
from scipy.stats import rankdata

from .exceptions import (
    EmptySetException,
    LengthMismatchException,
    MissingClassException,
)


class ConfusionMatrix:
    """
    Confusion matrix of a `k`-class prediction.

    Rows correspond to predicted classes, columns to actual classes.

    Parameters
    ----------
    counts : array_like of shape (k, k)
        Non-negative integer counts.
    """

    def __init__(self, counts):
        counts = np.array(counts, dtype=np.int64, ndmin=2)
        if counts.shape[0] != counts.shape[1]:
            raise ValueError("`counts` is not a square matrix")
        if (counts < 0).any():
            raise ValueError("`counts` contains negative entries")
        self.counts = counts

    @classmethod
    def from_predictions(cls, predictions, labels, k):
        """
        Parameters
        ----------
        predictions : array_like of int
            Predicted class indices.

        labels : array_like of int
            Actual class indices.

        k : int
            Number of classes.

        Returns
        -------
        confusion : ConfusionMatrix
        """
        predictions = np.asarray(predictions, dtype=np.int64)
        labels = np.asarray(labels, dtype=np.int64)
        _check_lengths(predictions, labels)
        counts = np.zeros((k, k), dtype=np.int64)
        np.add.at(counts, (predictions, labels), 1)
        return cls(counts)

    def __repr__(self):
        return f"ConfusionMatrix({self.counts.tolist()})"

    @property
    def k(self):
        return self.counts.shape[0]

    @property
    def total(self):
        return int(self.counts.sum())

    def true_positives(self):
        return np.diag(self.counts).copy()

    def false_positives(self):
        return self.counts.sum(axis=1) - np.diag(self.counts)

    def false_negatives(self):
        return self.counts.sum(axis=0) - np.diag(self.counts)

    def true_negatives(self):
        return (
            self.total
            - self.true_positives()
            - self.false_positives()
            - self.false_negatives()
        )

    def accuracy(self):
        if self.total == 0:
            raise EmptySetException("no samples were evaluated")
        return int(np.trace(self.counts)) / self.total

    def per_class_accuracy(self):
        """
        Returns
        -------
        recalls : list of float or None
            Recall of every class, `None` for classes that do not occur
            among the actual labels.
        """
        actual = self.counts.sum(axis=0)
        return [
            int(self.counts[c, c]) / int(actual[c]) if actual[c] else None
            for c in range(self.k)
        ]

    def micro_f1(self):
        """F1 score of true positives, false positives and false negatives
        pooled over all classes."""
        tp = int(self.true_positives().sum())
        fp = int(self.false_positives().sum())
        fn = int(self.false_negatives().sum())
        if 2 * tp + fp + fn == 0:
            raise EmptySetException("no samples were evaluated")
        return 2 * tp / (2 * tp + fp + fn)


def _check_lengths(*sequences):
    lengths = {len(seq) for seq in sequences}
    if len(lengths) > 1:
        raise LengthMismatchException(
            f"sequences have different lengths {sorted(lengths)}"
        )


def canonical_pairs(k):
    """
    Parameters
    ----------
    k : int
        Number of classes.

    Returns
    -------
    pairs : list of tuple of int
        All `k(k-1)/2` class pairs `(a, b)` with `a < b` in lexicographic
        order.
    """
    return list(combinations(range(k), 2))


def _pair_margins(scores, labels, class_a, class_b):
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    _check_lengths(scores, labels)
    is_a = labels == class_a
    is_b = labels == class_b
    if not is_a.any() or not is_b.any():
        missing = class_a if not is_a.any() else class_b
        raise MissingClassException(f"class {missing} has no sample")
    margins = scores[:, class_a] - scores[:, class_b]
    return margins[is_a], margins[is_b]


def pairwise_auc(scores, labels, class_a, class_b):
    """
    One-vs-one AUC of two classes in Mann-Whitney form.

    Parameters
    ----------
    scores : array_like of shape (n, k)
        Class scores of every sample.

    labels : array_like of shape (n,)
        Actual class indices.

    class_a, class_b : int

    Returns
    -------
    auc : float
        Probability that a random sample of `class_a` has a larger margin
        `s_a - s_b` than a random sample of `class_b`, ties counting one
        half.

    Raises
    ------
    MissingClassException
        If one of the classes does not occur in `labels`.
    """
    margins_a, margins_b = _pair_margins(scores, labels, class_a, class_b)
    n_a, n_b = len(margins_a), len(margins_b)
    ranks = rankdata(np.concatenate([margins_a, margins_b]))
    u_stat = ranks[:n_a].sum() - n_a * (n_a + 1) / 2
    return float(u_stat / (n_a * n_b))


def pairwise_aucs(scores, labels, k, skip_missing=False):
    """
    Computes the AUC of all canonical class pairs.

    Parameters
    ----------
    scores : array_like of shape (n, k)

    labels : array_like of shape (n,)

    k : int

    skip_missing : bool, optional
        If `True`, pairs with a class that does not occur in `labels` are
        left out instead of raising.

        Defaults to `False`.

    Returns
    -------
    pairs : list of tuple of int

    aucs : list of float
    """
    present = set(np.unique(np.asarray(labels)).tolist())
    pairs, aucs = [], []
    for class_a, class_b in canonical_pairs(k):
        if skip_missing and not {class_a, class_b} <= present:
            continue
        pairs.append((class_a, class_b))
        aucs.append(pairwise_auc(scores, labels, class_a, class_b))
    return pairs, aucs


def auc_area(aucs):
    """
    Normalized polar area over the ring of pairwise AUC values

    `(r_1 r_2 + r_2 r_3 + ... + r_{q-1} r_q + r_q r_1) / q`.

    For a single pair this is `r_1 ** 2`.

    Parameters
    ----------
    aucs : sequence of float
        Pairwise AUC values in canonical pair order.

    Returns
    -------
    area : float

    Raises
    ------
    EmptySetException
        If `aucs` is empty.
    """
    r = np.asarray(aucs, dtype=float)
    if r.size == 0:
        raise EmptySetException("`aucs` is empty")
    return float((np.dot(r[:-1], r[1:]) + r[-1] * r[0]) / r.size)


def roc_points(scores, labels, class_a, class_b):
    """
    ROC polyline of a class pair, `class_a` being the positive class and
    the margin `s_a - s_b` the decision score.

    Parameters
    ----------
    scores : array_like of shape (n, k)

    labels : array_like of shape (n,)

    class_a, class_b : int

    Returns
    -------
    points : list of tuple of float
        `(false positive rate, true positive rate)` pairs from `(0, 0)` to
        `(1, 1)`, one point per distinct margin value.
    """
    margins_a, margins_b = _pair_margins(scores, labels, class_a, class_b)
    margins = np.concatenate([margins_a, margins_b])
    positive = np.concatenate(
        [np.ones(len(margins_a)), np.zeros(len(margins_b))]
    )
    order = np.argsort(-margins, kind="stable")
    margins, positive = margins[order], positive[order]

    tps = np.cumsum(positive)
    fps = np.cumsum(1 - positive)
    last_of_value = np.r_[np.flatnonzero(np.diff(margins)), len(margins) - 1]
    tpr = tps[last_of_value] / len(margins_a)
    fpr = fps[last_of_value] / len(margins_b)
    return [(0.0, 0.0)] + [
        (float(x), float(y)) for x, y in zip(fpr, tpr)
    ]


class EvalReport(NamedTuple):
    """
    Evaluation results of a classifier on labeled data.

    Attributes
    ----------
    auc_area : float or None
        `None` if no class pair could be evaluated.

    micro_f1 : float

    accuracy : float

    per_class_accuracy : list of float or None
        `None` for classes that did not occur.

    confusion : ConfusionMatrix

    pairs : list of tuple of int
        The evaluated class pairs in canonical order.

    pair_aucs : list of float
        The AUC of every evaluated pair.
    """

    auc_area: object
    micro_f1: float
    accuracy: float
    per_class_accuracy: list
    confusion: ConfusionMatrix
    pairs: list
    pair_aucs: list

    def to_dict(self, class_names=None):
        """
        Parameters
        ----------
        class_names : sequence of str, optional
            If given, per class values and pairs are keyed by class name.

        Returns
        -------
        report : dict
            JSON serializable representation.
        """
        names = (
            list(class_names)
            if class_names is not None
            else [str(c) for c in range(self.confusion.k)]
        )
        return {
            "auc_area": self.auc_area,
            "micro_f1": self.micro_f1,
            "accuracy": self.accuracy,
            "per_class_accuracy": dict(zip(names, self.per_class_accuracy)),
            "confusion": self.confusion.counts.tolist(),
            "pair_order": "lexicographic",
            "pairwise_auc": [
                {"a": names[a], "b": names[b], "auc": auc}
                for (a, b), auc in zip(self.pairs, self.pair_aucs)
            ],
        }

    def to_csv_row(self, algorithm, class_names):
        """
        Parameters
        ----------
        algorithm : str

        class_names : sequence of str

        Returns
        -------
        row : dict
            Flat row with the keys `algorithm`, `AUC_area`, `Micro-F1`,
            `accuracy` followed by one accuracy per class name.
        """
        row = {
            "algorithm": algorithm,
            "AUC_area": self.auc_area,
            "Micro-F1": self.micro_f1,
            "accuracy": self.accuracy,
        }
        row.update(zip(class_names, self.per_class_accuracy))
        return row


def evaluate(scores, predictions, labels, k, skip_missing_pairs=False):
    """
    Computes all evaluation metrics.

    Parameters
    ----------
    scores : array_like of shape (n, k)
        Class probability vectors.

    predictions : array_like of shape (n,)
        Predicted class indices.

    labels : array_like of shape (n,)
        Actual class indices.

    k : int
        Number of classes, at least 2.

    skip_missing_pairs : bool, optional
        If `True`, class pairs with a class absent from `labels` are left
        out of the AUC computation, used for single folds. If no pair is
        left, `auc_area` is `None`.

        Defaults to `False`.

    Returns
    -------
    report : EvalReport

    Raises
    ------
    LengthMismatchException
        If the inputs have different lengths.

    MissingClassException
        If `skip_missing_pairs` is `False` and a class is absent.
    """
    if k < 2:
        raise ValueError("`k` is smaller than 2")
    _check_lengths(scores, predictions, labels)
    confusion = ConfusionMatrix.from_predictions(predictions, labels, k)
    pairs, aucs = pairwise_aucs(scores, labels, k, skip_missing_pairs)
    return EvalReport(
        auc_area=auc_area(aucs) if aucs else None,
        micro_f1=confusion.micro_f1(),
        accuracy=confusion.accuracy(),
        per_class_accuracy=confusion.per_class_accuracy(),
        confusion=confusion,
        pairs=pairs,
        pair_aucs=aucs,
    )
