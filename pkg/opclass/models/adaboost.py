"""
AdaBoost.M1 over C4.5 weak learners.

Every round trains a tree on the weighted training set, computes its
weighted error `epsilon` and `beta = epsilon / (1 - epsilon)`, and
multiplies the weights of correctly classified samples by `beta`. The
strong hypothesis votes every round's class with weight `ln(1 / beta)`,
class scores are the average of the round probabilities weighted by
`1 - epsilon`.
"""

from typing import NamedTuple

import numpy as np
from loguru import logger

from opclass.core.exceptions import (
    DegenerateDistributionException,
    EpsilonOutOfRangeException,
    FirstRoundTooWeakException,
    LengthMismatchException,
)

from .classifier import Classifier, register_model
from .tree import DecisionTree, TrainControl, train_tree

MIN_BETA = 1e-10


class BoostingRound(NamedTuple):
    """A kept boosting round."""

    tree: DecisionTree
    epsilon: float
    beta: float


def compute_error(predictions, labels, distribution):
    """
    Weighted misclassification mass.

    Parameters
    ----------
    predictions : array_like of int

    labels : array_like of int

    distribution : array_like of float
        Normalized sample weights.

    Returns
    -------
    epsilon : float
        In `[0, 1]`.

    Raises
    ------
    LengthMismatchException
        If the inputs have different lengths.
    """
    predictions = np.asarray(predictions)
    labels = np.asarray(labels)
    distribution = np.asarray(distribution, dtype=float)
    if not len(predictions) == len(labels) == len(distribution):
        raise LengthMismatchException(
            "`predictions`, `labels` and `distribution` have different "
            "lengths"
        )
    return float(np.clip(distribution[predictions != labels].sum(), 0, 1))


def compute_beta(epsilon):
    """
    Parameters
    ----------
    epsilon : float
        Weighted error in `[0, 0.5)`.

    Returns
    -------
    beta : float
        `epsilon / (1 - epsilon)`, at least `1e-10`.

    Raises
    ------
    EpsilonOutOfRangeException
        If `epsilon` is at least `0.5`.
    """
    if epsilon < 0:
        raise ValueError("`epsilon` is negative")
    if epsilon >= 0.5:
        raise EpsilonOutOfRangeException(
            f"weighted error {epsilon} is not smaller than 0.5"
        )
    return max(epsilon / (1 - epsilon), MIN_BETA)


def update_weights(distribution, beta, correct):
    """
    Multiplies the weights of correctly classified samples by `beta` and
    renormalizes.

    Parameters
    ----------
    distribution : array_like of float

    beta : float
        In `(0, 1]`.

    correct : array_like of bool

    Returns
    -------
    distribution : numpy.ndarray
        Sums up to 1.

    Raises
    ------
    DegenerateDistributionException
        If all weights vanish.
    """
    distribution = np.asarray(distribution, dtype=float)
    correct = np.asarray(correct, dtype=bool)
    if len(distribution) != len(correct):
        raise LengthMismatchException(
            "`distribution` and `correct` have different lengths"
        )
    if not 0 < beta <= 1:
        raise ValueError("`beta` is not in (0, 1]")
    updated = np.where(correct, distribution * beta, distribution)
    total = updated.sum()
    if not np.isfinite(total) or total <= 0:
        raise DegenerateDistributionException(
            "all sample weights underflowed to zero"
        )
    return updated / total


@register_model("adaboost")
class AdaBoostModel(Classifier):
    """
    An AdaBoost.M1 ensemble.

    Parameters
    ----------
    rounds : sequence of BoostingRound
        Non-empty.

    schema : FeatureSchema

    class_names : sequence of str

    seed : int, optional
        Seed of the training run.

    control : TrainControl, optional
        Tree hyperparameters used in training.

    See also
    --------
    `Classifier`
    """

    def __init__(self, rounds, schema, class_names, seed=None, control=None):
        super().__init__(schema, class_names)
        if not rounds:
            raise ValueError("`rounds` is empty")
        self.rounds = list(rounds)
        self.seed = seed
        self.control = control or TrainControl()

    def __repr__(self):
        return (
            f"AdaBoostModel(n_rounds={len(self.rounds)}, "
            f"schema={self.schema!r}, class_names={list(self.class_names)})"
        )

    @property
    def class_count(self):
        return self.n_classes

    @property
    def epsilons(self):
        return [r.epsilon for r in self.rounds]

    @property
    def betas(self):
        return [r.beta for r in self.rounds]

    def votes(self, X):
        """
        Returns
        -------
        votes : numpy.ndarray of shape (n, k)
            Sum of `ln(1 / beta)` over the rounds predicting each class.
        """
        X, _ = self._check(X)
        votes = np.zeros((X.shape[0], self.n_classes))
        rows = np.arange(X.shape[0])
        for r in self.rounds:
            votes[rows, r.tree.predict(X)] += np.log(1 / r.beta)
        return votes

    def _predict(self, X):
        return np.argmax(self.votes(X), axis=1)

    def _predict_proba(self, X):
        weights = 1 - np.array(self.epsilons)
        weights = weights / weights.sum()
        probs = np.zeros((X.shape[0], self.n_classes))
        for weight, r in zip(weights, self.rounds):
            probs += weight * r.tree.predict_proba(X)
        return probs

    def _payload(self):
        return {
            "seed": self.seed,
            "control": self.control.to_dict(),
            "rounds": [
                {
                    "epsilon": r.epsilon,
                    "beta": r.beta,
                    "tree": r.tree.to_dict(),
                }
                for r in self.rounds
            ],
        }

    @classmethod
    def _from_payload(cls, schema, class_names, payload):
        rounds = [
            BoostingRound(
                DecisionTree.from_dict(r["tree"]), r["epsilon"], r["beta"]
            )
            for r in payload["rounds"]
        ]
        return cls(
            rounds,
            schema,
            class_names,
            payload.get("seed"),
            TrainControl.from_dict(payload["control"]),
        )


def run_boosting(dataset, T=30, ctrl=None, seed=None):
    """
    Trains an AdaBoost.M1 ensemble.

    Boosting stops early if a round reaches a weighted error of at least
    `0.5` (the round is discarded) or of exactly `0` (the round is kept
    with `beta = 1e-10`).

    Parameters
    ----------
    dataset : LabeledDataset

    T : int, optional
        Maximal number of rounds.

        Defaults to `30`.

    ctrl : TrainControl, optional
        Defaults to `TrainControl()`.

    seed : int, optional
        Recorded in the model. Tree induction is deterministic.

    Returns
    -------
    model : AdaBoostModel

    Raises
    ------
    FirstRoundTooWeakException
        If the first round has a weighted error of at least `0.5`.
    """
    if T < 1:
        raise ValueError("`T` is smaller than 1")
    ctrl = ctrl or TrainControl()
    m = dataset.n_samples
    distribution = np.full(m, 1 / m) if m else np.empty(0)

    rounds = []
    for t in range(1, T + 1):
        tree = train_tree(dataset, distribution, ctrl)
        predictions = tree.predict(dataset.X)
        epsilon = compute_error(predictions, dataset.y, distribution)
        if epsilon >= 0.5:
            if t == 1:
                raise FirstRoundTooWeakException(
                    f"first round has weighted error {epsilon}"
                )
            logger.debug(f"boosting stopped in round {t}, error {epsilon}")
            break

        beta = compute_beta(epsilon)
        rounds.append(BoostingRound(tree, epsilon, beta))
        if epsilon == 0:
            logger.debug(f"boosting stopped in round {t}, zero error")
            break
        try:
            distribution = update_weights(
                distribution, beta, predictions == dataset.y
            )
        except DegenerateDistributionException:
            logger.debug(f"boosting stopped in round {t}, degenerate weights")
            break

    return AdaBoostModel(
        rounds, dataset.schema, dataset.class_names, seed, ctrl
    )


def predict(model, x):
    """Class index of the strong hypothesis, see `AdaBoostModel.predict`."""
    return model.predict(x)


def predict_proba(model, x):
    """Class scores of the ensemble, see `AdaBoostModel.predict_proba`."""
    return model.predict_proba(x)
