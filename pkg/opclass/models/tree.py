"""
C4.5 decision trees with instance weights.

Splits are binary `value <= threshold` tests on numeric features, chosen
by maximal gain ratio. Samples with a missing value at the split feature
are sent down both branches, their weight multiplied by the fraction of
known weight going to the branch. Leaves hold Laplace smoothed weighted
class frequencies.

Weights are rescaled internally so that the positive weights sum up to the
number of samples with positive weight. This keeps `min_leaf_weight` in
units of samples for normalized boosting distributions.
"""

import numpy as np

from opclass.core.computing import entropy
from opclass.core.exceptions import (
    AllWeightsZeroException,
    EmptyDatasetException,
    SchemaMismatchException,
)

TOLERANCE = 1e-12

# Maximal number of zero-gain splits tried by the lookahead
LOOKAHEAD_CANDIDATES = 16


class TrainControl:
    """
    Hyperparameters of the tree induction.

    Parameters
    ----------
    min_leaf_weight : float, optional
        Minimal known weight of each branch of a split. Nodes lighter than
        twice this weight become leaves.

        Defaults to `2.0`.

    max_depth : int, optional
        Maximal depth of a leaf, the root has depth `0`.

        Defaults to `25`.

    laplace_alpha : float, optional
        Pseudo count added to every class at the leaves.

        Defaults to `1.0`.
    """

    def __init__(self, min_leaf_weight=2.0, max_depth=25, laplace_alpha=1.0):
        if min_leaf_weight <= 0:
            raise ValueError("`min_leaf_weight` is non-positive")
        if max_depth < 1:
            raise ValueError("`max_depth` is smaller than 1")
        if laplace_alpha < 0:
            raise ValueError("`laplace_alpha` is negative")
        self.min_leaf_weight = float(min_leaf_weight)
        self.max_depth = int(max_depth)
        self.laplace_alpha = float(laplace_alpha)

    def __repr__(self):
        return (
            f"TrainControl(min_leaf_weight={self.min_leaf_weight}, "
            f"max_depth={self.max_depth}, "
            f"laplace_alpha={self.laplace_alpha})"
        )

    def __eq__(self, other):
        if not isinstance(other, TrainControl):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def to_dict(self):
        return {
            "min_leaf_weight": self.min_leaf_weight,
            "max_depth": self.max_depth,
            "laplace_alpha": self.laplace_alpha,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


class Leaf:
    """Tree node holding a class probability distribution."""

    is_leaf = True

    def __init__(self, distribution):
        self.distribution = np.asarray(distribution, dtype=float)

    def __repr__(self):
        return f"Leaf({self.distribution.tolist()})"

    def to_dict(self):
        return {"kind": "leaf", "distribution": self.distribution.tolist()}


class Split:
    """Binary tree node routing `x[feature] <= threshold` to the left.

    `fractions` are the shares of known training weight that went to the
    left and the right branch.
    """

    is_leaf = False

    def __init__(self, feature, threshold, left, right, fractions):
        self.feature = int(feature)
        self.threshold = float(threshold)
        self.left = left
        self.right = right
        self.fractions = (float(fractions[0]), float(fractions[1]))

    def __repr__(self):
        return (
            f"Split(feature={self.feature}, threshold={self.threshold}, "
            f"fractions={self.fractions})"
        )

    def to_dict(self):
        return {
            "kind": "split",
            "feature": self.feature,
            "threshold": self.threshold,
            "fractions": list(self.fractions),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


def node_from_dict(data):
    """Rebuilds a tree node from its JSON document."""
    if data["kind"] == "leaf":
        return Leaf(data["distribution"])
    if data["kind"] == "split":
        return Split(
            data["feature"],
            data["threshold"],
            node_from_dict(data["left"]),
            node_from_dict(data["right"]),
            data["fractions"],
        )
    raise ValueError(f"unknown node kind {data['kind']!r}")


class DecisionTree:
    """
    A trained C4.5 tree.

    Parameters
    ----------
    root : Leaf or Split

    n_features : int

    n_classes : int
    """

    def __init__(self, root, n_features, n_classes):
        self.root = root
        self.n_features = int(n_features)
        self.n_classes = int(n_classes)

    def __repr__(self):
        return (
            f"DecisionTree(n_features={self.n_features}, "
            f"n_classes={self.n_classes}, depth={self.depth}, "
            f"n_leaves={self.n_leaves})"
        )

    @property
    def depth(self):
        """Number of splits on the longest path from the root."""
        return _depth(self.root)

    @property
    def n_leaves(self):
        return _n_leaves(self.root)

    def predict_proba(self, X):
        """
        Parameters
        ----------
        X : array_like of shape (d,) or (n, d)
            Feature vectors, missing values as `nan`.

        Returns
        -------
        probs : numpy.ndarray of shape (k,) or (n, k)

        Raises
        ------
        SchemaMismatchException
            If the number of features does not match.
        """
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != self.n_features:
            raise SchemaMismatchException(
                f"tree expects {self.n_features} features, got {X.shape[1]}"
            )
        probs = _route(self.root, X, self.n_classes)
        return probs[0] if single else probs

    def predict(self, X):
        """Class indices of highest probability, ties resolved to the
        lowest index."""
        return np.argmax(self.predict_proba(X), axis=-1)

    def to_dict(self):
        return {
            "n_features": self.n_features,
            "n_classes": self.n_classes,
            "root": self.root.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            node_from_dict(data["root"]),
            data["n_features"],
            data["n_classes"],
        )


def _depth(node):
    if node.is_leaf:
        return 0
    return 1 + max(_depth(node.left), _depth(node.right))


def _n_leaves(node):
    if node.is_leaf:
        return 1
    return _n_leaves(node.left) + _n_leaves(node.right)


def _route(node, X, n_classes):
    if node.is_leaf:
        return np.tile(node.distribution, (X.shape[0], 1))

    probs = np.empty((X.shape[0], n_classes))
    column = X[:, node.feature]
    missing = np.isnan(column)
    left = ~missing & (column <= node.threshold)
    right = ~missing & ~left
    if left.any():
        probs[left] = _route(node.left, X[left], n_classes)
    if right.any():
        probs[right] = _route(node.right, X[right], n_classes)
    if missing.any():
        frac_left, frac_right = node.fractions
        probs[missing] = frac_left * _route(
            node.left, X[missing], n_classes
        ) + frac_right * _route(node.right, X[missing], n_classes)
    return probs


def predict_proba_tree(tree, x):
    """
    Class probabilities of a single feature vector.

    Parameters
    ----------
    tree : DecisionTree

    x : array_like of shape (d,)

    Returns
    -------
    probs : numpy.ndarray of shape (k,)
        Sums up to 1.
    """
    return tree.predict_proba(np.asarray(x, dtype=float).reshape(-1))


def train_tree(dataset, weights=None, ctrl=None):
    """
    Induces a C4.5 tree.

    A node becomes a leaf if it is pure, lighter than
    `2 * min_leaf_weight`, at depth `max_depth` or if no split has
    positive information gain. If no split has positive gain but a
    zero-gain split enables a positive-gain split one level deeper, that
    split is taken (this is what lets the tree learn XOR-like concepts).
    The children of that split have to weigh at least
    `2 * min_leaf_weight`, so the four XOR corners with unit weights are
    only learned with `min_leaf_weight=1`.

    Parameters
    ----------
    dataset : LabeledDataset

    weights : array_like of shape (n,), optional
        Non-negative instance weights. Samples with weight `0` do not
        influence the tree.

        Defaults to uniform weights.

    ctrl : TrainControl, optional
        Defaults to `TrainControl()`.

    Returns
    -------
    tree : DecisionTree

    Raises
    ------
    EmptyDatasetException
        If `dataset` has no samples.

    AllWeightsZeroException
        If all weights are zero.
    """
    ctrl = ctrl or TrainControl()
    if dataset.n_samples == 0:
        raise EmptyDatasetException("cannot train a tree on no samples")
    if weights is None:
        weights = np.ones(dataset.n_samples)
    weights = np.asarray(weights, dtype=float)
    if weights.shape != (dataset.n_samples,):
        raise ValueError("`weights` does not match the number of samples")
    if (weights < 0).any() or not np.isfinite(weights).all():
        raise ValueError("`weights` contains negative or non finite values")

    used = weights > 0
    if not used.any():
        raise AllWeightsZeroException("all sample weights are zero")
    w = weights[used]
    w = w * (len(w) / w.sum())

    builder = _TreeBuilder(dataset.n_classes, ctrl)
    root = builder.grow(dataset.X[used], dataset.y[used], w, 0)
    return DecisionTree(root, dataset.n_features, dataset.n_classes)


class _Candidates:
    """Valid splits of a node, as parallel arrays."""

    def __init__(self, ratio, gain, feature, threshold, frac_left):
        self.ratio = ratio
        self.gain = gain
        self.feature = feature
        self.threshold = threshold
        self.frac_left = frac_left

    def order(self, mask):
        """Indices of the masked candidates by decreasing gain ratio, then
        decreasing gain, lowest feature and lowest threshold."""
        idx = np.flatnonzero(mask)
        keys = (
            self.threshold[idx],
            self.feature[idx],
            -np.round(self.gain[idx], 12),
            -np.round(self.ratio[idx], 12),
        )
        return idx[np.lexsort(keys)]


class _TreeBuilder:
    def __init__(self, n_classes, ctrl):
        self.n_classes = n_classes
        self.ctrl = ctrl

    def leaf(self, y, w):
        counts = np.bincount(y, weights=w, minlength=self.n_classes)
        alpha = self.ctrl.laplace_alpha
        return Leaf((counts + alpha) / (counts.sum() + self.n_classes * alpha))

    def is_terminal(self, y, w, depth):
        counts = np.bincount(y, weights=w, minlength=self.n_classes)
        return (
            np.count_nonzero(counts > 0) <= 1
            or counts.sum() < 2 * self.ctrl.min_leaf_weight - TOLERANCE
            or depth >= self.ctrl.max_depth
        )

    def grow(self, X, y, w, depth):
        if self.is_terminal(y, w, depth):
            return self.leaf(y, w)

        cands = self.candidates(X, y, w)
        if cands is None:
            return self.leaf(y, w)

        positive = cands.gain > TOLERANCE
        if positive.any():
            choice = cands.order(positive)[0]
        else:
            choice = self.lookahead(X, y, w, depth, cands)
            if choice is None:
                return self.leaf(y, w)

        feature = cands.feature[choice]
        threshold = cands.threshold[choice]
        frac_left = cands.frac_left[choice]
        (Xl, yl, wl), (Xr, yr, wr) = _partition(
            X, y, w, feature, threshold, frac_left
        )
        return Split(
            feature,
            threshold,
            self.grow(Xl, yl, wl, depth + 1),
            self.grow(Xr, yr, wr, depth + 1),
            (frac_left, 1 - frac_left),
        )

    def lookahead(self, X, y, w, depth, cands):
        if depth + 1 >= self.ctrl.max_depth:
            return None
        for choice in cands.order(np.ones(len(cands.gain), dtype=bool))[
            :LOOKAHEAD_CANDIDATES
        ]:
            children = _partition(
                X,
                y,
                w,
                cands.feature[choice],
                cands.threshold[choice],
                cands.frac_left[choice],
            )
            for Xc, yc, wc in children:
                if self.is_terminal(yc, wc, depth + 1):
                    continue
                child = self.candidates(Xc, yc, wc)
                if child is not None and (child.gain > TOLERANCE).any():
                    return choice
        return None

    def candidates(self, X, y, w):
        """Collects all splits leaving at least `min_leaf_weight` known
        weight in each branch."""
        total = w.sum()
        min_leaf = self.ctrl.min_leaf_weight - TOLERANCE
        parts = []
        for feature in range(X.shape[1]):
            column = X[:, feature]
            known = ~np.isnan(column)
            if np.count_nonzero(known) < 2:
                continue
            order = np.argsort(column[known], kind="stable")
            values = column[known][order]
            wk = w[known][order]
            yk = y[known][order]

            positions = np.flatnonzero(values[:-1] < values[1:])
            if positions.size == 0:
                continue
            onehot = np.zeros((len(values), self.n_classes))
            onehot[np.arange(len(values)), yk] = wk
            cumulated = np.cumsum(onehot, axis=0)
            known_counts = cumulated[-1]
            known_w = known_counts.sum()

            left = cumulated[positions]
            right = np.maximum(known_counts - left, 0)
            left_w, right_w = left.sum(axis=1), right.sum(axis=1)
            valid = (left_w >= min_leaf) & (right_w >= min_leaf)
            if not valid.any():
                continue
            positions = positions[valid]
            left, right = left[valid], right[valid]
            left_w, right_w = left_w[valid], right_w[valid]

            conditional = (
                left_w * entropy(left) + right_w * entropy(right)
            ) / known_w
            gain = known_w / total * (entropy(known_counts) - conditional)
            missing_w = w[~known].sum()
            split_info = entropy(
                np.column_stack(
                    [left_w, right_w, np.full(len(left_w), missing_w)]
                )
            )
            ratio = np.divide(
                gain,
                split_info,
                out=np.zeros_like(gain),
                where=split_info > 0,
            )

            lower, upper = values[positions], values[positions + 1]
            threshold = (lower + upper) / 2
            threshold = np.where(threshold < upper, threshold, lower)
            parts.append(
                (
                    ratio,
                    gain,
                    np.full(len(gain), feature),
                    threshold,
                    left_w / (left_w + right_w),
                )
            )

        if not parts:
            return None
        return _Candidates(*(np.concatenate(arrays) for arrays in zip(*parts)))


def _partition(X, y, w, feature, threshold, frac_left):
    column = X[:, feature]
    missing = np.isnan(column)
    goes_left = ~missing & (column <= threshold)
    goes_right = ~missing & ~goes_left

    children = []
    for branch, fraction in (
        (goes_left, frac_left),
        (goes_right, 1 - frac_left),
    ):
        members = branch | missing
        weights = np.where(missing, w * fraction, w)[members]
        children.append((X[members], y[members], weights))
    return children
