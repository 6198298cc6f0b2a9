"""
Contains the class `LabeledDataset`, which is the input of all classifier
components, and the class statistics and fold plans computed on it.
"""

import warnings

import numpy as np
import pandas as pd

from .exceptions import (
    BadFoldCountException,
    EmptyClassException,
    MaskEmptyException,
    SchemaMismatchException,
    UnknownLabelException,
)


class LabeledDataset:
    """
    Immutable table of feature vectors with class labels.

    Labels are stored as class indices in memory, the class names are
    kept in an ordered list. Missing feature values are `numpy.nan`.

    Parameters
    ----------
    schema : FeatureSchema
        Schema the feature vectors conform to.

    X : array_like of shape (n, d)
        The feature vectors, `d` has to match the number of features of
        `schema`.

    y : array_like of shape (n,)
        Class indices.

    class_names : sequence of str
        The names of the classes, `class_names[i]` belongs to index `i`.

    Raises
    ------
    SchemaMismatchException
        If the number of columns of `X` does not match the schema.

    ValueError
        If `y` contains invalid class indices or class names are not
        unique.
    """

    def __init__(self, schema, X, y, class_names):
        X = np.array(X, dtype=float, ndmin=2)
        if X.size == 0:
            X = X.reshape(0, len(schema.feature_names))
        y = np.array(y, dtype=np.int64).reshape(-1)
        class_names = tuple(str(name) for name in class_names)

        if X.shape[1] != len(schema.feature_names):
            raise SchemaMismatchException(
                f"data has {X.shape[1]} features, schema `{schema.name}` "
                f"expects {len(schema.feature_names)}"
            )
        if X.shape[0] != y.shape[0]:
            raise ValueError("`X` and `y` have different lengths")
        if len(set(class_names)) != len(class_names):
            raise ValueError("`class_names` are not unique")
        if y.size and (y.min() < 0 or y.max() >= len(class_names)):
            raise ValueError("`y` contains an unknown class index")

        X.flags.writeable = False
        y.flags.writeable = False
        self._schema = schema
        self._X = X
        self._y = y
        self._class_names = class_names

    @classmethod
    def from_labels(cls, schema, X, labels, class_names=None):
        """
        Creates a dataset from string labels.

        Parameters
        ----------
        schema : FeatureSchema

        X : array_like of shape (n, d)

        labels : sequence of str

        class_names : sequence of str, optional
            The known class names. If given, every label has to be one of
            them.

            Defaults to the labels in order of first appearance.

        Returns
        -------
        dataset : LabeledDataset

        Raises
        ------
        UnknownLabelException
            If a label is not contained in `class_names`.
        """
        labels = [str(label) for label in labels]
        if class_names is None:
            class_names = list(dict.fromkeys(labels))
        index = {name: i for i, name in enumerate(class_names)}
        try:
            y = [index[label] for label in labels]
        except KeyError as ke:
            raise UnknownLabelException(
                f"label {ke.args[0]!r} is not one of {list(class_names)}"
            ) from ke
        return cls(schema, X, y, class_names)

    @property
    def schema(self):
        """The feature schema of the dataset."""
        return self._schema

    @property
    def X(self):
        """A read-only `numpy.ndarray` of shape (n, d)."""
        return self._X

    @property
    def y(self):
        """A read-only `numpy.ndarray` of class indices."""
        return self._y

    @property
    def class_names(self):
        return self._class_names

    @property
    def feature_names(self):
        return tuple(self._schema.feature_names)

    @property
    def labels(self):
        """The class names of all samples."""
        return [self._class_names[i] for i in self._y]

    @property
    def n_samples(self):
        return self._X.shape[0]

    @property
    def n_features(self):
        return self._X.shape[1]

    @property
    def n_classes(self):
        return len(self._class_names)

    def __len__(self):
        return self.n_samples

    def __repr__(self):
        return (
            f"LabeledDataset(schema={self._schema.name!r}, "
            f"n_samples={self.n_samples}, n_features={self.n_features}, "
            f"class_names={list(self._class_names)})"
        )

    def class_counts(self):
        """
        Returns
        -------
        counts : numpy.ndarray of shape (k,)
            Number of samples per class.
        """
        return np.bincount(self._y, minlength=self.n_classes)

    def subset(self, indices):
        """
        Parameters
        ----------
        indices : array_like of int or bool

        Returns
        -------
        dataset : LabeledDataset
            A dataset containing the given rows, with the same schema and
            class names.
        """
        indices = np.asarray(indices)
        if indices.size == 0:
            indices = indices.astype(int)
        return LabeledDataset(
            self._schema,
            self._X[indices],
            self._y[indices],
            self._class_names,
        )

    def restrict_features(self, mask):
        """
        Parameters
        ----------
        mask : array_like of bool of shape (d,)
            The selected features.

        Returns
        -------
        dataset : LabeledDataset
            A dataset containing only the selected columns, with a schema
            restricted accordingly.

        Raises
        ------
        MaskEmptyException
            If no feature is selected.
        """
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (self.n_features,):
            raise ValueError("`mask` does not match the number of features")
        if not mask.any():
            raise MaskEmptyException("`mask` selects no feature")
        return LabeledDataset(
            self._schema.subset(mask),
            self._X[:, mask],
            self._y,
            self._class_names,
        )


class FoldPlan:
    """
    Assignment of the samples of a dataset to cross-validation folds.

    Parameters
    ----------
    fold_count : int

    assignments : array_like of int
        `assignments[i]` is the fold of sample `i`.

    seed : int
        The seed the plan was generated with.
    """

    def __init__(self, fold_count, assignments, seed):
        self.fold_count = fold_count
        self.assignments = np.asarray(assignments, dtype=np.int64)
        self.seed = seed

    def __repr__(self):
        return (
            f"FoldPlan(fold_count={self.fold_count}, "
            f"n_samples={len(self.assignments)}, seed={self.seed})"
        )

    def test_indices(self, fold):
        """Indices of the samples held out in fold `fold`."""
        return np.flatnonzero(self.assignments == fold)

    def splits(self):
        """
        Yields
        ------
        train_indices, test_indices : numpy.ndarray
            One pair per fold, in fold order.
        """
        for fold in range(self.fold_count):
            in_fold = self.assignments == fold
            yield np.flatnonzero(~in_fold), np.flatnonzero(in_fold)


def _checked_counts(ds):
    counts = ds.class_counts()
    empty = [ds.class_names[i] for i in np.flatnonzero(counts == 0)]
    if empty:
        raise EmptyClassException(f"classes {empty} have no samples")
    return counts


def imbalance_ratio(ds):
    """
    Parameters
    ----------
    ds : LabeledDataset

    Returns
    -------
    ratio : float
        Size of the largest class divided by the size of the smallest.

    Raises
    ------
    EmptyClassException
        If a class has no sample.
    """
    counts = _checked_counts(ds)
    return float(counts.max() / counts.min())


def stratified_folds(ds, k_folds, seed, ignore_empty_classes=False):
    """
    Computes a seeded, stratified assignment of samples to folds.

    The samples of every class are shuffled and dealt round robin to the
    folds. Dealing continues with the fold following the last one served
    for the previous class, which keeps the fold sizes balanced overall.

    Parameters
    ----------
    ds : LabeledDataset

    k_folds : int
        Number of folds, at least 2.

    seed : int

    ignore_empty_classes : bool, optional
        If `True`, classes without samples are left out instead of
        raising. Used for training subsets that lost a rare class.

        Defaults to `False`.

    Returns
    -------
    plan : FoldPlan

    Raises
    ------
    BadFoldCountException
        If `k_folds` is smaller than 2.

    EmptyClassException
        If a class has no sample and `ignore_empty_classes` is `False`.
    """
    if k_folds < 2:
        raise BadFoldCountException(
            f"`k_folds` is {k_folds}, at least 2 folds are needed"
        )
    if ignore_empty_classes:
        counts = ds.class_counts()
    else:
        counts = _checked_counts(ds)
    small = [
        ds.class_names[i]
        for i in np.flatnonzero((counts > 0) & (counts < k_folds))
    ]
    if small:
        warnings.warn(
            f"Classes {small} have fewer samples than folds, some folds "
            "will not contain them"
        )

    rng = np.random.default_rng(seed)
    assignments = np.empty(ds.n_samples, dtype=np.int64)
    offset = 0
    for label in range(ds.n_classes):
        members = rng.permutation(np.flatnonzero(ds.y == label))
        assignments[members] = (offset + np.arange(len(members))) % k_folds
        offset = (offset + len(members)) % k_folds
    return FoldPlan(k_folds, assignments, seed)


def category_feature_means(ds, top_n=None, exclude=()):
    """
    Computes the mean of every feature per class, ranked descending.
    Missing values are skipped, classes without samples are left out.

    Parameters
    ----------
    ds : LabeledDataset

    top_n : int, optional
        If given, only the `top_n` highest means per class are reported.

    exclude : iterable of str, optional
        Feature names that are left out of the ranking, e.g. `"size"`.

        Defaults to `()`.

    Returns
    -------
    means : dict
        Maps class names to lists of `(feature_name, mean)` pairs sorted
        descending by mean. Features with equal means keep schema order,
        features without any known value come last with mean `nan`.
    """
    frame = pd.DataFrame(ds.X, columns=list(ds.feature_names))
    frame = frame.drop(columns=[name for name in exclude if name in frame])
    grouped = frame.groupby(ds.y).mean()

    means = {}
    for label, row in grouped.iterrows():
        ranking = sorted(
            row.items(),
            key=lambda item: (np.isnan(item[1]), -np.nan_to_num(item[1])),
        )
        if top_n is not None:
            ranking = ranking[:top_n]
        means[ds.class_names[label]] = [
            (name, float(value)) for name, value in ranking
        ]
    return means


def means_frame(means):
    """
    Flattens the output of `category_feature_means` to a table with the
    columns `category`, `rank`, `feature` and `mean`.

    Parameters
    ----------
    means : dict

    Returns
    -------
    frame : pandas.DataFrame
    """
    rows = [
        (category, rank, name, value)
        for category, ranking in means.items()
        for rank, (name, value) in enumerate(ranking, start=1)
    ]
    return pd.DataFrame(rows, columns=["category", "rank", "feature", "mean"])
