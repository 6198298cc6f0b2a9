"""
Contains the abstract base class `Classifier` of all trained contract
classifiers and their JSON persistence.

Models are stored as JSON documents with a `kind` tag, `load_model`
dispatches on it:

- `"c45"`: a single C4.5 tree,
- `"adaboost"`: an AdaBoost.M1 ensemble of trees,
- `"masked"`: a feature mask wrapping another model.
"""

import json
from abc import ABC, abstractmethod

import numpy as np

from opclass.core.exceptions import (
    FileReadingException,
    SchemaMismatchException,
)
from opclass.processing.extractor import FeatureSchema

from .tree import DecisionTree

MODEL_KINDS = {}


def register_model(kind):
    """Class decorator registering a `Classifier` subclass for loading
    documents of the given kind."""

    def decorator(cls):
        cls.kind = kind
        MODEL_KINDS[kind] = cls
        return cls

    return decorator


class Classifier(ABC):
    """
    Base class for all trained classifiers.

    Parameters
    ----------
    schema : FeatureSchema
        Schema of the feature vectors the classifier expects.

    class_names : sequence of str
    """

    kind = None

    def __init__(self, schema, class_names):
        self.schema = schema
        self.class_names = tuple(class_names)

    @property
    def n_classes(self):
        return len(self.class_names)

    def _check(self, X):
        X = np.asarray(X, dtype=float)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.shape[1] != len(self.schema):
            raise SchemaMismatchException(
                f"model expects {len(self.schema)} features of schema "
                f"`{self.schema.name}`, got {X.shape[1]}"
            )
        return X, single

    def predict_proba(self, X):
        """
        Parameters
        ----------
        X : array_like of shape (d,) or (n, d)

        Returns
        -------
        probs : numpy.ndarray of shape (k,) or (n, k)
            Class probability vectors, each summing up to 1.

        Raises
        ------
        SchemaMismatchException
            If the number of features does not match the schema.
        """
        X, single = self._check(X)
        probs = self._predict_proba(X)
        return probs[0] if single else probs

    def predict(self, X):
        """
        Parameters
        ----------
        X : array_like of shape (d,) or (n, d)

        Returns
        -------
        labels : int or numpy.ndarray of int
            Predicted class indices.
        """
        X, single = self._check(X)
        labels = self._predict(X)
        return int(labels[0]) if single else labels

    def _predict(self, X):
        return np.argmax(self._predict_proba(X), axis=1)

    @abstractmethod
    def _predict_proba(self, X):
        """This method should compute the class probabilities of the rows
        of a checked (n, d) array."""

    @abstractmethod
    def _payload(self):
        """This method should return the kind specific part of the JSON
        document."""

    @classmethod
    @abstractmethod
    def _from_payload(cls, schema, class_names, payload):
        """This method should rebuild a model from its JSON document."""

    def to_dict(self):
        return {
            "kind": self.kind,
            "schema": self.schema.to_dict(),
            "class_names": list(self.class_names),
            **self._payload(),
        }

    def to_file(self, path):
        """
        Writes the model to a `json` file such that it can be read via
        `load_model`.

        Parameters
        ----------
        path : path like
        """
        with open(path, "w", encoding="utf-8") as file:
            json.dump(self, file, cls=_ModelEncoder, sort_keys=True, indent=2)


class _ModelEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, (Classifier, FeatureSchema, DecisionTree)):
            return o.to_dict()
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.bool_):
            return bool(o)
        return super().default(o)


def model_from_dict(data):
    """
    Parameters
    ----------
    data : dict
        JSON document of a model.

    Returns
    -------
    model : Classifier
    """
    try:
        cls = MODEL_KINDS[data["kind"]]
    except KeyError as ke:
        raise FileReadingException(
            f"unknown model kind {data.get('kind')!r}"
        ) from ke
    return cls._from_payload(
        FeatureSchema.from_dict(data["schema"]), data["class_names"], data
    )


def load_model(path):
    """
    Reads a model from a compatible `json` file (for example those created
    via the `to_file` method).

    Parameters
    ----------
    path : path like

    Returns
    -------
    model : Classifier
    """
    try:
        with open(path, "r", encoding="utf-8") as file:
            data = json.load(file)
    except OSError as oe:
        raise FileReadingException(f"could not read {path}: {oe}") from oe
    except ValueError as ve:
        raise FileReadingException(f"{path} is no valid model file") from ve
    return model_from_dict(data)


@register_model("c45")
class C45Model(Classifier):
    """
    A single C4.5 tree.

    Parameters
    ----------
    tree : DecisionTree

    schema : FeatureSchema

    class_names : sequence of str

    See also
    --------
    `Classifier`
    """

    def __init__(self, tree, schema, class_names):
        super().__init__(schema, class_names)
        self.tree = tree

    def __repr__(self):
        return f"C45Model(tree={self.tree!r}, schema={self.schema!r})"

    def _predict_proba(self, X):
        return self.tree.predict_proba(X)

    def _payload(self):
        return {"tree": self.tree.to_dict()}

    @classmethod
    def _from_payload(cls, schema, class_names, payload):
        tree = DecisionTree.from_dict(payload["tree"])
        return cls(tree, schema, class_names)


@register_model("masked")
class MaskedModel(Classifier):
    """
    A model trained on a subset of features, applied to full feature
    vectors.

    Parameters
    ----------
    mask : array_like of bool
        Selected features of `schema`.

    schema : FeatureSchema
        Schema of the unmasked feature vectors.

    inner : Classifier
        Model trained on the selected features.

    See also
    --------
    `Classifier`
    """

    def __init__(self, mask, schema, inner):
        super().__init__(schema, inner.class_names)
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (len(schema),):
            raise ValueError("`mask` does not match the schema")
        if np.count_nonzero(mask) != len(inner.schema):
            raise ValueError("`mask` does not match the inner model")
        self.mask = mask
        self.inner = inner

    def __repr__(self):
        return (
            f"MaskedModel(n_selected={int(self.mask.sum())}, "
            f"schema={self.schema!r}, inner={self.inner!r})"
        )

    @property
    def selected_features(self):
        return [
            name
            for name, keep in zip(self.schema.feature_names, self.mask)
            if keep
        ]

    def _predict_proba(self, X):
        return self.inner.predict_proba(X[:, self.mask])

    def _predict(self, X):
        return self.inner.predict(X[:, self.mask])

    def _payload(self):
        return {"mask": self.mask.tolist(), "inner": self.inner.to_dict()}

    @classmethod
    def _from_payload(cls, schema, class_names, payload):
        return cls(payload["mask"], schema, model_from_dict(payload["inner"]))
