"""
Functions for basic computations.
"""

import math

import numpy as np
from scipy.special import expit


def entropy(counts):
    """Shannon entropy (in bits) of one or several weighted class
    distributions.

    Parameters
    ----------
    counts : array_like of shape (k,) or (n, k)
        Non-negative (weighted) class counts. Rows are normalized
        internally, all-zero rows have entropy `0`.

    Returns
    -------
    entropy : float or numpy.ndarray of shape (n,)
    """
    counts = np.asarray(counts, dtype=float)
    totals = counts.sum(axis=-1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        probs = np.where(totals > 0, counts / totals, 0.0)
        terms = np.where(probs > 0, -probs * np.log2(probs), 0.0)
    return terms.sum(axis=-1)


def sigmoid(values):
    """Logistic transfer function `1 / (1 + exp(-v))`, computed without
    overflow.

    Parameters
    ----------
    values : float or array_like

    Returns
    -------
    probs : float or numpy.ndarray
    """
    return expit(values)


def json_ready(obj):
    """
    Recursively converts numpy containers and scalars into plain Python
    objects that can be serialized by `json`. Non finite floats become
    `None`, tuples become lists.

    Parameters
    ----------
    obj : object

    Returns
    -------
    converted : object
    """
    if isinstance(obj, dict):
        return {str(key): json_ready(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return json_ready(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        return obj if math.isfinite(obj) else None
    return obj
