# pylint: disable-all

import json
import os
from unittest import TestCase, skipUnless

import numpy as np
import requests

from opclass.core.data import LabeledDataset
from opclass.processing.extractor import FeatureSchema

slow_test = skipUnless(
    os.environ.get("OPCLASS_SLOW_TESTS") == "1",
    "set OPCLASS_SLOW_TESTS=1 to run the acceptance experiments",
)


class OpclassTestCase(TestCase):
    def assert_list_almost_equal(self, result, expected_result, places, msg):
        for i, element in enumerate(expected_result):
            try:
                if result[i] is None:
                    self.assertIsNone(element)
                    continue
                if element is None:
                    self.assertIsNone(result[i])
                    continue
                self.assertAlmostEqual(result[i], element, places, msg)
            except AssertionError as exp:
                raise AssertionError(
                    f"{result} != {expected_result},\n"
                    "first different entry is "
                    f"{result[i]} != {expected_result[i]} at index {i}.\n\n"
                    f"{msg}"
                ) from exp

    def assert_array_equal(self, result, expected, msg=""):
        try:
            np.testing.assert_array_equal(result, expected)
        except AssertionError as exp:
            raise AssertionError(f"{result} != {expected}\n\n{msg}") from exp

    def assert_probability_vectors(self, probs, msg=""):
        probs = np.atleast_2d(probs)
        self.assertTrue((probs >= 0).all(), msg)
        for row in probs:
            self.assertAlmostEqual(float(row.sum()), 1.0, 9, msg)


def custom_dataset(X, labels, class_names=None):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    schema = FeatureSchema.custom([f"f{i}" for i in range(X.shape[1])])
    return LabeledDataset.from_labels(schema, X, labels, class_names)


def xor_dataset(copies=5):
    """XOR of two binary features, every corner `copies` times."""
    corners = [[0, 0], [0, 1], [1, 0], [1, 1]]
    labels = ["even", "odd", "odd", "even"]
    return custom_dataset(
        corners * copies, labels * copies, class_names=["even", "odd"]
    )


def separable_dataset(per_class=10, n_classes=3, n_noise=0, seed=0):
    """One informative feature placing class `c` around `10 * c`, followed
    by `n_noise` uniform noise features."""
    rng = np.random.default_rng(seed)
    labels = np.repeat(np.arange(n_classes), per_class)
    informative = 10.0 * labels + rng.uniform(-1, 1, len(labels))
    noise = rng.uniform(0, 1, (len(labels), n_noise))
    X = np.column_stack([informative, noise])
    return custom_dataset(
        X,
        [f"c{label}" for label in labels],
        class_names=[f"c{c}" for c in range(n_classes)],
    )


class FakeResponse:
    def __init__(self, status_code=200, payload=None, text=None):
        self.status_code = status_code
        self._payload = payload
        self._text = text

    def json(self):
        if self._text is not None:
            return json.loads(self._text)
        return self._payload


class FakeSession:
    """Stands in for `requests.Session`. `answer` maps the decoded request
    body to a `FakeResponse` or raises a `requests.RequestException`."""

    def __init__(self, answer):
        self.answer = answer
        self.requests = []

    def post(self, url, data=None, headers=None, timeout=None):
        body = json.loads(data)
        self.requests.append((url, body))
        return self.answer(body)


def code_answer(codes):
    """Answers `eth_getCode` requests from a dict of address to hex code."""

    def answer(body):
        address = body["params"][0]
        return FakeResponse(
            payload={
                "jsonrpc": "2.0",
                "id": body["id"],
                "result": codes[address],
            }
        )

    return answer


def failing_answer(failures, then):
    """Raises a connection error `failures` times, then delegates."""
    state = {"left": failures}

    def answer(body):
        if state["left"] > 0:
            state["left"] -= 1
            raise requests.ConnectionError("connection refused")
        return then(body)

    return answer
