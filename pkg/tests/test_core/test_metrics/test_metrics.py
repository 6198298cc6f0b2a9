# pylint: disable-all

from itertools import combinations
from unittest import TestCase

import numpy as np

import opclass.core.metrics as met
from opclass.core.exceptions import (
    EmptySetException,
    LengthMismatchException,
    MissingClassException,
)


def brute_force_auc(scores, labels, a, b):
    margins = scores[:, a] - scores[:, b]
    pos, neg = margins[labels == a], margins[labels == b]
    total = 0.0
    for p in pos:
        for n in neg:
            total += 1.0 if p > n else 0.5 if p == n else 0.0
    return total / (len(pos) * len(neg))


def brute_force_area(r):
    q = len(r)
    return (sum(r[i] * r[i + 1] for i in range(q - 1)) + r[-1] * r[0]) / q


def _two_class_scores(margins_a, margins_b):
    margins = list(margins_a) + list(margins_b)
    scores = np.array([[m, 0.0] for m in margins])
    labels = np.array([0] * len(margins_a) + [1] * len(margins_b))
    return scores, labels


class TestConfusionMatrix(TestCase):
    def test_from_predictions(self):
        """
        Input/Output-Test.
        """
        cm = met.ConfusionMatrix.from_predictions(
            [0, 0, 1, 2], [0, 1, 1, 1], 3
        )
        np.testing.assert_array_equal(
            cm.counts, [[1, 1, 0], [0, 1, 0], [0, 1, 0]]
        )
        self.assertEqual(cm.total, 4)
        np.testing.assert_array_equal(cm.true_positives(), [1, 1, 0])
        np.testing.assert_array_equal(cm.false_positives(), [1, 0, 1])
        np.testing.assert_array_equal(cm.false_negatives(), [0, 2, 0])
        np.testing.assert_array_equal(cm.true_negatives(), [2, 1, 3])
        self.assertEqual(cm.accuracy(), 0.5)
        self.assertEqual(cm.per_class_accuracy(), [1.0, 1 / 3, None])

    def test_init_Error(self):
        """
        Error if counts are not square or negative.
        """
        with self.assertRaises(ValueError):
            met.ConfusionMatrix([[1, 2, 3], [1, 2, 3]])
        with self.assertRaises(ValueError):
            met.ConfusionMatrix([[1, -1], [0, 0]])

    def test_micro_f1_equals_accuracy(self):
        """
        Micro-F1 equals accuracy exactly on single-label predictions.
        """
        rng = np.random.default_rng(0)
        for _ in range(1000):
            k = int(rng.integers(2, 7))
            n = int(rng.integers(1, 60))
            cm = met.ConfusionMatrix.from_predictions(
                rng.integers(0, k, n), rng.integers(0, k, n), k
            )
            self.assertEqual(cm.micro_f1(), cm.accuracy())

    def test_edge_empty_Error(self):
        """
        Error if no sample was evaluated.
        """
        cm = met.ConfusionMatrix(np.zeros((2, 2)))
        with self.assertRaises(EmptySetException):
            cm.accuracy()
        with self.assertRaises(EmptySetException):
            cm.micro_f1()


class TestPairwiseAuc(TestCase):
    def test_separated(self):
        """
        Input/Output-Test.
        """
        scores, labels = _two_class_scores([0.9, 0.8], [0.1, 0.2])
        self.assertEqual(met.pairwise_auc(scores, labels, 0, 1), 1.0)
        self.assertEqual(met.pairwise_auc(scores, 1 - labels, 0, 1), 0.0)

    def test_ties(self):
        """
        Input/Output-Test.
        """
        scores, labels = _two_class_scores([0.9, 0.4], [0.6, 0.4])
        self.assertEqual(met.pairwise_auc(scores, labels, 0, 1), 0.625)

    def test_equals_brute_force(self):
        """
        Rank formula equals counting of all sample pairs.
        """
        rng = np.random.default_rng(1)
        for _ in range(500):
            n = int(rng.integers(2, 201))
            k = int(rng.integers(2, 5))
            labels = rng.integers(0, k, n)
            labels[:2] = [0, 1]
            scores = rng.integers(0, 5, (n, k)) / 4
            self.assertAlmostEqual(
                met.pairwise_auc(scores, labels, 0, 1),
                brute_force_auc(scores, labels, 0, 1),
                12,
            )

    def test_missing_class_Error(self):
        """
        Error if one of the classes has no sample.
        """
        scores, labels = _two_class_scores([0.9, 0.4], [])
        with self.assertRaises(MissingClassException):
            met.pairwise_auc(scores, labels, 0, 1)

    def test_length_mismatch_Error(self):
        """
        Error if scores and labels have different lengths.
        """
        with self.assertRaises(LengthMismatchException):
            met.pairwise_auc(np.zeros((3, 2)), [0, 1], 0, 1)

    def test_pairwise_aucs(self):
        """
        Input/Output-Test.
        """
        scores = np.eye(3)
        pairs, aucs = met.pairwise_aucs(scores, [0, 1, 2], 3)
        self.assertEqual(pairs, [(0, 1), (0, 2), (1, 2)])
        self.assertEqual(aucs, [1.0, 1.0, 1.0])

    def test_pairwise_aucs_skip_missing(self):
        """
        EdgeCase: Pairs with absent classes are skipped on request.
        """
        scores = np.eye(3)[[0, 1]]
        with self.assertRaises(MissingClassException):
            met.pairwise_aucs(scores, [0, 1], 3)
        pairs, aucs = met.pairwise_aucs(scores, [0, 1], 3, skip_missing=True)
        self.assertEqual(pairs, [(0, 1)])

    def test_canonical_pairs(self):
        """
        Input/Output-Test.
        """
        self.assertEqual(
            met.canonical_pairs(4),
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        self.assertEqual(met.canonical_pairs(2), [(0, 1)])


class TestAucArea(TestCase):
    def test_auc_area(self):
        """
        Input/Output-Test.
        """
        self.assertEqual(met.auc_area([1.0] * 6), 1.0)
        self.assertEqual(met.auc_area([0.5] * 3), 0.25)
        self.assertAlmostEqual(met.auc_area([1, 0.5, 0.5]), 1.25 / 3, 12)
        self.assertAlmostEqual(met.auc_area([0.8]), 0.64, 12)

    def test_equals_formula(self):
        """
        Vectorized area equals the ring sum on random inputs.
        """
        rng = np.random.default_rng(2)
        for _ in range(1000):
            k = int(rng.integers(2, 7))
            r = rng.random(k * (k - 1) // 2)
            self.assertAlmostEqual(
                met.auc_area(r), brute_force_area(list(r)), 12
            )

    def test_monotone_and_bounds(self):
        """
        Raising one AUC never lowers the area, the area is bounded.
        """
        rng = np.random.default_rng(3)
        for _ in range(1000):
            k = int(rng.integers(2, 7))
            r = rng.random(k * (k - 1) // 2)
            raised = r.copy()
            i = int(rng.integers(len(r)))
            raised[i] = rng.uniform(r[i], 1.0)
            self.assertGreaterEqual(
                met.auc_area(raised) + 1e-12, met.auc_area(r)
            )
            self.assertLessEqual(met.auc_area(r), r.max() + 1e-12)
            self.assertGreaterEqual(met.auc_area(r) + 1e-12, r.min() ** 2)

    def test_empty_Error(self):
        """
        Error if there is no AUC value.
        """
        with self.assertRaises(EmptySetException):
            met.auc_area([])


class TestRocPoints(TestCase):
    def test_roc_points(self):
        """
        Input/Output-Test.
        """
        scores, labels = _two_class_scores([0.9, 0.4], [0.6, 0.4])
        result = met.roc_points(scores, labels, 0, 1)
        self.assertEqual(
            result, [(0.0, 0.0), (0.0, 0.5), (0.5, 0.5), (1.0, 1.0)]
        )

    def test_area_under_points_is_auc(self):
        """
        Trapezoidal area under the polyline equals the pairwise AUC.
        """
        rng = np.random.default_rng(4)
        scores = rng.integers(0, 4, (40, 2)) / 3
        labels = np.array([0, 1] * 20)
        points = np.array(met.roc_points(scores, labels, 0, 1))
        area = np.sum(
            np.diff(points[:, 0]) * (points[1:, 1] + points[:-1, 1]) / 2
        )
        self.assertAlmostEqual(
            area, met.pairwise_auc(scores, labels, 0, 1), 12
        )


class TestEvaluate(TestCase):
    def test_perfect(self):
        """
        Input/Output-Test.
        """
        labels = np.array([0, 1, 2, 0, 1, 2])
        scores = np.eye(3)[labels]
        report = met.evaluate(scores, labels, labels, 3)
        self.assertEqual(report.accuracy, 1.0)
        self.assertEqual(report.micro_f1, 1.0)
        self.assertEqual(report.auc_area, 1.0)
        self.assertEqual(report.per_class_accuracy, [1.0, 1.0, 1.0])
        self.assertEqual(report.pairs, list(combinations(range(3), 2)))

    def test_majority_prediction(self):
        """
        Input/Output-Test.
        """
        labels = np.array([0] * 90 + [1] * 10)
        scores = np.tile([0.7, 0.3], (100, 1))
        predictions = np.zeros(100, dtype=int)
        report = met.evaluate(scores, predictions, labels, 2)
        self.assertEqual(report.accuracy, 0.9)
        self.assertEqual(report.per_class_accuracy, [1.0, 0.0])
        self.assertEqual(report.micro_f1, report.accuracy)
        self.assertEqual(report.auc_area, 0.25)

    def test_skip_missing_pairs(self):
        """
        EdgeCase: Folds with one class have no AUC area.
        """
        scores = np.array([[0.6, 0.4], [0.7, 0.3]])
        report = met.evaluate(
            scores, [0, 0], [0, 0], 2, skip_missing_pairs=True
        )
        self.assertIsNone(report.auc_area)
        self.assertEqual(report.per_class_accuracy, [1.0, None])

    def test_evaluate_Error(self):
        """
        Error if inputs have different lengths or k is too small.
        """
        with self.assertRaises(LengthMismatchException):
            met.evaluate(np.eye(2), [0], [0, 1], 2)
        with self.assertRaises(ValueError):
            met.evaluate(np.ones((2, 1)), [0, 0], [0, 0], 1)

    def test_report_serialization(self):
        """
        Input/Output-Test.
        """
        labels = np.array([0, 1, 1])
        report = met.evaluate(np.eye(2)[labels], labels, labels, 2)
        result = report.to_dict(["wallet", "game"])
        self.assertEqual(result["pair_order"], "lexicographic")
        self.assertEqual(
            result["pairwise_auc"], [{"a": "wallet", "b": "game", "auc": 1.0}]
        )
        self.assertEqual(
            result["per_class_accuracy"], {"wallet": 1.0, "game": 1.0}
        )
        self.assertEqual(result["confusion"], [[1, 0], [0, 2]])
        row = report.to_csv_row("c45", ["wallet", "game"])
        self.assertEqual(
            list(row),
            [
                "algorithm",
                "AUC_area",
                "Micro-F1",
                "accuracy",
                "wallet",
                "game",
            ],
        )
        self.assertEqual(row["algorithm"], "c45")
