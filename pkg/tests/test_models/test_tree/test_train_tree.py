# pylint: disable-all

from unittest import TestCase

import numpy as np

import opclass.models.tree as tr
from opclass.core.exceptions import (
    AllWeightsZeroException,
    EmptyDatasetException,
    SchemaMismatchException,
)
from tests.utils_for_testing import (
    OpclassTestCase,
    custom_dataset,
    separable_dataset,
    xor_dataset,
)


class TestTrainControl(TestCase):
    def test_defaults(self):
        """
        Input/Output-Test.
        """
        ctrl = tr.TrainControl()
        self.assertEqual(ctrl.min_leaf_weight, 2.0)
        self.assertEqual(ctrl.max_depth, 25)
        self.assertEqual(ctrl.laplace_alpha, 1.0)
        self.assertEqual(tr.TrainControl.from_dict(ctrl.to_dict()), ctrl)

    def test_init_Error(self):
        """
        Error if a hyperparameter is out of range.
        """
        for kwargs in [
            {"min_leaf_weight": 0},
            {"max_depth": 0},
            {"laplace_alpha": -1},
        ]:
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    tr.TrainControl(**kwargs)


class TestTrainTree(OpclassTestCase):
    def test_xor(self):
        """
        The lookahead lets the tree learn XOR.
        """
        ds = xor_dataset(copies=5)
        tree = tr.train_tree(ds)
        np.testing.assert_array_equal(tree.predict(ds.X), ds.y)
        self.assertEqual(tree.depth, 2)
        self.assertEqual(tree.n_leaves, 4)
        self.assert_list_almost_equal(
            tree.predict_proba([0, 0]), [6 / 7, 1 / 7], 12, ""
        )

    def test_xor_single_copy(self):
        """
        EdgeCase: The four XOR corners need a minimal leaf weight of 1,
        with the default weight of 2 the root stays a leaf.
        """
        ds = xor_dataset(copies=1)
        tree = tr.train_tree(ds, ctrl=tr.TrainControl(min_leaf_weight=1))
        np.testing.assert_array_equal(tree.predict(ds.X), ds.y)
        self.assertEqual(tree.depth, 2)
        self.assertEqual(tree.n_leaves, 4)
        self.assert_list_almost_equal(
            tree.predict_proba([0, 1]), [1 / 3, 2 / 3], 12, ""
        )
        self.assertTrue(tr.train_tree(ds).root.is_leaf)

    def test_xor_depth_limit(self):
        """
        EdgeCase: Without depth for the lookahead the root is a leaf.
        """
        ds = xor_dataset(copies=5)
        tree = tr.train_tree(ds, ctrl=tr.TrainControl(max_depth=1))
        self.assertTrue(tree.root.is_leaf)
        self.assert_list_almost_equal(
            tree.predict_proba([1, 0]), [0.5, 0.5], 12, ""
        )

    def test_separable(self):
        """
        Input/Output-Test.
        """
        ds = separable_dataset(per_class=10, n_classes=3, n_noise=2)
        tree = tr.train_tree(ds)
        np.testing.assert_array_equal(tree.predict(ds.X), ds.y)
        self.assert_probability_vectors(tree.predict_proba(ds.X))

    def test_pure_and_single_sample(self):
        """
        EdgeCase: Pure or tiny datasets give a single leaf.
        """
        ds = custom_dataset([[1.0], [2.0], [3.0]], ["a", "a", "a"], ["a", "b"])
        tree = tr.train_tree(ds)
        self.assertTrue(tree.root.is_leaf)
        self.assert_list_almost_equal(
            tree.root.distribution, [4 / 5, 1 / 5], 12, ""
        )
        single = tr.train_tree(custom_dataset([5.0], ["b"], ["a", "b"]))
        self.assertEqual(single.predict([5.0]), 1)

    def test_laplace_alpha_zero(self):
        """
        Input/Output-Test.
        """
        ds = custom_dataset([1.0, 2.0], ["a", "a"], ["a", "b"])
        ctrl = tr.TrainControl(laplace_alpha=0)
        tree = tr.train_tree(ds, ctrl=ctrl)
        self.assert_list_almost_equal(
            tree.predict_proba([1.0]), [1.0, 0.0], 12, ""
        )

    def test_scale_invariance(self):
        """
        Scaling a feature by a power of two does not change predictions.
        """
        ds = separable_dataset(per_class=8, n_classes=3, n_noise=3, seed=4)
        scaled = custom_dataset(ds.X * 4.0, ds.labels, ds.class_names)
        X_test = np.random.default_rng(5).uniform(-2, 25, (50, ds.n_features))
        np.testing.assert_array_equal(
            tr.train_tree(ds).predict_proba(X_test),
            tr.train_tree(scaled).predict_proba(X_test * 4.0),
        )

    def test_weights(self):
        """
        Zero weights remove samples, uniform scaling of weights does not
        change the tree.
        """
        ds = custom_dataset(
            [[0.0], [1.0], [2.0], [3.0], [10.0], [11.0]],
            ["a", "a", "a", "a", "b", "b"],
        )
        weights = np.array([1, 1, 1, 1, 1, 0], dtype=float)
        np.testing.assert_array_equal(
            tr.train_tree(ds, weights).predict_proba(ds.X),
            tr.train_tree(ds.subset(range(5))).predict_proba(ds.X),
        )
        doubled = tr.train_tree(ds, np.full(6, 2.0))
        np.testing.assert_array_equal(
            doubled.predict_proba(ds.X), tr.train_tree(ds).predict_proba(ds.X)
        )

    def test_missing_values(self):
        """
        EdgeCase: Missing values are routed down both branches.
        """
        X = [[0.0], [0.5], [1.0], [1.5], [10], [10.5], [11], [11.5], [np.nan]]
        labels = ["a"] * 4 + ["b"] * 4 + ["a"]
        ds = custom_dataset(X, labels)
        tree = tr.train_tree(ds)
        self.assertFalse(tree.root.is_leaf)
        self.assertEqual(tree.root.fractions, (0.5, 0.5))
        probs = tree.predict_proba([np.nan])
        expected = 0.5 * tree.root.left.distribution + (
            0.5 * tree.root.right.distribution
        )
        self.assert_list_almost_equal(probs, expected, 12, "")
        self.assert_probability_vectors(probs)
        np.testing.assert_array_equal(tree.predict(ds.X[:8]), ds.y[:8])

    def test_all_missing_feature(self):
        """
        EdgeCase: A feature without known values is never used.
        """
        ds = custom_dataset(
            [[np.nan, 0], [np.nan, 1], [np.nan, 5], [np.nan, 6]],
            ["a", "a", "b", "b"],
        )
        tree = tr.train_tree(ds)
        self.assertEqual(tree.root.feature, 1)

    def test_train_tree_Error(self):
        """
        Error if there are no samples, no positive weights or bad weights.
        """
        ds = custom_dataset([1.0, 2.0], ["a", "b"])
        with self.assertRaises(EmptyDatasetException):
            tr.train_tree(ds.subset([]))
        with self.assertRaises(AllWeightsZeroException):
            tr.train_tree(ds, [0, 0])
        with self.assertRaises(ValueError):
            tr.train_tree(ds, [1, -1])
        with self.assertRaises(ValueError):
            tr.train_tree(ds, [1])


class TestDecisionTree(OpclassTestCase):
    def setUp(self) -> None:
        self.ds = separable_dataset(per_class=6, n_classes=3, n_noise=1)
        self.tree = tr.train_tree(self.ds)

    def test_serialization(self):
        """
        A rebuilt tree predicts the same probabilities.
        """
        rebuilt = tr.DecisionTree.from_dict(self.tree.to_dict())
        np.testing.assert_array_equal(
            rebuilt.predict_proba(self.ds.X),
            self.tree.predict_proba(self.ds.X),
        )
        self.assertEqual(rebuilt.to_dict(), self.tree.to_dict())

    def test_predict_proba_tree(self):
        """
        Input/Output-Test.
        """
        result = tr.predict_proba_tree(self.tree, self.ds.X[0])
        self.assertEqual(result.shape, (3,))
        self.assertEqual(int(np.argmax(result)), self.ds.y[0])

    def test_predict_proba_Error(self):
        """
        Error if the number of features does not match.
        """
        with self.assertRaises(SchemaMismatchException):
            self.tree.predict_proba([1.0, 2.0, 3.0])

    def test_node_from_dict_Error(self):
        """
        Error if the node kind is unknown.
        """
        with self.assertRaises(ValueError):
            tr.node_from_dict({"kind": "branch"})
