# pylint: disable-all

import json
import os
import tempfile
from unittest import TestCase

import numpy as np

import opclass.models.classifier as clf
from opclass.core.exceptions import (
    FileReadingException,
    SchemaMismatchException,
)
from opclass.models.adaboost import run_boosting
from opclass.models.tree import TrainControl, train_tree
from tests.utils_for_testing import separable_dataset


class TestModels(TestCase):
    def setUp(self) -> None:
        self.ds = separable_dataset(per_class=6, n_classes=3, n_noise=2)
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = os.path.join(self.tmp.name, "model.json")

    def _models(self):
        c45 = clf.C45Model(
            train_tree(self.ds), self.ds.schema, self.ds.class_names
        )
        boosted = run_boosting(self.ds, T=3, ctrl=TrainControl(max_depth=1))
        mask = np.array([True, False, True])
        inner = run_boosting(self.ds.restrict_features(mask), T=2)
        masked = clf.MaskedModel(mask, self.ds.schema, inner)
        return {"c45": c45, "adaboost": boosted, "masked": masked}

    def test_to_file_and_load_model(self):
        """
        A loaded model predicts the same probabilities.
        """
        for kind, model in self._models().items():
            with self.subTest(kind=kind):
                model.to_file(self.path)
                loaded = clf.load_model(self.path)
                self.assertEqual(type(loaded), type(model))
                self.assertEqual(loaded.kind, kind)
                self.assertEqual(loaded.schema, model.schema)
                self.assertEqual(loaded.class_names, model.class_names)
                np.testing.assert_array_equal(
                    loaded.predict_proba(self.ds.X),
                    model.predict_proba(self.ds.X),
                )
                np.testing.assert_array_equal(
                    loaded.predict(self.ds.X), model.predict(self.ds.X)
                )

    def test_document(self):
        """
        Input/Output-Test.
        """
        model = self._models()["masked"]
        model.to_file(self.path)
        with open(self.path, encoding="utf-8") as file:
            data = json.load(file)
        self.assertEqual(data["kind"], "masked")
        self.assertEqual(data["mask"], [True, False, True])
        self.assertEqual(data["inner"]["kind"], "adaboost")
        self.assertEqual(data["class_names"], ["c0", "c1", "c2"])
        self.assertEqual(model.selected_features, ["f0", "f2"])

    def test_predict_single(self):
        """
        EdgeCase: Single feature vectors give a class index.
        """
        for kind, model in self._models().items():
            with self.subTest(kind=kind):
                result = model.predict(self.ds.X[0])
                self.assertIsInstance(result, int)
                self.assertEqual(model.predict_proba(self.ds.X[0]).shape, (3,))

    def test_predict_Error(self):
        """
        Error if the feature count does not match the schema.
        """
        for kind, model in self._models().items():
            with self.subTest(kind=kind):
                with self.assertRaises(SchemaMismatchException):
                    model.predict(np.zeros((2, 5)))

    def test_masked_model_init_Error(self):
        """
        Error if the mask does not fit schema or inner model.
        """
        inner = self._models()["masked"].inner
        with self.assertRaises(ValueError):
            clf.MaskedModel([True, True], self.ds.schema, inner)
        with self.assertRaises(ValueError):
            clf.MaskedModel([True, True, True], self.ds.schema, inner)

    def test_load_model_Error(self):
        """
        Error if the file is missing, no JSON or of an unknown kind.
        """
        with self.assertRaises(FileReadingException):
            clf.load_model(os.path.join(self.tmp.name, "missing.json"))
        with open(self.path, "w", encoding="utf-8") as file:
            file.write("{no json")
        with self.assertRaises(FileReadingException):
            clf.load_model(self.path)
        with open(self.path, "w", encoding="utf-8") as file:
            json.dump({"kind": "forest"}, file)
        with self.assertRaises(FileReadingException):
            clf.load_model(self.path)
