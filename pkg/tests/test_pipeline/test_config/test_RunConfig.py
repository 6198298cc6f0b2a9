# pylint: disable-all

import json
import os
import tempfile
from unittest import TestCase

from opclass.core.exceptions import FileReadingException
from opclass.models import BpsoConfig, TrainControl
from opclass.pipeline import RunConfig


class TestRunConfig(TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.path = os.path.join(self.tmp.name, "config.json")

    def _write(self, data):
        with open(self.path, "w", encoding="utf-8") as file:
            json.dump(data, file)

    def test_defaults(self):
        """
        Input/Output-Test.
        """
        cfg = RunConfig("crossval")
        self.assertEqual(cfg.feature_set, "code")
        self.assertEqual(cfg.algorithm, "bpso-adaboost")
        self.assertEqual(cfg.folds, 10)
        self.assertEqual(cfg.seed, 0)
        self.assertEqual(cfg.table, "istanbul")
        self.assertEqual(cfg.tree, TrainControl())
        self.assertEqual(cfg.bpso.swarm_size, 30)

    def test_seed_and_tree_propagate(self):
        """
        The run seed and tree parameters override those of the BPSO run.
        """
        tree = TrainControl(max_depth=4)
        cfg = RunConfig(
            "train", bpso=BpsoConfig(seed=99, swarm_size=5), tree=tree, seed=3
        )
        self.assertEqual(cfg.bpso.seed, 3)
        self.assertEqual(cfg.bpso.swarm_size, 5)
        self.assertEqual(cfg.bpso.tree_control, tree)

    def test_init_Error(self):
        """
        Error if mode, feature set or algorithm are unknown.
        """
        for kwargs in [
            {"mode": "predict"},
            {"mode": "train", "feature_set": "account"},
            {"mode": "train", "algorithm": "svm"},
        ]:
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    RunConfig(**kwargs)
        RunConfig("crossval", algorithm="all")

    def test_serialization(self):
        """
        Input/Output-Test.
        """
        cfg = RunConfig(
            "crossval",
            feature_set="full",
            algorithm="all",
            bpso=BpsoConfig(swarm_size=4),
            tree=TrainControl(min_leaf_weight=3),
            folds=5,
            seed=7,
            corpus="corpus.jsonl",
        )
        data = cfg.to_dict()
        self.assertNotIn("corpus", data)
        self.assertEqual(RunConfig.from_dict(data).to_dict(), data)
        json.dumps(data)

    def test_from_file(self):
        """
        Input/Output-Test.
        """
        self._write(
            {
                "mode": "crossval",
                "folds": 4,
                "seed": 1,
                "bpso": {"swarm_size": 6, "generation_limit": 3},
                "tree": {"max_depth": 5},
            }
        )
        cfg = RunConfig.from_file(self.path)
        self.assertEqual(cfg.folds, 4)
        self.assertEqual(cfg.bpso.swarm_size, 6)
        self.assertEqual(cfg.tree.max_depth, 5)
        self.assertEqual(cfg.bpso.tree_control.max_depth, 5)

    def test_from_file_overrides(self):
        """
        Given values replace those of the file, `None` keeps them.
        """
        self._write(
            {
                "mode": "crossval",
                "folds": 4,
                "bpso": {"swarm_size": 6, "generation_limit": 3},
            }
        )
        cfg = RunConfig.from_file(
            self.path,
            folds=None,
            seed=8,
            bpso={"generation_limit": 9},
            tree={"max_depth": 2},
        )
        self.assertEqual(cfg.folds, 4)
        self.assertEqual(cfg.seed, 8)
        self.assertEqual(cfg.bpso.swarm_size, 6)
        self.assertEqual(cfg.bpso.generation_limit, 9)
        self.assertEqual(cfg.tree.max_depth, 2)

    def test_from_file_Error(self):
        """
        Error if the file is missing, no JSON or no JSON object.
        """
        with self.assertRaises(FileReadingException):
            RunConfig.from_file(os.path.join(self.tmp.name, "missing.json"))
        with open(self.path, "w", encoding="utf-8") as file:
            file.write("{mode")
        with self.assertRaises(FileReadingException):
            RunConfig.from_file(self.path)
        self._write(["crossval"])
        with self.assertRaises(FileReadingException):
            RunConfig.from_file(self.path)
