# pylint: disable-all

from unittest import TestCase

import numpy as np

import opclass.processing.sampler as smp
from opclass.core.data import imbalance_ratio
from opclass.evm.disassembler import disassemble, parse_hex
from opclass.processing.datahandler import JsonlCorpusHandler
from opclass.processing.extractor import FeatureSchema


class TestImbalancedClassSizes(TestCase):
    def test_imbalanced_class_sizes(self):
        """
        Input/Output-Test.
        """
        self.assertEqual(
            smp.imbalanced_class_sizes(1200, 6, 19),
            [551, 305, 169, 94, 52, 29],
        )
        self.assertEqual(smp.imbalanced_class_sizes(100, 2, 4), [80, 20])
        self.assertEqual(smp.imbalanced_class_sizes(30, 3, 1), [10, 10, 10])

    def test_sum_and_order(self):
        """
        Sizes sum up to the sample count and decrease.
        """
        for n_samples, n_classes, ratio in [
            (1200, 6, 19),
            (500, 4, 7.5),
            (999, 5, 2),
            (64, 3, 10),
        ]:
            with self.subTest(n=n_samples, k=n_classes, ratio=ratio):
                sizes = smp.imbalanced_class_sizes(n_samples, n_classes, ratio)
                self.assertEqual(sum(sizes), n_samples)
                self.assertEqual(sizes, sorted(sizes, reverse=True))
                self.assertEqual(len(sizes), n_classes)

    def test_imbalanced_class_sizes_Error(self):
        """
        Error if classes, ratio or sample count are out of range.
        """
        for args in [(100, 1, 2), (100, 3, 0.5), (3, 3, 100)]:
            with self.subTest(args=args):
                with self.assertRaises(ValueError):
                    smp.imbalanced_class_sizes(*args)


class TestFeatureSampler(TestCase):
    def test_sample(self):
        """
        Input/Output-Test.
        """
        ds = smp.FeatureSampler().sample(seed=0)
        self.assertEqual(ds.X.shape, (1200, 20))
        self.assertEqual(
            ds.class_names,
            ("Governance", "Finance", "Gambling", "Game", "Wallet", "Social"),
        )
        np.testing.assert_array_equal(
            ds.class_counts(), [551, 305, 169, 94, 52, 29]
        )
        self.assertEqual(imbalance_ratio(ds), 19.0)
        self.assertEqual(ds.feature_names[0], "informative_0")
        self.assertEqual(ds.feature_names[-1], "noise_14")
        self.assertFalse(np.isnan(ds.X).any())

    def test_sample_deterministic(self):
        """
        Equal seeds give equal datasets, other seeds differ.
        """
        sampler = smp.FeatureSampler(n_samples=200, n_classes=3, ratio=3)
        first, second = sampler.sample(4), sampler.sample(4)
        np.testing.assert_array_equal(first.X, second.X)
        np.testing.assert_array_equal(first.y, second.y)
        self.assertFalse(np.array_equal(first.X, sampler.sample(5).X))

    def test_many_classes(self):
        """
        EdgeCase: More classes than known category names.
        """
        ds = smp.FeatureSampler(n_samples=400, n_classes=8, ratio=2).sample(0)
        self.assertEqual(ds.class_names[-1], "class_7")

    def test_init_Error(self):
        """
        Error if feature counts or separation are out of range.
        """
        for kwargs in [
            {"n_informative": 0},
            {"n_noise": -1},
            {"separation": 0},
        ]:
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    smp.FeatureSampler(**kwargs)


class TestBytecodeSampler(TestCase):
    def test_sample(self):
        """
        Input/Output-Test.
        """
        records = smp.BytecodeSampler(class_sizes=(4, 3)).sample(seed=1)
        self.assertEqual(
            [r.category for r in records], ["Governance"] * 4 + ["Finance"] * 3
        )
        for record in records:
            instructions = disassemble(parse_hex(record.bytecode))
            self.assertTrue(100 <= len(instructions) <= 400)
            self.assertFalse(any(i.truncated for i in instructions))
            self.assertNotIn("INVALID", [i.spec.family for i in instructions])
            self.assertTrue(record.has_account_data)
            self.assertEqual(len(record.address), 42)

    def test_sample_deterministic(self):
        """
        Equal seeds give equal records.
        """
        sampler = smp.BytecodeSampler(class_sizes=(2, 2), code_length=(5, 9))
        self.assertEqual(sampler.sample(7), sampler.sample(7))
        self.assertNotEqual(sampler.sample(7), sampler.sample(8))

    def test_sample_full_features(self):
        """
        Sampled records can be turned into full feature vectors.
        """
        records = smp.BytecodeSampler(code_length=(10, 20)).sample(seed=2)
        ds = JsonlCorpusHandler(FeatureSchema.full()).handle(records)
        np.testing.assert_array_equal(ds.class_counts(), [20, 12, 8])
        self.assertEqual(ds.n_features, 90)

    def test_init_Error(self):
        """
        Error if class sizes, code length or concentration are invalid.
        """
        for kwargs in [
            {"class_sizes": (5,)},
            {"class_sizes": (5, 0)},
            {"code_length": (0, 5)},
            {"code_length": (9, 5)},
            {"concentration": 0},
        ]:
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    smp.BytecodeSampler(**kwargs)
