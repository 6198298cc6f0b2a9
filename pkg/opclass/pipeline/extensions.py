"""
Contains the abstract base class `ClassifierExtension` and the
ready-to-use implementations training the four classifier variants.
Classifier extensions take a labeled training set and return a trained
`Classifier`.
"""

from abc import ABC, abstractmethod

import opclass.models as mod
from opclass.core.statistics import ComponentWithStatistics


class ClassifierExtension(ComponentWithStatistics, ABC):
    """Base class for all classifier extensions."""

    @abstractmethod
    def process(self, dataset):
        """This method should, given a labeled training set, return a
        trained classifier.

        Parameters
        ----------
        dataset : LabeledDataset

        Returns
        -------
        model : Classifier
        """


class C45Extension(ClassifierExtension):
    """Trains a single C4.5 tree.

    Parameters
    ----------
    ctrl : TrainControl, optional
        Defaults to `TrainControl()`.

    See also
    --------
    `ClassifierExtension`
    """

    def __init__(self, ctrl=None):
        super().__init__()
        self.ctrl = ctrl or mod.TrainControl()

    def __repr__(self):
        return f"C45Extension(ctrl={self.ctrl!r})"

    def process(self, dataset):
        """
        See also
        --------
        `ClassifierExtension.process`
        """
        tree = mod.train_tree(dataset, ctrl=self.ctrl)
        self.set_statistics(depth=tree.depth, n_leaves=tree.n_leaves)
        return mod.C45Model(tree, dataset.schema, dataset.class_names)


class AdaBoostExtension(ClassifierExtension):
    """Trains an AdaBoost.M1 ensemble of C4.5 trees.

    Parameters
    ----------
    rounds : int, optional
        Maximal number of boosting rounds.

        Defaults to `30`.

    ctrl : TrainControl, optional
        Defaults to `TrainControl()`.

    seed : int, optional
        Defaults to `0`.

    See also
    --------
    `ClassifierExtension`
    """

    def __init__(self, rounds=30, ctrl=None, seed=0):
        super().__init__()
        self.rounds = rounds
        self.ctrl = ctrl or mod.TrainControl()
        self.seed = seed

    def __repr__(self):
        return (
            f"AdaBoostExtension(rounds={self.rounds}, ctrl={self.ctrl!r}, "
            f"seed={self.seed})"
        )

    def process(self, dataset):
        """
        See also
        --------
        `ClassifierExtension.process`
        """
        model = mod.run_boosting(dataset, self.rounds, self.ctrl, self.seed)
        self.set_statistics(
            n_rounds=len(model.rounds), epsilons=model.epsilons
        )
        return model


class BpsoExtension(ClassifierExtension):
    """Selects features with BPSO and trains an AdaBoost.M1 ensemble on
    them. With `cfg.boosting_rounds == 1` this is BPSO around a single
    C4.5 tree.

    Parameters
    ----------
    cfg : BpsoConfig, optional
        Defaults to `BpsoConfig()`.

    See also
    --------
    `ClassifierExtension`
    """

    def __init__(self, cfg=None):
        super().__init__()
        self.cfg = cfg or mod.BpsoConfig()
        self.latest_result = None

    def __repr__(self):
        return f"BpsoExtension(cfg={self.cfg!r})"

    def process(self, dataset):
        """
        See also
        --------
        `ClassifierExtension.process`
        """
        result = mod.run(dataset, self.cfg)
        self.latest_result = result
        self.set_statistics(**result.to_report())
        return result.final_model


def extension_for(algorithm, bpso_cfg=None, ctrl=None, seed=0):
    """
    Parameters
    ----------
    algorithm : {"c45", "adaboost", "bpso-c45", "bpso-adaboost"}

    bpso_cfg : BpsoConfig, optional
        Supplies the number of boosting rounds and the BPSO parameters.

    ctrl : TrainControl, optional

    seed : int, optional

    Returns
    -------
    extension : ClassifierExtension
    """
    bpso_cfg = bpso_cfg or mod.BpsoConfig(seed=seed)
    ctrl = ctrl or bpso_cfg.tree_control
    if algorithm == "c45":
        return C45Extension(ctrl)
    if algorithm == "adaboost":
        return AdaBoostExtension(bpso_cfg.boosting_rounds, ctrl, seed)
    if algorithm == "bpso-c45":
        return BpsoExtension(
            bpso_cfg.replace(boosting_rounds=1, tree_control=ctrl, seed=seed)
        )
    if algorithm == "bpso-adaboost":
        return BpsoExtension(bpso_cfg.replace(tree_control=ctrl, seed=seed))
    raise ValueError(f"unknown algorithm {algorithm!r}")
