"""
Pipeline training classifiers on labeled corpora and estimating their
quality by stratified cross-validation.
"""

from copy import deepcopy
from typing import NamedTuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

import opclass.models as mod
from opclass.core.data import FoldPlan, stratified_folds
from opclass.core.metrics import EvalReport, evaluate

from .extensions import C45Extension, ClassifierExtension, extension_for
from .quality_assurance import AucAreaQualityAssurance, QualityAssurance


class Statistics(NamedTuple):
    """
    Organizes the statistics returned by the pipeline components.

    See also
    ----------
    `ClassificationPipeline`
    """

    extension: dict
    quality_assurance: dict


class PipelineOutput(NamedTuple):
    """
    Organizes the output of `ClassificationPipeline.train`.

    Attributes
    ----------
    model : Classifier
        The trained classifier.

    training_statistics : Statistics
        The `quality_assurance` entry contains the statistics of the
        evaluation on the training data.

    training_report : EvalReport
        Evaluation of `model` on its own training data.
    """

    model: mod.Classifier
    training_statistics: Statistics
    training_report: EvalReport


class CrossValidationOutput(NamedTuple):
    """
    Organizes the output of `ClassificationPipeline.cross_validate`.

    Attributes
    ----------
    pooled : EvalReport
        Evaluation of the pooled out-of-fold scores and predictions.

    folds : list of EvalReport
        One report per fold, computed over the class pairs present in the
        fold.

    fold_statistics : list of Statistics

    plan : FoldPlan
    """

    pooled: EvalReport
    folds: list
    fold_statistics: list
    plan: FoldPlan

    def to_dict(self, class_names=None):
        """
        Returns
        -------
        report : dict
            JSON serializable representation of all reports.
        """
        return {
            "pooled": self.pooled.to_dict(class_names),
            "folds": [
                report.to_dict(class_names) for report in self.folds
            ],
            "fold_statistics": [
                stats._asdict() for stats in self.fold_statistics
            ],
            "fold_count": self.plan.fold_count,
            "fold_seed": self.plan.seed,
        }


class ClassificationPipeline:
    """
    Organizes training and evaluation of classifiers on labeled datasets.

    Parameters
    ----------
    extension : ClassifierExtension, optional
        Trains the classifier.

        Defaults to `C45Extension()`.

    quality_assurance : QualityAssurance, optional
        Evaluates classifiers on labeled data.

        Defaults to `AucAreaQualityAssurance()`.

    n_jobs : int, optional
        Number of folds trained in parallel, see `joblib.Parallel`.
        Results do not depend on it.

        Defaults to `1`.
    """

    def __init__(self, extension=None, quality_assurance=None, n_jobs=1):
        if extension is not None and not isinstance(
            extension, ClassifierExtension
        ):
            raise TypeError("`extension` is not a `ClassifierExtension`")
        if quality_assurance is not None and not isinstance(
            quality_assurance, QualityAssurance
        ):
            raise TypeError(
                "`quality_assurance` is not a `QualityAssurance`"
            )
        self.extension = extension or C45Extension()
        self.quality_assurance = (
            quality_assurance or AucAreaQualityAssurance()
        )
        self.n_jobs = n_jobs

    def __repr__(self):
        return (
            f"ClassificationPipeline(extension={self.extension!r}, "
            f"quality_assurance={self.quality_assurance!r})"
        )

    def __call__(self, dataset):
        return self.train(dataset)

    def train(self, dataset):
        """
        Trains a classifier on the complete dataset.

        Parameters
        ----------
        dataset : LabeledDataset

        Returns
        -------
        out : PipelineOutput
        """
        model, extension_stats = _collect(
            self.extension, self.extension.process, dataset
        )
        report = self.quality_assurance.check(model, dataset)
        statistics = Statistics(
            extension_stats, self.quality_assurance.get_latest_statistics()
        )
        return PipelineOutput(model, statistics, report)

    def evaluate(self, model, dataset):
        """
        Evaluates a trained classifier on held-out labeled data.

        Parameters
        ----------
        model : Classifier

        dataset : LabeledDataset
            Has to use the class names of `model`, in the same order.
            Classes of the model may be absent, their pairs are left out
            of `AUC_area`.

        Returns
        -------
        report : EvalReport
        """
        if list(model.class_names) != list(dataset.class_names):
            raise ValueError(
                "`dataset` and `model` have different class names"
            )
        return self.quality_assurance.check(
            model, dataset, skip_missing_pairs=True
        )

    def cross_validate(self, dataset, folds=10, seed=0):
        """
        Stratified cross-validation of the classifier extension.

        Parameters
        ----------
        dataset : LabeledDataset

        folds : int, optional
            Defaults to `10`.

        seed : int, optional
            Seed of the fold plan.

            Defaults to `0`.

        Returns
        -------
        out : CrossValidationOutput

        Raises
        ------
        BadFoldCountException
            If `folds` is smaller than 2.
        """
        plan = stratified_folds(dataset, folds, seed)
        splits = list(plan.splits())
        results = Parallel(n_jobs=self.n_jobs)(
            delayed(_run_fold)(
                deepcopy(self.extension),
                deepcopy(self.quality_assurance),
                dataset,
                train_idx,
                test_idx,
            )
            for train_idx, test_idx in splits
        )

        scores = np.zeros((dataset.n_samples, dataset.n_classes))
        predictions = np.zeros(dataset.n_samples, dtype=np.int64)
        fold_reports, fold_statistics = [], []
        for fold, ((_, test_idx), result) in enumerate(zip(splits, results)):
            fold_scores, fold_predictions, report, statistics = result
            scores[test_idx] = fold_scores
            predictions[test_idx] = fold_predictions
            fold_reports.append(report)
            fold_statistics.append(statistics)
            logger.info(
                f"fold {fold + 1}/{plan.fold_count}: "
                f"{len(test_idx)} test samples, "
                f"accuracy {report.accuracy:.4f}"
            )

        pooled = evaluate(
            scores, predictions, dataset.y, dataset.n_classes
        )
        return CrossValidationOutput(
            pooled, fold_reports, fold_statistics, plan
        )


def compare(dataset, algorithms, folds=10, seed=0, bpso_cfg=None, ctrl=None):
    """
    Cross-validates several classifier variants on the same fold plan.

    Parameters
    ----------
    dataset : LabeledDataset

    algorithms : sequence of str
        Names accepted by `extension_for`.

    folds : int, optional
        Defaults to `10`.

    seed : int, optional
        Defaults to `0`.

    bpso_cfg : BpsoConfig, optional

    ctrl : TrainControl, optional

    Returns
    -------
    outputs : dict
        Maps algorithm names to their `CrossValidationOutput`, in the order
        of `algorithms`.
    """
    outputs = {}
    for algorithm in algorithms:
        logger.info(f"cross-validating {algorithm}")
        pipeline = ClassificationPipeline(
            extension_for(algorithm, bpso_cfg, ctrl, seed)
        )
        outputs[algorithm] = pipeline.cross_validate(dataset, folds, seed)
    return outputs


def comparison_frame(outputs, class_names):
    """
    Parameters
    ----------
    outputs : dict
        As returned by `compare`.

    class_names : sequence of str

    Returns
    -------
    table : pandas.DataFrame
        One row per algorithm with `AUC_area`, `Micro-F1`, accuracy and the
        accuracy of every class of the pooled reports.
    """
    rows = [
        output.pooled.to_csv_row(algorithm, class_names)
        for algorithm, output in outputs.items()
    ]
    columns = ["algorithm", "AUC_area", "Micro-F1", "accuracy"] + list(
        class_names
    )
    return pd.DataFrame(rows, columns=columns)


def _run_fold(extension, quality_assurance, dataset, train_idx, test_idx):
    train, test = dataset.subset(train_idx), dataset.subset(test_idx)
    model, extension_stats = _collect(extension, extension.process, train)
    scores = model.predict_proba(test.X)
    predictions = model.predict(test.X)
    report = quality_assurance.check(model, test, skip_missing_pairs=True)
    statistics = Statistics(
        extension_stats, quality_assurance.get_latest_statistics()
    )
    return scores, predictions, report, statistics


def _collect(comp, method, data):
    out = method(data)
    statistics = comp.get_latest_statistics()
    return out, statistics
