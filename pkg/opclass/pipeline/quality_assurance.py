"""
Contains the abstract base class `QualityAssurance` and a ready-to-use
implementation aimed to measure the quality of a trained classifier against
labeled test data.
"""

from abc import ABC, abstractmethod

from opclass.core.metrics import evaluate
from opclass.core.statistics import ComponentWithStatistics


class QualityAssurance(ComponentWithStatistics, ABC):
    """
    Base class for all quality assurance classes.
    """

    @abstractmethod
    def check(self, model, test_data, skip_missing_pairs=False):
        """
        Method that should test a trained classifier on labeled test data.

        Parameters
        ----------
        model : Classifier

        test_data : LabeledDataset

        skip_missing_pairs : bool, optional
            Whether class pairs absent from `test_data` are left out of the
            AUC computation instead of raising.

        Returns
        --------
        report : EvalReport
        """


class AucAreaQualityAssurance(QualityAssurance):
    """
    Quality assurance computing `AUC_area`, accuracy, per class accuracy
    and Micro-F1 from the class scores and the strong hypothesis of a
    classifier.

    See also
    ----------
    `QualityAssurance`
    """

    def check(self, model, test_data, skip_missing_pairs=False):
        """
        See also
        ---------
        `QualityAssurance.check`
        """
        scores = model.predict_proba(test_data.X)
        predictions = model.predict(test_data.X)
        report = evaluate(
            scores,
            predictions,
            test_data.y,
            test_data.n_classes,
            skip_missing_pairs,
        )
        self.set_statistics(
            n_samples=test_data.n_samples,
            auc_area=report.auc_area,
            accuracy=report.accuracy,
        )
        return report
