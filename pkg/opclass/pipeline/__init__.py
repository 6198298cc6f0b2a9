"""
Contains a pipeline training and cross-validating contract classifiers as
well as the components it is composed of and the run configuration of the
command line interface.
"""

from .config import ALGORITHMS, FEATURE_SETS, MODES, RunConfig
from .extensions import (
    AdaBoostExtension,
    BpsoExtension,
    C45Extension,
    ClassifierExtension,
    extension_for,
)
from .pipeline import (
    ClassificationPipeline,
    CrossValidationOutput,
    PipelineOutput,
    Statistics,
    compare,
    comparison_frame,
)
from .quality_assurance import AucAreaQualityAssurance, QualityAssurance

__all__ = [
    "ALGORITHMS",
    "FEATURE_SETS",
    "MODES",
    "RunConfig",
    "AdaBoostExtension",
    "BpsoExtension",
    "C45Extension",
    "ClassifierExtension",
    "extension_for",
    "ClassificationPipeline",
    "CrossValidationOutput",
    "PipelineOutput",
    "Statistics",
    "compare",
    "comparison_frame",
    "AucAreaQualityAssurance",
    "QualityAssurance",
]
