"""
Classifiers: C4.5 trees, AdaBoost.M1 ensembles and BPSO feature
selection wrapping them.
"""

from .adaboost import (
    AdaBoostModel,
    BoostingRound,
    compute_beta,
    compute_error,
    run_boosting,
    update_weights,
)
from .bpso import (
    BpsoConfig,
    BpsoResult,
    Particle,
    fitness,
    init_swarm,
    run,
    step,
)
from .classifier import (
    C45Model,
    Classifier,
    MaskedModel,
    load_model,
    model_from_dict,
)
from .tree import (
    DecisionTree,
    Leaf,
    Split,
    TrainControl,
    predict_proba_tree,
    train_tree,
)

__all__ = [
    "AdaBoostModel",
    "BoostingRound",
    "compute_beta",
    "compute_error",
    "run_boosting",
    "update_weights",
    "BpsoConfig",
    "BpsoResult",
    "Particle",
    "fitness",
    "init_swarm",
    "run",
    "step",
    "C45Model",
    "Classifier",
    "MaskedModel",
    "load_model",
    "model_from_dict",
    "DecisionTree",
    "Leaf",
    "Split",
    "TrainControl",
    "predict_proba_tree",
    "train_tree",
]
