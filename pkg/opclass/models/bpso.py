"""
Binary particle swarm optimization of feature masks.

Every particle is a bit vector selecting features. Its fitness is the
normalized `AUC_area` of the pooled out-of-fold scores of AdaBoost
ensembles trained on the selected features in an inner stratified
cross-validation. Velocities follow the inertia-weight rule, bits are
resampled through the sigmoid of the velocity.
"""

from typing import NamedTuple

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

from opclass.core.computing import sigmoid
from opclass.core.constants import ACCOUNT_FEATURE_NAMES
from opclass.core.data import stratified_folds
from opclass.core.exceptions import (
    FirstRoundTooWeakException,
    MaskEmptyException,
)
from opclass.core.metrics import auc_area, pairwise_aucs

from .adaboost import run_boosting
from .classifier import MaskedModel
from .tree import TrainControl


class BpsoConfig:
    """
    Parameters of a BPSO run.

    Parameters
    ----------
    swarm_size : int, optional
        Number of particles `N`. Defaults to `30`.

    generation_limit : int, optional
        Maximal number of generations `G_max`. Defaults to `50`.

    inertia : float, optional
        Inertia weight `w`. Defaults to `0.73`.

    c1, c2 : float, optional
        Acceleration towards the personal and the global best.
        Default to `1.5`.

    v_max : float, optional
        Velocity components are clamped to `[-v_max, v_max]`.
        Defaults to `6.0`.

    boosting_rounds : int, optional
        Rounds `T` of the AdaBoost ensembles. Defaults to `30`.

    inner_folds : int, optional
        Folds of the cross-validation computing the fitness.
        Defaults to `3`.

    seed : int, optional
        Defaults to `0`.

    stagnation_limit : int, optional
        The run stops after this many generations without improvement of
        the global best. Defaults to `10`.

    n_jobs : int, optional
        Number of parallel fitness evaluations, see `joblib.Parallel`.
        Results do not depend on it. Defaults to `1`.

    tree_control : TrainControl, optional
        Defaults to `TrainControl()`.
    """

    def __init__(
        self,
        swarm_size=30,
        generation_limit=50,
        inertia=0.73,
        c1=1.5,
        c2=1.5,
        v_max=6.0,
        boosting_rounds=30,
        inner_folds=3,
        seed=0,
        stagnation_limit=10,
        n_jobs=1,
        tree_control=None,
    ):
        if swarm_size < 1:
            raise ValueError("`swarm_size` is smaller than 1")
        if generation_limit < 1:
            raise ValueError("`generation_limit` is smaller than 1")
        if v_max <= 0:
            raise ValueError("`v_max` is non-positive")
        if boosting_rounds < 1:
            raise ValueError("`boosting_rounds` is smaller than 1")
        if inner_folds < 2:
            raise ValueError("`inner_folds` is smaller than 2")
        if stagnation_limit < 1:
            raise ValueError("`stagnation_limit` is smaller than 1")
        self.swarm_size = int(swarm_size)
        self.generation_limit = int(generation_limit)
        self.inertia = float(inertia)
        self.c1 = float(c1)
        self.c2 = float(c2)
        self.v_max = float(v_max)
        self.boosting_rounds = int(boosting_rounds)
        self.inner_folds = int(inner_folds)
        self.seed = int(seed)
        self.stagnation_limit = int(stagnation_limit)
        self.n_jobs = int(n_jobs)
        self.tree_control = tree_control or TrainControl()

    def __repr__(self):
        args = ", ".join(
            f"{key}={value!r}" for key, value in self.to_dict().items()
        )
        return f"BpsoConfig({args})"

    def to_dict(self):
        return {
            "swarm_size": self.swarm_size,
            "generation_limit": self.generation_limit,
            "inertia": self.inertia,
            "c1": self.c1,
            "c2": self.c2,
            "v_max": self.v_max,
            "boosting_rounds": self.boosting_rounds,
            "inner_folds": self.inner_folds,
            "seed": self.seed,
            "stagnation_limit": self.stagnation_limit,
            "n_jobs": self.n_jobs,
            "tree_control": self.tree_control.to_dict(),
        }

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if "tree_control" in data:
            data["tree_control"] = TrainControl.from_dict(data["tree_control"])
        return cls(**data)

    def replace(self, **kwargs):
        """Copy of the configuration with some parameters replaced."""
        data = {**self.to_dict(), "tree_control": self.tree_control}
        data.update(kwargs)
        return BpsoConfig(**data)


class Particle(NamedTuple):
    """
    Attributes
    ----------
    position : numpy.ndarray of bool
        The feature mask, at least one bit is set.

    velocity : numpy.ndarray of float

    best_position : numpy.ndarray of bool

    best_fitness : float
        `-inf` as long as no evaluation of the particle succeeded.
    """

    position: np.ndarray
    velocity: np.ndarray
    best_position: np.ndarray
    best_fitness: float


def particle_rng(seed, generation, particle):
    """The random generator of a particle in a generation. Generation `0`
    is the initialization."""
    return np.random.default_rng([seed, generation, particle])


def repair(position, rng):
    """Sets one uniformly random bit of an empty mask."""
    position = np.asarray(position, dtype=bool).copy()
    if not position.any():
        position[rng.integers(len(position))] = True
    return position


def init_swarm(feature_count, cfg):
    """
    Parameters
    ----------
    feature_count : int

    cfg : BpsoConfig

    Returns
    -------
    swarm : list of Particle
        Uniformly random masks and velocities in `[-v_max, v_max]`.
    """
    if feature_count < 1:
        raise ValueError("`feature_count` is smaller than 1")
    swarm = []
    for i in range(cfg.swarm_size):
        rng = particle_rng(cfg.seed, 0, i)
        position = repair(rng.random(feature_count) < 0.5, rng)
        velocity = rng.uniform(-cfg.v_max, cfg.v_max, feature_count)
        swarm.append(Particle(position, velocity, position.copy(), -np.inf))
    return swarm


def step(particle, global_best, cfg, rng):
    """
    Moves a particle.

    Parameters
    ----------
    particle : Particle

    global_best : array_like of bool

    cfg : BpsoConfig

    rng : numpy.random.Generator

    Returns
    -------
    particle : Particle
        New position and velocity, the personal best is unchanged.
    """
    x = particle.position.astype(float)
    d = len(x)
    r1, r2 = rng.random(d), rng.random(d)
    velocity = (
        cfg.inertia * particle.velocity
        + cfg.c1 * r1 * (particle.best_position - x)
        + cfg.c2 * r2 * (np.asarray(global_best, dtype=float) - x)
    )
    velocity = np.clip(velocity, -cfg.v_max, cfg.v_max)
    position = repair(rng.random(d) < sigmoid(velocity), rng)
    return Particle(
        position, velocity, particle.best_position, particle.best_fitness
    )


def fitness(mask, train, cfg):
    """
    Cross-validated `AUC_area` of AdaBoost on the selected features.

    Classes without samples in `train` are left out of the inner folds
    and of the class pairs, so outer folds that hold out every sample of
    a rare class still get a fitness.

    Parameters
    ----------
    mask : array_like of bool

    train : LabeledDataset

    cfg : BpsoConfig

    Returns
    -------
    fitness : float

    Raises
    ------
    MaskEmptyException
        If `mask` selects no feature.

    FirstRoundTooWeakException
        If boosting fails in one of the folds.
    """
    mask = np.asarray(mask, dtype=bool)
    if not mask.any():
        raise MaskEmptyException("`mask` selects no feature")
    data = train.restrict_features(mask)
    plan = stratified_folds(
        data, cfg.inner_folds, cfg.seed, ignore_empty_classes=True
    )

    scores = np.zeros((data.n_samples, data.n_classes))
    for train_idx, test_idx in plan.splits():
        model = run_boosting(
            data.subset(train_idx),
            cfg.boosting_rounds,
            cfg.tree_control,
            cfg.seed,
        )
        scores[test_idx] = model.predict_proba(data.X[test_idx])
    _, aucs = pairwise_aucs(
        scores, data.y, data.n_classes, skip_missing=True
    )
    return auc_area(aucs)


def _guarded_fitness(mask, train, cfg):
    try:
        return fitness(mask, train, cfg)
    except FirstRoundTooWeakException:
        return -np.inf


class BpsoResult(NamedTuple):
    """
    Attributes
    ----------
    best_mask : numpy.ndarray of bool

    best_fitness : float

    final_model : MaskedModel
        AdaBoost ensemble trained on the complete training set restricted
        to `best_mask`.

    history : list of float
        Global best fitness after every generation.

    n_evaluated : int
        Number of distinct masks evaluated.

    config : BpsoConfig
    """

    best_mask: np.ndarray
    best_fitness: float
    final_model: MaskedModel
    history: list
    n_evaluated: int
    config: BpsoConfig

    @property
    def selected_features(self):
        return self.final_model.selected_features

    def to_report(self):
        """
        Returns
        -------
        report : dict
            Configuration, fitness history, the selected feature names and
            how many of them are code and account features.
        """
        selected = self.selected_features
        n_account = sum(name in ACCOUNT_FEATURE_NAMES for name in selected)
        return {
            "config": self.config.to_dict(),
            "history": list(self.history),
            "best_fitness": self.best_fitness,
            "selected_features": selected,
            "n_code_features": len(selected) - n_account,
            "n_account_features": n_account,
            "n_evaluated_masks": self.n_evaluated,
        }


class _FitnessCache:
    def __init__(self, train, cfg):
        self.train = train
        self.cfg = cfg
        self.values = {}

    def __call__(self, masks):
        keys = [mask.tobytes() for mask in masks]
        new = {}
        for key, mask in zip(keys, masks):
            if key not in self.values and key not in new:
                new[key] = mask
        if new:
            results = Parallel(n_jobs=self.cfg.n_jobs)(
                delayed(_guarded_fitness)(mask, self.train, self.cfg)
                for mask in new.values()
            )
            self.values.update(zip(new.keys(), results))
        return [self.values[key] for key in keys]


def run(train, cfg):
    """
    Searches the feature mask of maximal fitness.

    The swarm is evaluated generation by generation, personal and global
    bests are only replaced by strictly better fitness. The run stops
    after `generation_limit` generations or `stagnation_limit`
    generations without improvement of the global best.

    Parameters
    ----------
    train : LabeledDataset

    cfg : BpsoConfig

    Returns
    -------
    result : BpsoResult

    Raises
    ------
    FirstRoundTooWeakException
        If boosting failed for every evaluated mask.
    """
    evaluate = _FitnessCache(train, cfg)
    swarm = init_swarm(train.n_features, cfg)
    global_mask, global_fitness = None, -np.inf
    history = []
    stagnant = 0

    for generation in range(1, cfg.generation_limit + 1):
        if generation > 1:
            swarm = [
                step(
                    particle,
                    (
                        global_mask
                        if global_mask is not None
                        else particle.best_position
                    ),
                    cfg,
                    particle_rng(cfg.seed, generation, i),
                )
                for i, particle in enumerate(swarm)
            ]

        improved = False
        fitnesses = evaluate([particle.position for particle in swarm])
        for i, (particle, value) in enumerate(zip(swarm, fitnesses)):
            if value > particle.best_fitness:
                swarm[i] = particle._replace(
                    best_position=particle.position.copy(),
                    best_fitness=value,
                )
            if value > global_fitness:
                global_mask, global_fitness = particle.position.copy(), value
                improved = True

        history.append(global_fitness)
        stagnant = 0 if improved else stagnant + 1
        logger.info(
            f"generation {generation}: best fitness {global_fitness:.6f}, "
            f"{int(global_mask.sum()) if global_mask is not None else 0} "
            f"features, {len(evaluate.values)} masks evaluated"
        )
        if stagnant >= cfg.stagnation_limit:
            logger.info(f"converged after {generation} generations")
            break

    if global_mask is None:
        raise FirstRoundTooWeakException(
            "boosting failed for every evaluated feature mask"
        )

    inner = run_boosting(
        train.restrict_features(global_mask),
        cfg.boosting_rounds,
        cfg.tree_control,
        cfg.seed,
    )
    return BpsoResult(
        best_mask=global_mask,
        best_fitness=global_fitness,
        final_model=MaskedModel(global_mask, train.schema, inner),
        history=history,
        n_evaluated=len(evaluate.values),
        config=cfg,
    )
