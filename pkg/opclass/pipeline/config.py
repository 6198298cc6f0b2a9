"""
Configuration of a command line run.
"""

import json

from opclass.core.exceptions import FileReadingException
from opclass.models.bpso import BpsoConfig
from opclass.models.tree import TrainControl

MODES = (
    "disasm",
    "extract",
    "train",
    "classify",
    "evaluate",
    "crossval",
    "fetch",
    "normalize",
    "synth",
)

FEATURE_SETS = ("code", "full")

ALGORITHMS = ("c45", "adaboost", "bpso-c45", "bpso-adaboost")


class RunConfig:
    """
    Collects everything that determines the result of a run. Reports echo
    the configuration, so equal configurations give equal reports.

    Parameters
    ----------
    mode : str
        One of `MODES`.

    feature_set : {"code", "full"}, optional
        Code-only (0-day) or code and account features.

        Defaults to `"code"`.

    algorithm : str, optional
        One of `ALGORITHMS`, or `"all"` for cross-validation.

        Defaults to `"bpso-adaboost"`.

    bpso : BpsoConfig, optional

    tree : TrainControl, optional

    folds : int, optional
        Defaults to `10`.

    seed : int, optional
        Seed of fold plans and BPSO runs, overrides the seed of `bpso`.

        Defaults to `0`.

    table : str, optional
        Opcode table version. Defaults to `"istanbul"`.

    corpus, model, report : str, optional
        Paths of the input corpus, the model and the report file.

    rpc_url : str, optional
        JSON-RPC endpoint.
    """

    def __init__(
        self,
        mode,
        feature_set="code",
        algorithm="bpso-adaboost",
        bpso=None,
        tree=None,
        folds=10,
        seed=0,
        table="istanbul",
        corpus=None,
        model=None,
        report=None,
        rpc_url=None,
    ):
        if mode not in MODES:
            raise ValueError(f"`mode` has to be one of {MODES}")
        if feature_set not in FEATURE_SETS:
            raise ValueError(f"`feature_set` has to be one of {FEATURE_SETS}")
        if algorithm not in ALGORITHMS + ("all",):
            raise ValueError(f"`algorithm` has to be one of {ALGORITHMS}")
        self.mode = mode
        self.feature_set = feature_set
        self.algorithm = algorithm
        self.tree = tree or TrainControl()
        self.seed = int(seed)
        self.bpso = (bpso or BpsoConfig()).replace(
            seed=self.seed, tree_control=self.tree
        )
        self.folds = int(folds)
        self.table = table
        self.corpus = corpus
        self.model = model
        self.report = report
        self.rpc_url = rpc_url

    def __repr__(self):
        return f"RunConfig({self.to_dict()!r})"

    def to_dict(self):
        """Configuration echo for reports. Paths are left out, they do not
        influence results."""
        return {
            "mode": self.mode,
            "feature_set": self.feature_set,
            "algorithm": self.algorithm,
            "bpso": self.bpso.to_dict(),
            "tree": self.tree.to_dict(),
            "folds": self.folds,
            "seed": self.seed,
            "table": self.table,
        }

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if "tree" in data:
            data["tree"] = TrainControl.from_dict(data["tree"])
        if "bpso" in data:
            data["bpso"] = BpsoConfig.from_dict(data["bpso"])
        return cls(**data)

    @classmethod
    def from_file(cls, path, **overrides):
        """
        Reads a configuration from a `json` file. Keyword arguments that
        are not `None` override the values of the file, dictionaries given
        for `bpso` and `tree` override single parameters.

        Parameters
        ----------
        path : path like

        Returns
        -------
        config : RunConfig
        """
        try:
            with open(path, "r", encoding="utf-8") as file:
                data = json.load(file)
        except (OSError, ValueError) as err:
            raise FileReadingException(
                f"could not read configuration {path}: {err}"
            ) from err
        if not isinstance(data, dict):
            raise FileReadingException(
                f"configuration {path} is no JSON object"
            )
        for key, value in overrides.items():
            if value is None:
                continue
            if key in ("bpso", "tree") and isinstance(data.get(key), dict):
                data[key] = {**data[key], **value}
            else:
                data[key] = value
        return cls.from_dict(data)
