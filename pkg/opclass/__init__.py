"""The opclass package classifies Ethereum smart contracts into application
categories using features derived from their EVM bytecode and, optionally,
from the history of their accounts.

In particular, opclass provides:

- a disassembler for EVM bytecode with versioned opcode tables,
- opcode family counts and account statistics as feature vectors,
- C4.5 decision trees with fractional handling of missing values,
- multiclass AdaBoost.M1 ensembles of those trees,
- feature selection by binary particle swarm optimization,
- evaluation by pairwise AUC, `AUC_area` and Micro-F1,
- stratified cross-validation and a command line interface `opclass`,
- an `eth_getCode` JSON-RPC client to build corpora from a node.

Installation
------------

    pip install .

Logging
-------
`opclass` logs with `loguru`. The library disables its logger on import,
call `loguru.logger.enable("opclass")` to see its messages. The command
line interface enables it.
"""

# pylint: disable=wrong-import-order
# pylint: disable=wrong-import-position
# pylint: disable=unused-import

from ._version import __version__ as version

# Tell users if and which hard dependencies are missing
hard_dependencies = (
    "numpy",
    "scipy",
    "pandas",
    "requests",
    "click",
    "loguru",
    "joblib",
)
missing_dependencies = []

for dependency in hard_dependencies:
    try:
        __import__(dependency)
    except ImportError as ie:
        missing_dependencies.append(f"{dependency}: {ie}")

if missing_dependencies:
    raise ImportError(
        "Unable to import required dependencies:\n"
        + "\n".join(missing_dependencies)
    )
del hard_dependencies, dependency, missing_dependencies

from loguru import logger

logger.disable("opclass")

import opclass.core
import opclass.evm
import opclass.models
import opclass.pipeline
import opclass.processing

__all__ = [
    "core",
    "evm",
    "models",
    "pipeline",
    "processing",
    "version",
]
