"""
Classes, methods and interfaces relevant for all other modules.
"""

import opclass.core.computing
import opclass.core.constants
import opclass.core.data
import opclass.core.exceptions
import opclass.core.metrics
import opclass.core.statistics

__all__ = [
    "statistics",
    "computing",
    "data",
    "constants",
    "exceptions",
    "metrics",
]
