"""
Functions for the handling of run statistics of components.
"""

from .computing import json_ready


class ComponentWithStatistics:
    """
    Interface class for components (data handlers, extractors, classifier
    extensions, quality assurances) enabling to save and handle the
    statistics of their latest run.
    """

    def __init__(self):
        self._statistics = {}

    def set_statistics(self, **kwargs):
        """
        Sets the statistics dict corresponding to the keyword arguments.
        Supposed to be overwritten by inheriting classes with stronger
        requirements.
        """
        self._statistics = kwargs

    def update_statistics(self, **kwargs):
        """
        Adds or overwrites single entries of the statistics dict of the
        latest run.
        """
        self._statistics = {**self._statistics, **kwargs}

    def get_latest_statistics(self):
        """
        Return
        ------
        statistics: dict
            The statistics of the latest run of the component, converted to
            plain Python objects.
        """
        return json_ready(self._statistics)
