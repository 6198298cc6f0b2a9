# pylint: disable-all

"""
Unittests
"""
