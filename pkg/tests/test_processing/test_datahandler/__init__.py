"""
Tests for opclass.processing.datahandler
"""
