"""
Tests for opclass.processing
"""
