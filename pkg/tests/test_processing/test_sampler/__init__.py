"""
Tests for opclass.processing.sampler
"""
