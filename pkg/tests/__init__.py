"""
Tests module for unit, property, and integration tests.
"""
