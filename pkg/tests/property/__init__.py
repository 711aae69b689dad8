"""
Property-based tests using Hypothesis for correctness properties.
"""
