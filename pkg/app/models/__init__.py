"""
Models package for RecurrentGF.

This package contains the problem model and validators, the
dynamic-programming solver, the generating-function engine and the seeded
random problem generator.
"""
