"""
Tests package for RecurrentGF.

This package contains the test suites for the algebra layer, the problem
model, the solver, generating-function assembly and verification, and the
command-line and HTTP front ends.
"""
