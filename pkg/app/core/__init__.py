"""
Core package for RecurrentGF.

This package contains configuration management, statistics, the error
hierarchy, multi-index helpers and the exact algebra layer.
"""
