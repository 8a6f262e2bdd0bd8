"""
Endpoints package for RecurrentGF API.

This package contains the individual endpoint modules: generating functions,
box solutions, Green's functions, expansion at infinity, verification,
health checks and server status.
"""
