"""
RecurrentGF - exact generating functions of multidimensional difference equations.

This package solves Cauchy problems for linear difference equations with
constant coefficients on the integer lattice, builds the rational generating
function of the solution from the initial data, and cross-checks it against
a dynamic-programming solver, all in exact rational arithmetic.
"""
