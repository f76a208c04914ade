"""
catflow core library

Geometry of CAT(0) model spaces, monotone vector fields, their resolvents and
Yosida approximations, and the exponential formula for the generated
nonexpansive semigroups.

Sub-packages:
- geometry: space interface, comparison geometry, tangent cones, residual checks
- spaces: Euclidean, hyperbolic, metric tree and product spaces
- fields: monotone fields, convex functionals, the built-in catalog
- resolvent: resolvents, Yosida approximations and their property suite
- semigroup: exponential formula, error bounds, trajectory diagnostics
"""
