"""
Torus-fixed rank-0 instanton sheaves on monomial multiple lines in P3.

Modules
-------
exact_math          exact rational matrices and polynomials
adhm_core           ADHM data, equations, monads and stability
torus_fixed         torus action, gauge witnesses and fixed-point conditions
young_monomial      Young diagrams, monomial ideals, resolutions, Hilbert polynomials
filtration_solver   canonical-filtration level data and its constraint solver
moduli_invariants   partition counts, Euler pairings, Poincare polynomial
reports             classification and ADHM verdict documents
acceptance          release-gate criteria
cli                 command-line entry point
"""

__version__ = "0.1.0"
