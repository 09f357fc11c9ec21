"""
Dagger Workbench - executable checks for dagger categories with dagger
equalisers, biproducts and a simple monoidal separator.

The package instantiates finite-dimensional Hilbert spaces and finite
relations as concrete models, derives scalars, projections and standard
bases from the axioms, and evidences the equivalence with Hilbert spaces.
"""

__version__ = "0.1.0"
