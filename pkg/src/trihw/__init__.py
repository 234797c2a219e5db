"""Exact highest-weight theory for graded algebras with triangular decompositions."""
__version__ = "0.1.0"
