"""Exact computations with quadratic refinements, Gauss sums, Wu classes and
differential cochains at desk scale."""

__version__ = "0.1.0"
