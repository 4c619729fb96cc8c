"""Exact representations of the quantum loop algebra of sl_{l+1} and its Borel subalgebra."""

__version__ = "0.1.0"
