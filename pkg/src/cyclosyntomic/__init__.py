"""Exact big (q-)Witt vector, truncated Habiro ring and cyclosyntomic computations."""

__version__ = "0.1.0"
