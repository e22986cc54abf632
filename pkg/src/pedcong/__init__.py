"""Partitions and bipartitions with distinct even parts: series, mod 8
classification and congruence verification."""

__version__ = "0.1.0"
