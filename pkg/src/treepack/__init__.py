"""Exact spanning-tree packing with partition certificates and experiments."""

__version__ = "0.1.0"
