"""Exact collapse of flat orbifolds along holonomy-invariant subspaces."""

__version__ = "0.1.0"
