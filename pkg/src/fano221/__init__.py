"""Exact computations for blow-ups of quadric threefolds along a twisted quartic."""

__version__ = "0.1.0"
