"""Exact cohomology on Grassmannians, weighted projective sections, and hyperbolicity verdicts for Fano threefold surfaces."""

__version__ = "0.1.0"
