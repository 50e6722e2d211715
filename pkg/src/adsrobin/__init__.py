"""Scalar-field kernels on the AdS Poincare patch with Robin boundary data."""

__version__ = "0.1.0"
