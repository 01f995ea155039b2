"""Exact verification and numerical dynamics for a deformed Poincare algebra."""

__version__ = "0.1.0"
