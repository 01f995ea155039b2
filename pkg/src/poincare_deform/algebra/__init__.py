"""Exact polynomial algebra: packed monomial rings, matrices and series."""
