"""Truncated power series in lambda.

A truncated series is a :class:`Poly` with ``order`` set; these helpers build
the few transcendental series the realizations need.
"""
from __future__ import annotations

from .matrix import Matrix, identity
from .ring import Poly, Q

__all__ = ["series_sqrt_inv", "series_binomial", "exp_matrix", "min_lam_degree"]


def min_lam_degree(p: Poly) -> int | None:
    degs = p.lam_degrees()
    return None if degs is None else degs[0]


def _perturbation(s: Poly, order: int | None) -> tuple[Poly, int]:
    if order is None:
        order = s.order
    if order is None:
        raise ValueError("a truncation order is required")
    ring = s.ring
    u = s.truncate(order) - ring.one()
    low = min_lam_degree(u)
    if low is not None and low < 1:
        raise ValueError("series must have constant term 1 (lambda^0 part equal to 1)")
    return u, order


def series_binomial(s: Poly, exponent, order: int | None = None) -> Poly:
    """(s)**exponent as a series, for s = 1 + O(lambda)."""
    u, order = _perturbation(s, order)
    a = Q(exponent)
    result = s.ring.one().truncate(order)
    term = result
    coeff = Q(1)
    for k in range(1, order):
        term = term.mul(u, order)
        if not term:
            break
        coeff = coeff * (a - k + 1) / k
        result = result + term.scale(coeff)
    return result


def series_sqrt_inv(s: Poly, order: int | None = None) -> Poly:
    """t with t*t*s = 1 modulo lambda**order."""
    return series_binomial(s, Q(-1, 2), order)


def exp_matrix(m: Matrix, order: int) -> Matrix:
    """sum_k m**k / k! for a square matrix with entries of lambda degree >= 1."""
    for e in m:
        low = min_lam_degree(e)
        if low is not None and low < 1:
            raise ValueError("exponent must vanish at lambda = 0")
    ring = m.ring
    result = identity(ring, m.rows).truncate(order)
    term = result
    for k in range(1, order):
        term = term.matmul(m, order) / k
        if term.is_zero():
            break
        result = result + term
    return result
