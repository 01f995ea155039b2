"""Normal form modulo det = 1 for 2x2 matrices of generators.

For a matrix of independent generators [[a, b], [c, d]] the ideal
(ad - bc - 1) has the single-element Groebner basis {ad - bc - 1} under any
order with ad leading, so rewriting a*d -> 1 + b*c until no monomial holds
both a and d gives a canonical representative.  Two polynomials agree on the
unimodular surface iff their normal forms are equal.
"""
from __future__ import annotations

from collections.abc import Sequence

from .ring import Poly

__all__ = ["UnimodularReducer"]


class UnimodularReducer:
    """Reduce modulo det = 1 for one or more disjoint generator quadruples.

    Each quadruple is ``(a, b, c, d)`` naming the entries [[a, b], [c, d]].
    """

    def __init__(self, ring, quads: Sequence[Sequence[str]]):
        self.ring = ring
        self.quads = []
        seen = set()
        for q in quads:
            if len(q) != 4 or seen & set(q):
                raise ValueError("quadruples must have four distinct, unshared names")
            seen |= set(q)
            ia, ib, ic, id_ = (ring.index[n] for n in q)
            self.quads.append((ring.shifts[ia], ring.shifts[id_],
                               ring.gen(q[1]) * ring.gen(q[2])))
        self._powers: dict[tuple[int, int], Poly] = {}

    def _power(self, q: int, k: int) -> Poly:
        key = (q, k)
        if key not in self._powers:
            self._powers[key] = (self.ring.one() + self.quads[q][2]) ** k
        return self._powers[key]

    def __call__(self, p: Poly) -> Poly:
        ring = self.ring
        m = ring.field_mask
        for q, (sa, sd, _) in enumerate(self.quads):
            keep = {}
            rewrite: dict[int, dict] = {}
            for key, c in p.terms.items():
                k = min((key >> sa) & m, (key >> sd) & m)
                if k:
                    base = key - (k << sa) - (k << sd)
                    rewrite.setdefault(k, {})[base] = c
                else:
                    keep[key] = c
            if not rewrite:
                continue
            out = Poly(ring, keep, p.order)
            for k, terms in rewrite.items():
                out = out + Poly(ring, terms, p.order) * self._power(q, k)
            p = out
        return p
