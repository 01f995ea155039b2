"""Poisson structures given by generator bracket tables.

A structure stores {u, v} for generator pairs only; brackets of composite
polynomials follow from bilinearity and the Leibniz rule,

    {f, g} = sum_{u,v} (df/du) (dg/dv) {u, v}.

Matrix-valued brackets use the Kronecker convention of
:mod:`poincare_deform.algebra.matrix`: entry ((i,k),(j,l)) of
``bracket_matrix(A, B)`` is {A_ij, B_kl}.
"""
from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .algebra.matrix import Matrix, identity, kron, left_inverse, swap
from .algebra.ring import Poly, Ring

__all__ = [
    "PoissonStructure",
    "RelationSpec",
    "relation_rhs",
    "relation_residual",
    "jacobi_residual",
    "jacobi_sweep",
    "casimir_residuals",
    "derive_table",
    "swap_bracket",
    "conjugate_bracket",
    "StructureError",
]


class StructureError(ValueError):
    """A bracket table that cannot reproduce the relations it was built from."""


class PoissonStructure:
    """Antisymmetric bracket table on the generators of a ring.

    ``table`` maps generator-name pairs to polynomials.  Either orientation
    may be given; supplying both with inconsistent values is an error, as is
    a nonzero diagonal entry.  Missing pairs bracket to zero.  ``order`` is
    the lambda truncation order of every bracket computed (None: exact).
    """

    def __init__(self, ring: Ring, table: Mapping[tuple[str, str], Poly],
                 order: int | None = None, name: str = ""):
        self.ring = ring
        self.order = order
        self.name = name
        rows: dict[int, dict[int, Poly]] = {}
        for (a, b), value in table.items():
            if a not in ring.index or b not in ring.index:
                raise KeyError(f"unknown generator in pair ({a!r}, {b!r})")
            value = ring.coerce(value).truncate(order)
            ia, ib = ring.index[a], ring.index[b]
            if ia == ib:
                if value:
                    raise StructureError(f"{{{a}, {a}}} must vanish")
                continue
            if ia > ib:
                ia, ib, value = ib, ia, -value
            prev = rows.get(ia, {}).get(ib)
            if prev is not None and prev != value:
                raise StructureError(f"inconsistent entries for {{{a}, {b}}}")
            if value:
                rows.setdefault(ia, {})[ib] = value
                rows.setdefault(ib, {})[ia] = -value
        self._rows = rows

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"PoissonStructure{label}(order={self.order})"

    # -- table access --------------------------------------------------------
    def entry(self, a: str, b: str) -> Poly:
        ia, ib = self.ring.index[a], self.ring.index[b]
        v = self._rows.get(ia, {}).get(ib)
        return v if v is not None else self.ring.zero()

    def table(self) -> dict[tuple[str, str], Poly]:
        """One orientation (lower index first) of every nonzero entry."""
        names = self.ring.names
        return {(names[a], names[b]): v for a, row in self._rows.items()
                for b, v in row.items() if a < b}

    def mapped(self, fn: Callable[[tuple[str, str], Poly], Poly],
               name: str | None = None) -> "PoissonStructure":
        """New structure with every stored entry replaced by fn(pair, value)."""
        table = {pair: fn(pair, v) for pair, v in self.table().items()}
        return PoissonStructure(self.ring, table, self.order, name or self.name)

    def truncated(self, order: int | None) -> "PoissonStructure":
        return PoissonStructure(self.ring, self.table(), order, self.name)

    # -- brackets -------------------------------------------------------------
    def _mul(self, a: Poly, b: Poly) -> Poly:
        return a.mul(b, self.order)

    def gradient(self, f: Poly) -> dict[int, Poly]:
        return {v: f.diff(v) for v in f.variables()}

    def _contract(self, grad: Mapping[int, Poly]) -> dict[int, Poly]:
        """H_v = sum_u (df/du) {u, v}."""
        out: dict[int, Poly] = {}
        for u, du in grad.items():
            for v, t in self._rows.get(u, {}).items():
                term = self._mul(du, t)
                out[v] = out[v] + term if v in out else term
        return out

    def _pair(self, h: Mapping[int, Poly], grad: Mapping[int, Poly]) -> Poly:
        acc = self.ring.zero()
        if self.order is not None:
            acc = acc.truncate(self.order)
        for v, dv in grad.items():
            hv = h.get(v)
            if hv is not None:
                acc = acc + self._mul(hv, dv)
        return acc

    def bracket(self, f, g) -> Poly:
        f = self.ring.coerce(f)
        g = self.ring.coerce(g)
        return self._pair(self._contract(self.gradient(f)), self.gradient(g))

    def bracket_matrix(self, a: Matrix, b: Matrix) -> Matrix:
        """The 4x4 (or general) matrix {A (x), B} of entry brackets."""
        if a.ring is not self.ring or b.ring is not self.ring:
            raise ValueError("matrices must live in the structure's ring")
        ha = [[self._contract(self.gradient(e)) for e in row] for row in a.entries]
        gb = [[self.gradient(e) for e in row] for row in b.entries]
        nb_r, nb_c = b.rows, b.cols
        return Matrix.build(
            self.ring, a.rows * nb_r, a.cols * nb_c,
            lambda r, c: self._pair(ha[r // nb_r][c // nb_c], gb[r % nb_r][c % nb_c]),
        )


# -- relation specs ------------------------------------------------------------

Selector = str | Matrix | None
_SIGNED = {"r": ("r", 1), "rd": ("rd", 1), "-r": ("r", -1), "-rd": ("rd", -1)}


def _select(sel: Selector, env: Mapping[str, Matrix]) -> Matrix | None:
    if sel is None or isinstance(sel, Matrix):
        return sel
    try:
        key, sign = _SIGNED[sel]
    except KeyError:
        raise ValueError(f"unknown coefficient selector {sel!r}") from None
    if key not in env:
        raise KeyError(f"environment lacks matrix {key!r}")
    m = env[key]
    return m if sign > 0 else -m


@dataclass(frozen=True)
class RelationSpec:
    """{A (x), B} = a A1 B2 + A1 B2 b - B2 c A1 - A1 d B2 + extra.

    ``left`` and ``right`` name matrices in the evaluation environment; the
    selectors name ``"r"``/``"rd"`` (optionally negated with a leading ``-``),
    give an explicit 4x4 matrix, or are None for an absent term.  ``extra``
    receives the environment and returns a 4x4 matrix.
    """

    label: str
    left: str
    right: str
    alpha: Selector = None
    beta: Selector = None
    gamma: Selector = None
    delta: Selector = None
    extra: Callable[[Mapping[str, Matrix]], Matrix] | None = None
    anchor: str = ""
    aliases: tuple[str, ...] = field(default=())

    @classmethod
    def commutator(cls, label: str, left: str, right: str, sel: str,
                   anchor: str = "") -> "RelationSpec":
        """{A (x), B} = [X, A1 B2]."""
        neg = sel[1:] if sel.startswith("-") else "-" + sel
        return cls(label, left, right, alpha=sel, beta=neg, anchor=anchor)

    def with_selectors(self, **changes) -> "RelationSpec":
        data = {k: getattr(self, k) for k in
                ("label", "left", "right", "alpha", "beta", "gamma", "delta",
                 "extra", "anchor", "aliases")}
        data.update(changes)
        return RelationSpec(**data)


def _env_matrix(env: Mapping[str, Matrix], name: str) -> Matrix:
    try:
        return env[name]
    except KeyError:
        raise KeyError(f"environment lacks matrix {name!r}") from None


def relation_rhs(spec: RelationSpec, env: Mapping[str, Matrix],
                 order: int | None = None) -> Matrix:
    a = _env_matrix(env, spec.left)
    b = _env_matrix(env, spec.right)
    ring = a.ring
    one = identity(ring, a.rows)
    a1 = kron(a, one)
    b2 = kron(one, b)
    a1b2 = a1.matmul(b2, order)
    total = Matrix.build(ring, a1.rows, a1.cols, lambda i, j: 0)
    sa, sb, sc, sd = (_select(s, env) for s in (spec.alpha, spec.beta, spec.gamma, spec.delta))
    if sa is not None:
        total = total + sa.matmul(a1b2, order)
    if sb is not None:
        total = total + a1b2.matmul(sb, order)
    if sc is not None:
        total = total - b2.matmul(sc, order).matmul(a1, order)
    if sd is not None:
        total = total - a1.matmul(sd, order).matmul(b2, order)
    if spec.extra is not None:
        total = total + spec.extra(env)
    return total.truncate(order)


def relation_residual(spec: RelationSpec, s: PoissonStructure,
                      env: Mapping[str, Matrix]) -> Matrix:
    """LHS - RHS of the relation; the zero matrix iff it holds."""
    a = _env_matrix(env, spec.left)
    b = _env_matrix(env, spec.right)
    lhs = s.bracket_matrix(a, b)
    return (lhs - relation_rhs(spec, env, s.order)).truncate(s.order)


def swap_bracket(m: Matrix) -> Matrix:
    """{B (x), A} from {A (x), B}:  -Pi M Pi."""
    pi = swap(m.ring, int(round(m.rows ** 0.5)))
    return -(pi * m * pi)


def conjugate_bracket(m: Matrix) -> Matrix:
    """{A^dagger (x), B^dagger} from {A (x), B} for a real structure."""
    return m.dagger()


# -- verifiers ---------------------------------------------------------------

def jacobi_residual(a, b, c, s: PoissonStructure) -> Poly:
    br = s.bracket
    return br(br(a, b), c) + br(br(b, c), a) + br(br(c, a), b)


def jacobi_sweep(s: PoissonStructure, names: Sequence[str] | None = None,
                 order: int | None = None,
                 reduce: Callable[[Poly], Poly] | None = None):
    """Jacobi residuals over unordered triples of distinct generators.

    Triples with a repeated generator vanish by antisymmetry alone and are
    skipped.  Yields ``(triple, residual)`` with the residual truncated at
    ``order`` and passed through ``reduce`` when given.
    """
    ring = s.ring
    names = list(names if names is not None else ring.names)
    gens = {n: ring.gen(n) for n in names}
    cache: dict[tuple[str, str], Poly] = {}

    def gb(x: str, y: str) -> Poly:
        if (x, y) not in cache:
            cache[(x, y)] = s.entry(x, y)
        return cache[(x, y)]

    for a, b, c in itertools.combinations(names, 3):
        res = (s.bracket(gb(a, b), gens[c]) + s.bracket(gb(b, c), gens[a])
               + s.bracket(gb(c, a), gens[b]))
        if order is not None:
            res = res.truncate(order)
        if reduce is not None:
            res = reduce(res)
        yield (a, b, c), res


def casimir_residuals(c: Poly, s: PoissonStructure, gens: Iterable) -> list[Poly]:
    return [s.bracket(c, g) for g in gens]


# -- table derivation from matrix relations ---------------------------------

def _flat(m: Matrix) -> list[Poly]:
    return [e for row in m.entries for e in row]


def derive_table(
    families: Mapping[str, tuple[Sequence[Matrix], Sequence[str]]],
    brackets: Callable[[int, int, str, str], Matrix | None],
) -> dict[tuple[str, str], Poly]:
    """Solve matrix bracket relations for generator brackets.

    ``families[f] = (matrices, generator names)``: each matrix entry is a
    linear form in the family's generators and together they determine every
    generator.  ``brackets(ia, ib, fa, fb)`` returns the bracket matrix
    between matrix ``ia`` of family ``fa`` and matrix ``ib`` of family ``fb``
    (or None when the pair is not needed or unknown).

    Family pairs are processed in the given order, both orientations; any
    pair of generators reached twice must agree.
    """
    inverses = {}
    for fam, (mats, names) in families.items():
        entries = [e for m in mats for e in _flat(m)]
        inverses[fam] = (left_inverse(entries, names), [m.rows for m in mats])

    table: dict[tuple[str, str], Poly] = {}
    fams = list(families)
    for fa in fams:
        for fb in fams:
            inv_a, sizes_a = inverses[fa]
            inv_b, sizes_b = inverses[fb]
            used_a = {e for combo in inv_a.values() for e in combo}
            used_b = {e for combo in inv_b.values() for e in combo}
            blocks = {}
            for ea in used_a:
                ma, ia = _locate(ea, sizes_a)
                for eb in used_b:
                    mb, ib = _locate(eb, sizes_b)
                    if (ma, mb) not in blocks:
                        blocks[(ma, mb)] = brackets(ma, mb, fa, fb)
            if any(m is None for m in blocks.values()):
                continue
            for u, cu in inv_a.items():
                for v, cv in inv_b.items():
                    acc = None
                    for ea, xa in cu.items():
                        ma, (i, j) = _locate(ea, sizes_a)
                        for eb, xb in cv.items():
                            mb, (k, l) = _locate(eb, sizes_b)
                            m = blocks[(ma, mb)]
                            n = sizes_b[mb]
                            val = m[n * i + k, n * j + l]
                            if not val:
                                continue
                            term = val.scale(_cprod(xa, xb))
                            acc = term if acc is None else acc + term
                    if acc is None:
                        acc = next(iter(families[fa][0])).ring.zero()
                    prev = table.get((u, v))
                    if prev is None and (v, u) in table:
                        prev = -table[(v, u)]
                    if prev is not None:
                        if prev != acc:
                            raise StructureError(f"relations disagree on {{{u}, {v}}}")
                        continue
                    table[(u, v)] = acc
    return table


def _locate(e: int, sizes: Sequence[int]) -> tuple[int, tuple[int, int]]:
    for m, n in enumerate(sizes):
        if e < n * n:
            return m, divmod(e, n)
        e -= n * n
    raise IndexError(e)


def _cprod(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
