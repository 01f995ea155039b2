"""Small dense matrices of polynomials.

Kronecker convention: the first factor carries the slow index,

    (A (x) B)[n_b*i + k, n_b*j + l] = A[i, j] * B[k, l].

For 2x2 factors a 4x4 row index ``2*i + k`` is the pair (i, k) with i in the
first space and k in the second.  The swap operator Pi sends (i, k) to (k, i),
so Pi (A (x) 1) Pi = 1 (x) A.
"""
from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence

from .ring import Poly, Q, Ring

__all__ = [
    "Matrix",
    "kron",
    "identity",
    "zeros",
    "swap",
    "commutator",
    "hermitian_p_layout",
    "hermitian_x_layout",
    "components_from_layout",
    "left_inverse",
]


class Matrix:
    """Immutable matrix whose entries are :class:`Poly` in one ring."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, entries: Sequence[Sequence]):
        self.ring = ring
        rows = [tuple(ring.coerce(e) for e in row) for row in entries]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty matrix")
        self.entries = tuple(rows)
        self.rows = len(rows)
        self.cols = len(rows[0])

    @classmethod
    def build(cls, ring: Ring, n: int, m: int, fn: Callable[[int, int], object]):
        return cls(ring, [[fn(i, j) for j in range(m)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __iter__(self):
        for row in self.entries:
            yield from row

    def map(self, fn: Callable[[Poly], Poly]) -> "Matrix":
        return Matrix(self.ring, [[fn(e) for e in row] for row in self.entries])

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"Matrix[{body}]"

    # -- arithmetic ----------------------------------------------------------
    def _same_shape(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("matrix operand expected")
        if other.ring is not self.ring:
            raise ValueError("matrices live in different rings")
        if other.shape != self.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.ring, [
            [a + b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.ring, [
            [a - b for a, b in zip(ra, rb)]
            for ra, rb in zip(self.entries, other.entries)
        ])

    def __neg__(self) -> "Matrix":
        return self.map(lambda e: -e)

    def __mul__(self, other) -> "Matrix":
        if isinstance(other, Matrix):
            return self.matmul(other)
        return self.map(lambda e: e * other)

    def __rmul__(self, other) -> "Matrix":
        return self.map(lambda e: e * other)

    def __truediv__(self, value) -> "Matrix":
        return self.map(lambda e: e / value)

    def matmul(self, other: "Matrix", order: int | None = None) -> "Matrix":
        """Matrix product; entry products are truncated at ``order``."""
        if other.ring is not self.ring:
            raise ValueError("matrices live in different rings")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a and b:
                        acc = acc + a.mul(b, order)
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out)

    def __pow__(self, n: int) -> "Matrix":
        if self.rows != self.cols or n < 0:
            raise ValueError("non-negative power of a square matrix only")
        result = identity(self.ring, self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.ring is other.ring and \
            self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    # -- structure -----------------------------------------------------------
    def transpose(self) -> "Matrix":
        return Matrix(self.ring, [list(c) for c in zip(*self.entries)])

    T = property(transpose)

    def star(self) -> "Matrix":
        """Entry-wise complex conjugation."""
        return self.map(Poly.star)

    def dagger(self) -> "Matrix":
        return self.star().transpose()

    def trace(self) -> Poly:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        acc = self.ring.zero()
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def det2(self) -> Poly:
        if self.shape != (2, 2):
            raise ValueError("det2 needs a 2x2 matrix")
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def adjugate2(self) -> "Matrix":
        if self.shape != (2, 2):
            raise ValueError("adjugate2 needs a 2x2 matrix")
        (a, b), (c, d) = self.entries
        return Matrix(self.ring, [[d, -b], [-c, a]])

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self)

    def truncate(self, order: int | None) -> "Matrix":
        return self.map(lambda e: e.truncate(order))

    def lam_coeff(self, k: int) -> "Matrix":
        return self.map(lambda e: e.lam_coeff(k))

    def div_lam(self, k: int = 1) -> "Matrix":
        return self.map(lambda e: e.div_lam(k))

    def subs(self, mapping: Mapping[str, Poly]) -> "Matrix":
        return self.map(lambda e: e.subs(mapping))

    def evaluate(self, values, lam=0.0, hbar=0.0):
        return [[e.evaluate(values, lam, hbar) for e in row] for row in self.entries]

    def nonzero_entries(self) -> list[tuple[int, int, Poly]]:
        return [(i, j, e) for i, row in enumerate(self.entries)
                for j, e in enumerate(row) if e]

    def one(self) -> "Matrix":
        return identity(self.ring, self.rows)


def identity(ring: Ring, n: int) -> Matrix:
    return Matrix.build(ring, n, n, lambda i, j: 1 if i == j else 0)


def zeros(ring: Ring, n: int, m: int | None = None) -> Matrix:
    return Matrix.build(ring, n, n if m is None else m, lambda i, j: 0)


def kron(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != a.cols or b.rows != b.cols:
        raise ValueError("kron expects square matrices")
    if a.ring is not b.ring:
        raise ValueError("matrices live in different rings")
    nb = b.rows
    n = a.rows * nb
    return Matrix.build(
        a.ring, n, n,
        lambda r, c: a[r // nb, c // nb] * b[r % nb, c % nb],
    )


def swap(ring: Ring, n: int = 2) -> Matrix:
    """The permutation of (C^n) (x) (C^n) exchanging the two factors."""
    def entry(r, c):
        i, k = divmod(r, n)
        j, l = divmod(c, n)
        return 1 if (i == l and k == j) else 0
    return Matrix.build(ring, n * n, n * n, entry)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a * b - b * a


# -- hermitian layouts ---------------------------------------------------------

def hermitian_p_layout(ring: Ring, names: Sequence[str]) -> Matrix:
    """[[-v0+v3, v1-i v2], [v1+i v2, -v0-v3]] for real generators v0..v3."""
    v0, v1, v2, v3 = (ring.gen(n) for n in names)
    i = ring.I
    return Matrix(ring, [[-v0 + v3, v1 - i * v2], [v1 + i * v2, -v0 - v3]])


def hermitian_x_layout(ring: Ring, names: Sequence[str]) -> Matrix:
    """[[-v0-v3, -v1+i v2], [-v1-i v2, -v0+v3]] for real generators v0..v3."""
    v0, v1, v2, v3 = (ring.gen(n) for n in names)
    i = ring.I
    return Matrix(ring, [[-v0 - v3, -v1 + i * v2], [-v1 - i * v2, -v0 + v3]])


def components_from_layout(m: Matrix, kind: str) -> list[Poly]:
    """Invert a hermitian layout: four components from a 2x2 matrix.

    Works for any matrix written in that layout (its entries may be
    arbitrary polynomials), e.g. the Pauli-Lubanski matrix.
    """
    (a11, a12), (a21, a22) = m.entries
    i = m.ring.I
    if kind == "p":
        return [-(a11 + a22) / 2, (a12 + a21) / 2, i * (a12 - a21) / 2, (a11 - a22) / 2]
    if kind == "x":
        return [-(a11 + a22) / 2, -(a12 + a21) / 2, -i * (a12 - a21) / 2, (a22 - a11) / 2]
    raise ValueError(f"unknown layout {kind!r}")


# -- exact linear algebra over Q(i) -------------------------------------------

def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _csub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cinv(a):
    n = a[0] * a[0] + a[1] * a[1]
    return (a[0] / n, -a[1] / n)


def _linear_coeffs(p: Poly, names: Sequence[str]) -> list[tuple]:
    ring = p.ring
    coeffs = {n: [Q(0), Q(0)] for n in names}
    for key, c in p.terms.items():
        exps, lam, hb, ipow = ring.decode(key)
        nz = [k for k, e in enumerate(exps) if e]
        if lam or hb or len(nz) != 1 or exps[nz[0]] != 1:
            raise ValueError(f"{p} is not a linear form in the generators")
        name = ring.names[nz[0]]
        if name not in coeffs:
            raise ValueError(f"generator {name!r} not among {list(names)}")
        coeffs[name][ipow] += c
    return [tuple(coeffs[n]) for n in names]


def left_inverse(entries: Sequence[Poly], names: Sequence[str]) -> dict[str, dict[int, tuple]]:
    """Express each generator as a Q(i)-combination of linear forms.

    ``entries[e]`` is a linear form in ``names``.  Returns, for every name, a
    map ``e -> (re, im)`` with sum_e coeff_e * entries[e] == generator.
    Raises ValueError if the forms do not span the generators.
    """
    rows = [_linear_coeffs(p, names) for p in entries]
    n_e, n_g = len(rows), len(names)
    zero, one = (Q(0), Q(0)), (Q(1), Q(0))
    # Row-reduce [A^T | I_g] where A[e][g] = coefficient; we need C with C A = I.
    # Work with the augmented system on A^T: columns = entries.
    aug = [[rows[e][g] for e in range(n_e)] + [one if g == h else zero for h in range(n_g)]
           for g in range(n_g)]
    # Solve C A = I  <=>  A^T C^T = I.  Gaussian elimination on A^T (n_g x n_e).
    piv_cols = []
    r = 0
    for c in range(n_e):
        piv = next((k for k in range(r, n_g) if aug[k][c] != zero), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = _cinv(aug[r][c])
        aug[r] = [_cmul(inv, v) for v in aug[r]]
        for k in range(n_g):
            if k != r and aug[k][c] != zero:
                f = aug[k][c]
                aug[k] = [_csub(v, _cmul(f, w)) for v, w in zip(aug[k], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == n_g:
            break
    if r < n_g:
        raise ValueError("linear forms do not determine every generator")
    # Row t of the reduced system reads x_{piv_cols[t]} = (aug[t] rhs part);
    # C^T[e][h] = x_e for right-hand side h, free variables set to zero.
    out: dict[str, dict[int, tuple]] = {}
    for h, name in enumerate(names):
        combo = {}
        for t, e in enumerate(piv_cols):
            v = aug[t][n_e + h]
            if v != zero:
                combo[e] = v
        out[name] = combo
    return out
