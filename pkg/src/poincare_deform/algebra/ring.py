"""Polynomial rings over Gaussian rationals with a Laurent parameter λ.

A monomial is packed into a single Python integer.  The layout is

    bits 0-1          power of the imaginary unit (bit 1 is the carry of i*i)
    one field/var     exponent of each generator
    next field        power of hbar
    top field         power of lambda, stored with a bias so it may go negative

Every field except the i field has its top bit reserved as a guard bit, so
adding two packed keys never carries between fields and overflow shows up as
a set guard bit.  Monomial multiplication is therefore one integer addition.
Fields never straddle a 64-bit word boundary; the compiled kernel relies on it.

Coefficients are exact rationals (gmpy2.mpq when available).  With i carried in
the monomial, the coefficient field is Q(i) and scalars are Laurent
polynomials in lambda and polynomials in hbar.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

from . import kernels

LAM = "l"
HBAR = "hbar"
I_UNIT = "i"

__all__ = ["Q", "Ring", "Poly", "LAM", "HBAR"]


class Ring:
    """Commutative polynomial ring on named generators.

    ``conjugates`` maps a generator name to ``(partner, sign)`` and defines the
    star operation ``star(name) = sign * partner``.  Real generators map to
    themselves.  The map must be an involution.
    """

    def __init__(
        self,
        generators: Iterable[str],
        conjugates: Mapping[str, tuple[str, int]] | None = None,
        *,
        bits: int = 8,
        lam_bias: int = 64,
        name: str = "",
    ):
        self.names = tuple(generators)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate generator names")
        for reserved in (LAM, HBAR, I_UNIT):
            if reserved in self.names:
                raise ValueError(f"generator name {reserved!r} is reserved")
        if not 4 <= bits <= 16 or not 0 < lam_bias < (1 << (bits - 1)):
            raise ValueError("bad field layout")
        self.name = name
        self.bits = bits
        self.index = {n: k for k, n in enumerate(self.names)}

        shifts = []
        pos = 2
        for _ in range(len(self.names) + 2):
            if pos // 64 != (pos + bits - 1) // 64:
                pos = (pos // 64 + 1) * 64
            shifts.append(pos)
            pos += bits
        self.shifts = tuple(shifts[:-2])
        self.hbar_shift = shifts[-2]
        self.lam_shift = shifts[-1]
        self.total_bits = pos
        self.n_words = (pos + 63) // 64
        self.field_mask = (1 << bits) - 1
        self.max_exp = (1 << (bits - 1)) - 1
        self.lam_bias = lam_bias

        guard = 0
        for s in shifts:
            guard |= 1 << (s + bits - 1)
        self.guard = guard
        self.one_key = lam_bias << self.lam_shift
        self.lam_unit = 1 << self.lam_shift

        self.conj: dict[int, tuple[int, int]] = {}
        if conjugates:
            for a, (b, sign) in conjugates.items():
                if sign not in (1, -1):
                    raise ValueError("conjugation sign must be +1 or -1")
                self.conj[self.index[a]] = (self.index[b], sign)
            for a, (b, sign) in self.conj.items():
                back = self.conj.get(b)
                if back != (a, sign):
                    raise ValueError(
                        f"conjugation is not an involution at {self.names[a]!r}"
                    )

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Ring{label}({', '.join(self.names)})"

    # -- key helpers -------------------------------------------------------
    def trunc_key(self, order: int | None) -> int:
        """Smallest packed key whose lambda degree is >= order (-1: none)."""
        if order is None:
            return -1
        stored = order + self.lam_bias
        if stored <= 0:
            return 0
        if stored >= (1 << (self.bits - 1)):
            return -1
        return stored << self.lam_shift

    def make_key(self, exps: Mapping[str, int] | None = None, lam: int = 0,
                 hbar: int = 0, i: int = 0) -> int:
        key = self.one_key + lam * self.lam_unit + (hbar << self.hbar_shift) + (i & 1)
        if exps:
            for name, e in exps.items():
                if e < 0:
                    raise ValueError("negative generator exponent")
                key += e << self.shifts[self.index[name]]
        if key < 0 or key & self.guard:
            raise OverflowError("exponent out of range for ring layout")
        return key

    def decode(self, key: int) -> tuple[tuple[int, ...], int, int, int]:
        """Return (generator exponents, lambda power, hbar power, i power)."""
        m = self.field_mask
        exps = tuple((key >> s) & m for s in self.shifts)
        lam = (key >> self.lam_shift) - self.lam_bias
        hb = (key >> self.hbar_shift) & m
        return exps, lam, hb, key & 1

    def lam_degree(self, key: int) -> int:
        return (key >> self.lam_shift) - self.lam_bias

    # -- constructors --------------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.one_key: Q(1)})

    def const(self, value, lam: int = 0, hbar: int = 0) -> "Poly":
        """Constant a + b i (value may be int, rational or complex)."""
        re, im = _split(value)
        terms = {}
        base = self.one_key + lam * self.lam_unit + (hbar << self.hbar_shift)
        if re:
            terms[base] = Q(re)
        if im:
            terms[base + 1] = Q(im)
        return Poly(self, terms)

    def gen(self, name: str) -> "Poly":
        return Poly(self, {self.make_key({name: 1}): Q(1)})

    def gens(self, *names: str) -> list["Poly"]:
        return [self.gen(n) for n in names]

    @property
    def lam(self) -> "Poly":
        return Poly(self, {self.one_key + self.lam_unit: Q(1)})

    @property
    def hbar(self) -> "Poly":
        return Poly(self, {self.make_key(hbar=1): Q(1)})

    @property
    def I(self) -> "Poly":
        return Poly(self, {self.one_key + 1: Q(1)})

    def coerce(self, x) -> "Poly":
        if isinstance(x, Poly):
            if x.ring is not self:
                raise ValueError(f"element of {x.ring!r} used in {self!r}")
            return x
        return self.const(x)

    def embed(self, p: "Poly") -> "Poly":
        """Map a polynomial from another ring by generator name."""
        if p.ring is self:
            return p
        src = p.ring
        missing = [n for n in src.names if n not in self.index]
        terms = {}
        for key, c in p.terms.items():
            exps, lam, hb, i = src.decode(key)
            for n, e in zip(src.names, exps):
                if e and n in missing:
                    raise ValueError(f"generator {n!r} not in target ring")
            new = self.one_key + lam * self.lam_unit + (hb << self.hbar_shift) + i
            for n, e in zip(src.names, exps):
                if e:
                    new += e << self.shifts[self.index[n]]
            terms[new] = c
        return Poly(self, terms, p.order)


def _split(value):
    if isinstance(value, complex):
        return Q(value.real), Q(value.imag)
    if isinstance(value, tuple):
        return Q(value[0]), Q(value[1])
    return Q(value), Q(0)


class Poly:
    """Immutable polynomial in a :class:`Ring`.

    ``order`` (optional) is a truncation order in lambda: every stored term has
    lambda degree < order and arithmetic keeps the smaller order of the
    operands.  ``order=None`` means an exact polynomial.
    """

    __slots__ = ("ring", "terms", "order")

    def __init__(self, ring: Ring, terms: dict, order: int | None = None):
        self.ring = ring
        self.order = order
        if order is not None:
            cut = ring.trunc_key(order)
            if cut >= 0 and any(k >= cut for k in terms):
                terms = {k: c for k, c in terms.items() if k < cut}
        self.terms = terms

    @classmethod
    def _trusted(cls, ring: Ring, terms: dict, order: int | None) -> "Poly":
        """Construct without the truncation scan (terms already respect order)."""
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p.order = order
        return p

    # -- basic protocol ------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError("operands live in different rings")
            return other
        return self.ring.const(other)

    def _order(self, other: "Poly") -> int | None:
        a, b = self.order, other.order
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other):
        other = self._coerce(other)
        if not other.terms:
            return self if other.order is None else Poly(self.ring, self.terms, self._order(other))
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k)
            if v is None:
                terms[k] = c
            else:
                v += c
                if v:
                    terms[k] = v
                else:
                    del terms[k]
        if self.order == other.order:
            return Poly._trusted(self.ring, terms, self.order)
        return Poly(self.ring, terms, self._order(other))

    __radd__ = __add__

    def __neg__(self):
        return Poly._trusted(self.ring, {k: -c for k, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Poly", order: int | None = None) -> "Poly":
        """Product, truncated at lambda-degree ``order`` if given."""
        out = self._order(other)
        if order is not None:
            out = order if out is None else min(out, order)
        terms = kernels.mul(self.ring, self.terms, other.terms, out)
        return Poly._trusted(self.ring, terms, out)

    def scale(self, value) -> "Poly":
        re, im = _split(value)
        if not im:
            if not re:
                return Poly(self.ring, {}, self.order)
            return Poly._trusted(self.ring, {k: c * re for k, c in self.terms.items()}, self.order)
        return self * self.ring.const(value)

    def __truediv__(self, value):
        if isinstance(value, Poly):
            raise TypeError("division by a polynomial is not supported; use div_lam")
        re, im = _split(value)
        n = re * re + im * im
        if not n:
            raise ZeroDivisionError("division by zero")
        return self.scale((re / n, -im / n))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = Poly(self.ring, {self.ring.one_key: Q(1)}, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        tail = f" + O(l^{self.order})" if self.order is not None else ""
        return f"Poly({self}{tail})"

    def __str__(self):
        return format_poly(self)

    # -- structure -----------------------------------------------------------
    def truncate(self, order: int | None) -> "Poly":
        if order is None:
            return self
        if self.order is not None and self.order <= order:
            return self
        return Poly(self.ring, self.terms, order)

    def exact(self) -> "Poly":
        """Forget the truncation order (keeps the stored terms)."""
        return Poly(self.ring, self.terms)

    def variables(self) -> list[int]:
        """Indices of generators that occur."""
        acc = 0
        for k in self.terms:
            acc |= k
        m = self.ring.field_mask
        return [v for v, s in enumerate(self.ring.shifts) if (acc >> s) & m]

    def diff(self, var: int | str) -> "Poly":
        ring = self.ring
        if isinstance(var, str):
            var = ring.index[var]
        s = ring.shifts[var]
        m = ring.field_mask
        unit = 1 << s
        terms = {}
        for k, c in self.terms.items():
            e = (k >> s) & m
            if e:
                terms[k - unit] = c * e
        return Poly(ring, terms, self.order)

    def degree(self, var: int | str) -> int:
        ring = self.ring
        if isinstance(var, str):
            var = ring.index[var]
        s = ring.shifts[var]
        m = ring.field_mask
        return max(((k >> s) & m for k in self.terms), default=0)

    def lam_degrees(self) -> tuple[int, int] | None:
        """(min, max) lambda degree of the stored terms."""
        if not self.terms:
            return None
        degs = [self.ring.lam_degree(k) for k in self.terms]
        return min(degs), max(degs)

    def lam_coeff(self, k: int) -> "Poly":
        """Coefficient of lambda**k (a lambda-free polynomial)."""
        ring = self.ring
        shift = k * ring.lam_unit
        terms = {key - shift: c for key, c in self.terms.items()
                 if ring.lam_degree(key) == k}
        return Poly(ring, terms)

    def hbar_coeff(self, k: int) -> "Poly":
        ring = self.ring
        s, m = ring.hbar_shift, ring.field_mask
        terms = {key - (k << s): c for key, c in self.terms.items()
                 if (key >> s) & m == k}
        return Poly(ring, terms, self.order)

    def div_lam(self, k: int = 1) -> "Poly":
        """Multiply by lambda**-k.  The truncation order drops by k."""
        shift = k * self.ring.lam_unit
        terms = {key - shift: c for key, c in self.terms.items()}
        for key in terms:
            if key < 0 or key & self.ring.guard:
                raise OverflowError("lambda exponent out of range")
        order = None if self.order is None else self.order - k
        return Poly(self.ring, terms, order)

    def mul_lam(self, k: int = 1) -> "Poly":
        return self.div_lam(-k)

    def set_lam(self, value) -> "Poly":
        """Substitute a rational number for lambda (exact)."""
        ring = self.ring
        terms: dict[int, object] = {}
        v = Q(value)
        for key, c in self.terms.items():
            d = ring.lam_degree(key)
            new = key - d * ring.lam_unit
            coeff = c * v ** d if d >= 0 else c / v ** (-d)
            acc = terms.get(new, 0) + coeff
            if acc:
                terms[new] = acc
            else:
                terms.pop(new, None)
        return Poly(ring, terms)

    def constant_term(self):
        """Complex value of the lambda- and generator-free part."""
        ring = self.ring
        re = self.terms.get(ring.one_key, 0)
        im = self.terms.get(ring.one_key + 1, 0)
        return complex(re, im)

    def is_constant(self) -> bool:
        ring = self.ring
        return all(k in (ring.one_key, ring.one_key + 1) for k in self.terms)

    def star(self) -> "Poly":
        """Complex conjugation: i -> -i, generators -> their partners.

        lambda and hbar are real.
        """
        ring = self.ring
        conj = ring.conj
        shifts = ring.shifts
        m = ring.field_mask
        terms = {}
        for key, c in self.terms.items():
            new = key
            sign = -1 if key & 1 else 1
            for v, s in enumerate(shifts):
                e = (key >> s) & m
                if not e:
                    continue
                try:
                    w, sg = conj[v]
                except KeyError:
                    raise ValueError(
                        f"generator {ring.names[v]!r} has no conjugate partner"
                    ) from None
                if w != v:
                    new += (e << shifts[w]) - (e << s)
                if sg < 0 and e & 1:
                    sign = -sign
            terms[new] = c if sign > 0 else -c
        return Poly(ring, terms, self.order)

    def evaluate(self, values: Mapping[str, complex], lam: complex = 0.0,
                 hbar: complex = 0.0) -> complex:
        """Numerical value in double precision."""
        ring = self.ring
        vals = [complex(values.get(n, 0.0)) for n in ring.names]
        total = 0j
        for key, c in self.terms.items():
            exps, ld, hd, ipow = ring.decode(key)
            t = complex(float(c))
            if ipow:
                t *= 1j
            for v, e in zip(vals, exps):
                if e:
                    t *= v ** e
            if ld:
                t *= lam ** ld
            if hd:
                t *= hbar ** hd
            total += t
        return total

    def subs(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Substitute polynomials (same ring) for generators."""
        ring = self.ring
        powers: dict[tuple[int, int], Poly] = {}
        result = Poly(ring, {}, self.order)
        for key, c in self.terms.items():
            exps, ld, hd, ipow = ring.decode(key)
            base = ring.one_key + ld * ring.lam_unit + (hd << ring.hbar_shift) + ipow
            rest = {}
            for v, e in enumerate(exps):
                if not e:
                    continue
                name = ring.names[v]
                if name in mapping:
                    rest[v] = e
                else:
                    base += e << ring.shifts[v]
            term = Poly(ring, {base: c}, self.order)
            for v, e in rest.items():
                p = powers.get((v, e))
                if p is None:
                    p = ring.coerce(mapping[ring.names[v]]) ** e
                    powers[(v, e)] = p
                term = term * p
            result = result + term
        return result


def _fmt_rational(q) -> str:
    q = Q(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def format_poly(p: Poly) -> str:
    """Canonical expanded form, e.g. ``2*l*p0*p3 + 2*l*p3^2``."""
    if not p.terms:
        return "0"
    ring = p.ring
    groups: dict[int, list] = {}
    for key, c in p.terms.items():
        groups.setdefault(key & ~1, []).append((key & 1, c))

    def sort_key(base):
        exps, lam, hb, _ = ring.decode(base)
        return (lam, hb, -sum(exps), tuple(-e for e in exps))

    pieces = []
    for base in sorted(groups, key=sort_key):
        exps, lam, hb, _ = ring.decode(base)
        parts = dict(groups[base])
        re, im = parts.get(0, 0), parts.get(1, 0)
        factors = []
        if lam == 1:
            factors.append(LAM)
        elif lam:
            factors.append(f"{LAM}^{lam}" if lam > 0 else f"{LAM}^({lam})")
        if hb == 1:
            factors.append(HBAR)
        elif hb:
            factors.append(f"{HBAR}^{hb}")
        for n, e in zip(ring.names, exps):
            if e == 1:
                factors.append(n)
            elif e:
                factors.append(f"{n}^{e}")
        mono = "*".join(factors)
        if re and im:
            coeff = f"({_fmt_rational(re)}{'+' if im > 0 else '-'}{_fmt_rational(abs(im))}*i)"
            sign = "+"
        else:
            val = re or im
            sign = "-" if val < 0 else "+"
            mag = _fmt_rational(abs(val))
            if im:
                coeff = "i" if mag == "1" else f"{mag}*i"
            else:
                coeff = "" if (mag == "1" and mono) else mag
        body = "*".join(x for x in (coeff, mono) if x)
        pieces.append((sign, body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
