"""A small infix grammar for polynomials over a ring.

Atoms are generator names, extra named quantities (e.g. ``w0``), integer
literals, ``i`` and ``l`` (the deformation parameter, also ``lambda`` or the
Greek letter).  Operators: ``+ - * ^`` (or ``**``) with a nonnegative integer exponent, and
``/`` by a nonzero rational constant.  No function calls.

Python's own ``ast`` does the tokenizing and precedence; only the node types
listed above are accepted.
"""
from __future__ import annotations

import ast
import math
import re
from collections.abc import Mapping
from fractions import Fraction

from .algebra.ring import Poly, Ring


class ParseError(ValueError):
    pass


_LAMBDA = re.compile(r"\blambda\b|\u03bb")
_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_poly(text: str, ring: Ring, names: Mapping[str, Poly] | None = None) -> Poly:
    """Parse ``text`` into a polynomial of ``ring``; ``names`` adds named quantities."""
    src = _LAMBDA.sub("l", text.replace("^", "**")).strip()
    if not src:
        raise ParseError("empty expression")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    env = dict(names or {})
    return _Evaluator(ring, env, text).visit(tree.body)


class _Evaluator:
    def __init__(self, ring: Ring, names: Mapping[str, Poly], text: str):
        self.ring = ring
        self.names = names
        self.text = text

    def fail(self, msg: str):
        raise ParseError(f"{msg} in {self.text!r}")

    def visit(self, node) -> Poly:
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            return self.binop(node)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = self.visit(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                self.fail(f"unsupported literal {node.value!r}")
            return self.ring.const(node.value)
        if isinstance(node, ast.Name):
            return self.name(node.id)
        self.fail(f"unsupported syntax {type(node).__name__}")

    def name(self, ident: str) -> Poly:
        if ident in self.names:
            return self.names[ident]
        if ident in self.ring.names:
            return self.ring.gen(ident)
        if ident == "i":
            return self.ring.I
        if ident in ("l", "lam"):
            return self.ring.lam
        self.fail(f"unknown name {ident!r}")

    def constant(self, node) -> Fraction | None:
        """Value of a constant rational subexpression, or None."""
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return Fraction(node.value)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self.constant(node.operand)
            return None if v is None else (-v if isinstance(node.op, ast.USub) else v)
        if isinstance(node, ast.BinOp) and isinstance(node.op, (ast.Div, ast.Mult)):
            a, b = self.constant(node.left), self.constant(node.right)
            if a is None or b is None:
                return None
            if isinstance(node.op, ast.Mult):
                return a * b
            return a / b if b else None
        return None

    def binop(self, node: ast.BinOp) -> Poly:
        op = node.op
        if isinstance(op, ast.Pow):
            exp = self.constant(node.right)
            if exp is None or exp.denominator != 1 or exp < 0:
                self.fail("exponents must be nonnegative integers")
            return self.visit(node.left) ** int(exp)
        if isinstance(op, ast.Div):
            den = self.constant(node.right)
            if den is None:
                self.fail("division is only by rational constants")
            if den == 0:
                self.fail("division by zero")
            return self.visit(node.left) * self.ring.const(1 / den)
        a, b = self.visit(node.left), self.visit(node.right)
        if isinstance(op, ast.Add):
            return a + b
        if isinstance(op, ast.Sub):
            return a - b
        return a * b


def factor_content(p: Poly) -> str:
    """``p`` with its monomial content pulled out, e.g. ``2*l*p3*(p0 + p3)``.

    The content is the gcd of the exponents (including those of l) times
    the gcd of the rational coefficients when they are all real or all
    imaginary.  Falls back to the expanded form when there is nothing to pull.
    """
    if p.is_zero() or len(p) == 1:
        return str(p)
    ring = p.ring
    decoded = [(ring.decode(k), c) for k, c in p.terms.items()]
    nvars = len(decoded[0][0][0])
    mins = [min(d[0][0][v] for d in decoded) for v in range(nvars)]
    lmin = min(d[0][1] for d in decoded)
    hmin = min(d[0][2] for d in decoded)
    ipows = {d[0][3] for d in decoded}
    coeffs = [Fraction(int(c.numerator), int(c.denominator)) for _, c in decoded]
    scale = Fraction(math.gcd(*(c.numerator for c in coeffs)),
                     math.lcm(*(c.denominator for c in coeffs)))
    if all(c < 0 for c in coeffs):
        scale = -scale
    ipow = ipows.pop() if len(ipows) == 1 else 0
    content = ring.const(scale) * (ring.I if ipow else ring.one())
    content = content * ring.lam ** lmin if lmin >= 0 else content
    content = content * ring.hbar ** hmin
    for v, e in enumerate(mins):
        if e:
            content = content * ring.gen(ring.names[v]) ** e
    if lmin < 0:
        content = content.div_lam(-lmin)
    if content == ring.one():
        return str(p)
    rest = _exact_divide(p, content)
    if rest is None:
        return str(p)
    return f"{content}*({rest})"


def _exact_divide(p: Poly, content: Poly) -> Poly | None:
    """p / content for a monomial content, or None if the division is not exact."""
    ring = p.ring
    ((ckey, cval),) = content.terms.items()
    cexps, clam, chb, cip = ring.decode(ckey)
    out = ring.zero()
    cc = Fraction(int(cval.numerator), int(cval.denominator))
    for key, val in p.terms.items():
        exps, lam, hb, ip = ring.decode(key)
        diff = [a - b for a, b in zip(exps, cexps)]
        if min(diff) < 0 or hb < chb:
            return None
        v = Fraction(int(val.numerator), int(val.denominator)) / cc
        term = ring.const(v)
        if ip != cip:
            term = term * (ring.I if ip else -ring.I)
        for name, e in zip(ring.names, diff):
            if e:
                term = term * ring.gen(name) ** e
        term = term * ring.hbar ** (hb - chb)
        shift = lam - clam
        term = term * ring.lam ** shift if shift >= 0 else term.div_lam(-shift)
        out = out + term
    return out
