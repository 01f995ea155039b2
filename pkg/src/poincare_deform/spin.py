"""Spinning particle: the orbital gamma multiplied on the right by a spin matrix.

The spin matrix ``S`` (generators S11..S22, the gamma_s of the construction)
gets quadratic brackets with itself, with p and with x; its brackets with f
and gamma then follow from the Leibniz rule.  Only the holomorphic sector is
closed: the conjugate matrix ``Sb`` exists in the ring so that S^dagger =
adj(Sb) can be written down, but no bracket involving Sb is ever evaluated.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .algebra.matrix import Matrix, hermitian_p_layout, hermitian_x_layout, identity, kron
from .algebra.ring import Ring
from .algebra.series import exp_matrix
from .deformed import (
    OBSERVABLE_RELATIONS,
    P_NAMES,
    base_environment,
    dagger_adjugate_pairs,
    gen_matrix,
    relation_by_label,
)
from .poisson import RelationSpec, jacobi_sweep, relation_residual, relation_rhs
from .report import nonzero_check, zero_check
from .spinless import X_NAMES, XP_NAMES, Realization

S_NAMES = ("S11", "S12", "S21", "S22")
SB_NAMES = ("Sb11", "Sb12", "Sb21", "Sb22")
DEFAULT_ORDER = 6

SPIN_RELATIONS = (
    RelationSpec("SS", "S", "S", "rd", "r", "r", "rd", anchor="spin-spin bracket"),
    RelationSpec("pS", "p", "S", "rd", "r", "rd", "r", anchor="momentum-spin bracket"),
    RelationSpec("xS", "x", "S", "r", "rd", "r", "rd", anchor="position-spin bracket"),
)
# the same shape as gamma with gamma^dagger
ORBIT_SPIN_RELATIONS = (
    RelationSpec("GS", "G", "S", "r", "r", "r", "r", anchor="gamma-spin bracket"),
    RelationSpec("SG", "S", "G", "rd", "rd", "rd", "rd", anchor="spin-gamma bracket"),
    RelationSpec("fS", "f", "S", "r", "r", "r", "r", anchor="f-spin bracket"),
)


def spin_ring() -> Ring:
    conj = {n: (n, 1) for n in XP_NAMES}
    conj.update(dagger_adjugate_pairs(S_NAMES, SB_NAMES))
    return Ring(XP_NAMES + S_NAMES + SB_NAMES, conj, name="spinning particle")


class SpinRealization(Realization):
    def __init__(self, order: int = DEFAULT_ORDER):
        ring = spin_ring()
        S = gen_matrix(ring, S_NAMES)
        super().__init__(order, ring=ring, matrices={"S": S},
                         families={"S": (("S",), S_NAMES)}, relations=SPIN_RELATIONS)
        self.S = S
        self.env["GS"] = self.gamma.matmul(S, order)


def build_spin_structure(order: int = DEFAULT_ORDER):
    return SpinRealization(order).structure


def _check(real, rel, prefix):
    res = real.trunc(relation_residual(rel, real.structure, real.env))
    return zero_check(f"{prefix}.{rel.label}", rel.anchor, res, order=real.checked_order)


def structure_checks(real: SpinRealization) -> list:
    out = [_check(real, rel, "spin.relation") for rel in SPIN_RELATIONS]
    s = real.structure
    det_s = real.S.det2()
    res = [s.bracket(det_s, g) for g in (real.ring.gen(n) for n in XP_NAMES + S_NAMES)]
    out.append(zero_check("spin.casimir.detS", "det S commutes with x, p and S",
                          [real.trunc(r) for r in res], order=real.checked_order))
    triples = [res for (a, b, c), res in jacobi_sweep(s, XP_NAMES + S_NAMES, order=real.order)
               if any(n in S_NAMES for n in (a, b, c))]
    out.append(zero_check("spin.jacobi", "Jacobi identity with the spin generators",
                          [real.trunc(r) for r in triples], order=real.checked_order,
                          detail=f"{len(triples)} triples containing a spin generator"))
    return out


def monomial_lemma_checks(real: SpinRealization, max_power: int = 4) -> list:
    """{(x p)^n (x) S} has the gamma-spin shape for every n."""
    s = real.structure
    xp = real.x * real.p
    rel = RelationSpec("xpn", "M", "S", "r", "r", "r", "r")
    out = []
    power = identity(real.ring, 2)
    for n in range(1, max_power + 1):
        power = power * xp
        env = dict(real.env, M=power)
        res = relation_residual(rel, s, env)
        out.append(zero_check(f"spin.lemma.power{n}", f"(x p)^{n} against spin", res,
                              order=s.order))
    return out


def orbit_spin_checks(real: SpinRealization) -> list:
    out = [_check(real, rel, "spin.orbit") for rel in ORBIT_SPIN_RELATIONS]
    s = real.structure
    det_g = real.gamma.det2()
    for name, c in (("detf", real.det_f), ("detG", det_g)):
        out.append(zero_check(f"spin.orbit.{name}-S", f"{name} commutes with the spin",
                              [real.trunc(s.bracket(c, e)) for e in real.S],
                              order=real.checked_order))
    det_s = real.S.det2()
    out.append(zero_check("spin.orbit.detS-G", "det S commutes with gamma",
                          [real.trunc(s.bracket(det_s, e)) for e in real.gamma],
                          order=real.checked_order))
    return out


def product_checks(real: SpinRealization) -> list:
    """gamma S obeys the gamma-gamma and momentum-gamma relations."""
    out = []
    for label in ("GG", "pG"):
        rel = relation_by_label(OBSERVABLE_RELATIONS, label)
        rel = rel.with_selectors(label=f"product.{label}",
                                 left="GS" if rel.left == "G" else rel.left, right="GS")
        out.append(_check(real, rel, "spin"))
    out.append(product_structure_control())
    return out


def product_structure_control():
    """A spin commuting with gamma is not multiplicative (exact, generic matrices).

    With {G, S} = 0 the Leibniz rule gives
    {(G S)1, (G S)2} = G1 G2 {S1, S2} + {G1, G2} S1 S2.
    """
    ring = Ring(("G11", "G12", "G21", "G22") + S_NAMES, name="product control")
    env = base_environment(ring)
    G, S = gen_matrix(ring, ("G11", "G12", "G21", "G22")), gen_matrix(ring, S_NAMES)
    env.update(G=G, S=S)
    one = env["one"]
    gg_rel = relation_by_label(OBSERVABLE_RELATIONS, "GG")
    g12 = kron(G, one) * kron(one, G)
    s12 = kron(S, one) * kron(one, S)
    lhs = g12 * relation_rhs(SPIN_RELATIONS[0], env) + relation_rhs(gg_rel, env) * s12
    target = relation_rhs(gg_rel, dict(env, G=G * S))
    return nonzero_check("spin.control.product-structure",
                         "a spin commuting with gamma is not multiplicative", lhs - target)


def no_precession_checks(real: SpinRealization) -> list:
    s = real.structure
    det_p = real.p.det2()
    out = [zero_check("spin.no-precession", "spin commutes with the mass shell",
                      [s.bracket(e, det_p) for e in real.S], order=s.order)]
    out.append(nonzero_check("spin.nonzero.p", "spin does not commute with momentum",
                             s.bracket_matrix(real.p, real.S)))
    out.append(nonzero_check("spin.nonzero.x", "spin does not commute with position",
                             s.bracket_matrix(real.x, real.S)))
    return out


def _limit_ring() -> Ring:
    names = ("s11", "s12", "s21", "s22", "j11", "j12", "j21", "j22") + XP_NAMES
    return Ring(names, {n: (n, 1) for n in names}, name="spin limit")


def canonical_limit_checks(order: int = 4) -> list:
    """With gamma = exp(i l j) and S = exp(i l s) the relations leave s free at lowest order.

    {S1, gamma2} = -l^2 {s1, j2} + ..., so its right-hand side must start at
    l^3; {x1, S2} and {p1, S2} are i l {x1, s2}, i l {p1, s2} + ..., so
    theirs must start at l^2.
    """
    ring = _limit_ring()
    env = base_environment(ring)
    il = ring.I * ring.lam
    env["S"] = exp_matrix(gen_matrix(ring, ("s11", "s12", "s21", "s22")) * il, order)
    env["G"] = exp_matrix(gen_matrix(ring, ("j11", "j12", "j21", "j22")) * il, order)
    env["x"] = hermitian_x_layout(ring, X_NAMES)
    env["p"] = hermitian_p_layout(ring, P_NAMES)
    out = []
    for rel, top in ((ORBIT_SPIN_RELATIONS[1], 3), (SPIN_RELATIONS[2], 2), (SPIN_RELATIONS[1], 2)):
        rhs = relation_rhs(rel, env, order)
        out.append(zero_check(f"spin.limit.{rel.label}", f"{rel.anchor}: no canonical term",
                              [rhs.lam_coeff(k) for k in range(top)], order=top))
    return out


def _random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def spin_pauli_lubanski_check(order: int = 4, seed: int = 0) -> list:
    """det w with gamma -> gamma S is nonzero at a random rational point.

    S = exp(i l s) for a random traceless rational s; gamma comes from the
    spinless realization, so gamma^dagger p gamma = p and the spin alone
    feeds w.
    """
    rng = random.Random(seed)
    real = Realization(order)
    ring = real.ring
    a, b, c = (_random_rational(rng) + 1j * _random_rational(rng) for _ in range(3))
    s = Matrix(ring, [[ring.const(a), ring.const(b)], [ring.const(c), ring.const(-a)]])
    S = exp_matrix(s * (ring.I * ring.lam), order)
    G = real.gamma.matmul(S, order)
    p = real.p
    raw = (G.dagger().matmul(p, order).matmul(G, order) - p).truncate(order)
    point = {n: ring.const(_random_rational(rng)) for n in XP_NAMES}
    raw = raw.subs(point)
    w = raw.div_lam(1) / 2
    det_w = w.det2().truncate(order - 1)
    return [
        zero_check("spin.w.lambda0", "no l^0 term before dividing by l", raw.lam_coeff(0)),
        nonzero_check("spin.w.det", "det w is nonzero with spin", det_w, order=order - 1,
                      detail=f"random rational point, seed {seed}"),
    ]


def spin_checks(order: int = DEFAULT_ORDER, seed: int = 0) -> list:
    real = SpinRealization(order)
    out = structure_checks(real)
    out += monomial_lemma_checks(real)
    out += orbit_spin_checks(real)
    out += product_checks(real)
    out += no_precession_checks(real)
    out += canonical_limit_checks()
    out += spin_pauli_lubanski_check(min(order, 4), seed)
    return out
