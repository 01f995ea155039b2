"""Spinless particle: deformed brackets on positions x and momenta p.

Phase space is spanned by real x0..x3 and p0..p3, arranged in the
hermitian matrices

    x  = [[-x0-x3, -x1+i x2], [-x1-i x2, -x0+x3]]
    pt = [[-p0+p3, p1-i p2], [p1+i p2, -p0-p3]].

The x-p bracket contains the matrix series

    f = 1 + i M - sum_{n>=1} c_n M^(2n),   M = l x pt,   c_n = (2n-3)!!/(2n)!!

which is cos(lJ) + i sin(lJ) with sin(lJ) = M; J itself is never formed.
Everything lives in the ring truncated at l^N.  Checks that consume powers of
l are compared modulo l^(N-2) and say so.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra.matrix import Matrix, hermitian_p_layout, hermitian_x_layout, identity, kron
from .algebra.ring import Poly, Ring
from .algebra.series import series_sqrt_inv
from .deformed import OBSERVABLE_RELATIONS, P_NAMES, base_environment, structure_from_relations
from .poisson import PoissonStructure, RelationSpec, jacobi_sweep, relation_residual, relation_rhs
from .report import bool_check, nonzero_check, zero_check

X_NAMES = ("x0", "x1", "x2", "x3")
XP_NAMES = X_NAMES + P_NAMES
ETA = (-1, 1, 1, 1)
DEFAULT_ORDER = 8
MIN_ORDER = 3


def xp_ring() -> Ring:
    return Ring(XP_NAMES, {n: (n, 1) for n in XP_NAMES}, name="phase space")


def f_coefficient(n: int) -> Fraction:
    """c_n = (2n-3)!!/(2n)!! with (-1)!! = 1."""
    num = 1
    for k in range(1, 2 * n - 2, 2):
        num *= k
    den = 1
    for k in range(2, 2 * n + 1, 2):
        den *= k
    return Fraction(num, den)


def f_series(x: Matrix, p: Matrix, order: int, coefficients=None) -> Matrix:
    """The f matrix modulo l^order.  ``coefficients`` overrides c_n (for controls)."""
    ring = x.ring
    m = x.matmul(p, order) * ring.lam
    f = identity(ring, 2).truncate(order) + m * ring.I
    m2 = m.matmul(m, order)
    power = m2
    n = 1
    while 2 * n < order:
        c = f_coefficient(n) if coefficients is None else coefficients(n)
        f = f - power * ring.const(c)
        power = power.matmul(m2, order)
        n += 1
    return f.truncate(order)


def _lam_outer(env, a: str, b: str, sign) -> Matrix:
    ring = env["one"].ring
    one = env["one"]
    return kron(env[a], one) * kron(one, env[b]) * (ring.lam * sign)


def _xp_extra(env) -> Matrix:
    one = env["one"]
    return -(env["Pi"] * (kron(env["fd"], one) + kron(one, env["f"])))


XX_RELATION = RelationSpec("xx", "x", "x", "r", "rd", "r", "rd",
                           anchor="position-position quadratic bracket")
XP_RELATION = RelationSpec("xp", "x", "p", "r", "rd", "r", "rd", extra=_xp_extra,
                           anchor="position-momentum bracket with the f term")
PP_RELATION = OBSERVABLE_RELATIONS[0]
PHASE_RELATIONS = (XX_RELATION, XP_RELATION, PP_RELATION)


def _f_pairs(env, sign_fd, sign_f, left: str) -> Matrix:
    # (sign_fd f1^dagger + sign_f f2) left1 Pi
    one = env["one"]
    fsum = kron(env["fd"], one) * sign_fd + kron(one, env["f"]) * sign_f
    return fsum * kron(env[left], one) * env["Pi"]


F_RELATIONS = (
    RelationSpec("pf", "p", "f", "rd", "r", "rd", "rd",
                 extra=lambda env: _lam_outer(env, "p", "f", env["one"].ring.I),
                 anchor="momentum-f bracket"),
    RelationSpec("xf", "x", "f", "rd", "rd", "r", "rd",
                 extra=lambda env: _lam_outer(env, "x", "f", -env["one"].ring.I),
                 anchor="position-f bracket"),
    RelationSpec("ff", "f", "f", "rd", "r", "r", "rd", anchor="f-f bracket"),
    RelationSpec("ffd", "f", "fd", "r", "r", "r", "r", anchor="f-f^dagger bracket"),
)

GAMMA_X_RELATION = RelationSpec("xG", "x", "G", "rd", "rd", "r", "rd",
                                anchor="position-gamma bracket")

APPENDIX_RELATIONS = (
    RelationSpec("psin", "p", "sin", "rd", "rd", "rd", "rd",
                 extra=lambda env: _f_pairs(env, 1, 1, "p") * env["one"].ring.lam,
                 anchor="momentum bracket with sin(lJ)"),
    RelationSpec("pcos", "p", "cos", "rd", "rd", "rd", "rd",
                 extra=lambda env: _f_pairs(env, 1, -1, "p") * (-env["one"].ring.I * env["one"].ring.lam),
                 anchor="momentum bracket with cos(lJ)"),
)


def _pcos2_extra(env) -> Matrix:
    one = env["one"]
    ring = one.ring
    fsum = kron(env["fd"], one) + kron(one, env["f"])
    s2 = kron(one, env["sin"])
    sd1 = kron(env["sind"], one)
    return -(s2 * fsum + fsum * sd1) * kron(env["p"], one) * env["Pi"] * ring.lam


PCOS2_RELATION = RelationSpec("pcos2", "p", "cos2", "rd", "rd", "rd", "rd", extra=_pcos2_extra,
                              anchor="momentum bracket with cos^2(lJ)")


class Realization:
    """Phase-space structure together with f, sin, cos and gamma at order N."""

    def __init__(self, order: int = DEFAULT_ORDER, coefficients=None, *,
                 ring: Ring | None = None, matrices=None, families=None, relations=()):
        if order < MIN_ORDER:
            raise ValueError(f"truncation order must be at least {MIN_ORDER}, got {order}")
        self.order = order
        self.checked_order = order - 2
        ring = self.ring = ring or xp_ring()
        env = self.env = base_environment(ring)
        x = hermitian_x_layout(ring, X_NAMES)
        p = hermitian_p_layout(ring, P_NAMES)
        f = f_series(x, p, order, coefficients)
        sin = x.matmul(p, order) * ring.lam
        cos = f - sin * ring.I
        env.update(x=x, p=p, f=f, fd=f.dagger(), sin=sin, sind=sin.dagger(), cos=cos,
                   cosd=cos.dagger(), cos2=cos.matmul(cos, order))
        env.update(matrices or {})
        self.x, self.p, self.f = x, p, f
        fams = {"x": (("x",), X_NAMES), "p": (("p",), P_NAMES)}
        fams.update(families or {})
        self.structure = structure_from_relations(
            ring, env, fams, PHASE_RELATIONS + tuple(relations), order,
            "deformed phase space", verify=False)
        self.det_f = f.det2().truncate(order)
        gamma = f * series_sqrt_inv(self.det_f, order)
        self.gamma = gamma.truncate(order)
        # gamma-bar = (gamma^dagger)^{-1} = adj(gamma^dagger) on det gamma = 1
        self.gamma_bar = self.gamma.dagger().adjugate2()
        env.update(G=self.gamma, Gb=self.gamma_bar)

    def bracket(self, a, b) -> Poly:
        return self.structure.bracket(a, b)

    def trunc(self, value):
        return value.truncate(self.checked_order)


def build_xp_structure(order: int = DEFAULT_ORDER) -> PoissonStructure:
    return Realization(order).structure


def _relation_check(real: Realization, rel: RelationSpec, prefix: str) -> object:
    res = real.trunc(relation_residual(rel, real.structure, real.env))
    return zero_check(f"{prefix}.{rel.label}", rel.anchor, res, order=real.checked_order)


def structure_checks(real: Realization) -> list:
    out = [_relation_check(real, rel, "spinless.relation") for rel in PHASE_RELATIONS]
    residuals = [real.trunc(res) for _, res in jacobi_sweep(real.structure, XP_NAMES, order=real.order)]
    out.append(zero_check("spinless.jacobi", "Jacobi identity on positions and momenta",
                          residuals, order=real.checked_order,
                          detail=f"{len(residuals)} generator triples"))
    return out


def canonical_limit_check(real: Realization) -> list:
    """At l = 0: {x_mu, p_nu} = eta_mu_nu and every other bracket vanishes."""
    s = real.structure
    diffs = []
    for a, b in itertools.combinations(XP_NAMES, 2):
        expected = 0
        if a[0] == "x" and b[0] == "p" and a[1] == b[1]:
            expected = ETA[int(a[1])]
        diffs.append(s.entry(a, b).lam_coeff(0) - real.ring.const(expected))
    return [zero_check("spinless.canonical-limit", "canonical brackets at l = 0", diffs,
                       detail="{x_mu, p_nu} = eta_mu_nu, all others zero")]


def unit_f_control(order: int = 4) -> list:
    """With f replaced by the unit matrix the Jacobi identity fails."""
    real = Realization(order, coefficients=lambda n: 0)
    ring = real.ring
    one = identity(ring, 2)
    real.env.update(f=one, fd=one)
    s = structure_from_relations(
        ring, real.env, {"x": (("x",), X_NAMES), "p": (("p",), P_NAMES)},
        PHASE_RELATIONS, order, "unit f", verify=False)
    residuals = [res.truncate(order - 2) for _, res in jacobi_sweep(s, order=order)]
    return [nonzero_check("spinless.control.unit-f", "Jacobi fails when f is the unit matrix",
                          residuals, order=order - 2)]


def f_bracket_checks(real: Realization) -> list:
    out = [_relation_check(real, rel, "spinless.f") for rel in F_RELATIONS]
    s = real.structure
    ring = real.ring
    det_f = real.det_f
    il = ring.I * ring.lam
    res_x, res_p, res_f = [], [], []
    for e in real.x:
        res_x.append(real.trunc(s.bracket(e, det_f) + il * 2 * e.mul(det_f, real.order)))
    for e in real.p:
        res_p.append(real.trunc(s.bracket(e, det_f) - il * 2 * e.mul(det_f, real.order)))
    for e in list(real.f) + list(real.env["fd"]):
        res_f.append(real.trunc(s.bracket(e, det_f)))
    out += [
        zero_check("spinless.f.x-detf", "{x, det f} = -2 i l x det f", res_x, order=real.checked_order),
        zero_check("spinless.f.p-detf", "{p, det f} = 2 i l p det f", res_p, order=real.checked_order),
        zero_check("spinless.f.f-detf", "det f commutes with f and f^dagger", res_f,
                   order=real.checked_order),
    ]
    return out


def series_checks(real: Realization) -> list:
    ring = real.ring
    env = real.env
    n = real.order
    one = identity(ring, 2)
    m = env["sin"]
    pyth = env["sin"].matmul(env["sin"], n) + env["cos2"] - one
    out = [
        zero_check("spinless.series.pythagoras", "sin^2 + cos^2 = 1", pyth.truncate(n), order=n),
        zero_check("spinless.series.limit", "f = 1 at l = 0", real.f.lam_coeff(0) - one),
        zero_check("spinless.series.first-order", "l^1 part of f is i x pt",
                   real.f.lam_coeff(1) - (real.x * real.p) * ring.I),
    ]
    if n > 4:
        m4 = m.matmul(m, n).matmul(m, n).matmul(m, n)
        out.append(zero_check(
            "spinless.series.quartic", "coefficient of M^4 is -1/8",
            real.f.lam_coeff(4) + m4.lam_coeff(4) * ring.const(Fraction(1, 8))))
    return out


def gamma_checks(real: Realization) -> list:
    ring = real.ring
    G = real.gamma
    xp = real.x * real.p
    traceless = xp - identity(ring, 2) * (xp.trace() / 2)
    out = [
        zero_check("spinless.gamma.det", "det gamma = 1",
                   (G.det2() - ring.one()).truncate(real.order), order=real.order),
        zero_check("spinless.gamma.first-order", "l^1 part of gamma is i times traceless x pt",
                   G.lam_coeff(1) - traceless * ring.I),
    ]
    for rel in OBSERVABLE_RELATIONS + (GAMMA_X_RELATION,):
        out.append(_relation_check(real, rel, "spinless.gamma"))
    return out


def appendix_checks(real: Realization) -> list:
    env = real.env
    n = real.order
    ring = real.ring
    p = env["p"]
    one = env["one"]
    out = [
        zero_check("spinless.appendix.p-sin", "pt sin(lJ) = sin(lJ^dagger) pt",
                   p.matmul(env["sin"], n) - env["sind"].matmul(p, n), order=n),
        zero_check("spinless.appendix.p-cos", "pt cos(lJ) = cos(lJ^dagger) pt",
                   (p.matmul(env["cos"], n) - env["cosd"].matmul(p, n)).truncate(n), order=n),
    ]
    for rel in APPENDIX_RELATIONS + (PCOS2_RELATION,):
        out.append(_relation_check(real, rel, "spinless.appendix"))
    # the cos^2 bracket recomposed from the cos bracket by the Leibniz rule
    b = relation_rhs(APPENDIX_RELATIONS[1], env, n)
    c2 = kron(one, env["cos"])
    lhs = b.matmul(c2, n) + c2.matmul(b, n)
    out.append(zero_check("spinless.appendix.cos2-from-cos",
                          "cos^2 bracket follows from the cos bracket",
                          real.trunc(lhs - relation_rhs(PCOS2_RELATION, env, n)),
                          order=real.checked_order))
    fd1, f2 = kron(env["fd"], one), kron(one, env["f"])
    s2, sd1 = kron(one, env["sin"]), kron(env["sind"], one)
    c2, cd1 = kron(one, env["cos"]), kron(env["cosd"], one)
    i = ring.I
    left = s2.matmul(fd1 + f2, n) + (fd1 + f2).matmul(sd1, n)
    right = (c2.matmul(fd1 - f2, n) + (fd1 - f2).matmul(cd1, n)) * i
    out.append(zero_check("spinless.appendix.rearrangement",
                          "sin/cos rearrangement of the f sums", (left - right).truncate(n), order=n))
    # i (sin bracket) + (cos bracket) reassembles the f bracket
    rhs = {rel.label: relation_rhs(rel, env, n) for rel in APPENDIX_RELATIONS}
    pf = relation_rhs(F_RELATIONS[0], env, n)
    out.append(zero_check("spinless.appendix.assemble-f",
                          "f bracket assembled from the sin and cos brackets",
                          (rhs["pcos"] + rhs["psin"] * i - pf).truncate(n), order=n))
    return out


def spin_zero_checks(real: Realization) -> list:
    ring = real.ring
    env = real.env
    n = real.order
    p, f = env["p"], env["f"]
    fbar = env["cosd"] + env["sind"] * ring.I
    det_f = real.det_f
    out = [
        zero_check("spinless.spin-zero.p-f", "pt exp(i l J) = exp(i l J^dagger) pt",
                   (p.matmul(f, n) - fbar.matmul(p, n)).truncate(n), order=n),
        zero_check("spinless.spin-zero.f-dagger-inverse", "f^dagger exp(i l J^dagger) = 1",
                   (env["fd"].matmul(fbar, n) - identity(ring, 2)).truncate(n), order=n),
        zero_check("spinless.spin-zero.f-preserves-p", "f^dagger pt f = pt",
                   (env["fd"].matmul(p, n).matmul(f, n) - p).truncate(n), order=n),
        nonzero_check("spinless.spin-zero.literal-f-dagger",
                      "pt f = f^dagger pt read literally does not hold",
                      (p.matmul(f, n) - env["fd"].matmul(p, n)).truncate(n), order=n),
        zero_check("spinless.spin-zero.det-f-unitary", "det f times its conjugate is 1",
                   (det_f.mul(det_f.star(), n) - ring.one()).truncate(n), order=n,
                   detail="the square-root branch used when dividing by sqrt(det f)"),
    ]
    G = real.gamma
    raw = (G.dagger().matmul(p, n).matmul(G, n) - p).truncate(n)
    lam0 = raw.lam_coeff(0)
    out.append(zero_check("spinless.spin-zero.w-lambda0",
                          "gamma^dagger pt gamma - pt has no l^0 part", lam0))
    if lam0.is_zero():
        w = raw.div_lam(1) / 2
        out.append(zero_check("spinless.spin-zero.w", "Pauli-Lubanski matrix vanishes",
                              w.truncate(n - 1), order=n - 1))
        out.append(zero_check("spinless.spin-zero.det-w", "det w = 0",
                              w.det2().truncate(n - 1), order=n - 1))
    xp = real.x * real.p
    j = xp - identity(ring, 2) * (xp.trace() / 2)
    out.append(zero_check("spinless.spin-zero.orbital", "(i/2)(pt j - j^dagger pt) = 0 for orbital j",
                          (p * j - j.dagger() * p) * (ring.I / 2)))
    return out


def spinless_checks(order: int = DEFAULT_ORDER) -> list:
    real = Realization(order)
    out = [bool_check("spinless.order", "orders of the truncated verification", True,
                      detail=f"series to l^{order}, bracket identities modulo l^{real.checked_order}")]
    out += structure_checks(real)
    out += canonical_limit_check(real)
    out += unit_f_control(min(order, 4))
    out += series_checks(real)
    out += f_bracket_checks(real)
    out += gamma_checks(real)
    out += appendix_checks(real)
    out += spin_zero_checks(real)
    return out
