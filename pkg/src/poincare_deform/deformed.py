"""The deformed Poincare algebra on momenta p and Lorentz matrices gamma, gamma-bar.

Generators: real momenta ``p0..p3`` arranged in the hermitian matrix

    pt = [[-p0+p3, p1-i p2], [p1+i p2, -p0-p3]],    det pt = p0^2 - |p|^2,

and two 2x2 matrices of complex generators ``G11..G22`` (gamma) and
``Gb11..Gb22`` (gamma-bar).  Complex conjugation realizes gamma^dagger =
adj(gamma-bar), i.e. gamma^dagger = gamma-bar^{-1} on the unimodular surface.

The brackets are quadratic, of the shape handled by
:class:`~poincare_deform.poisson.RelationSpec`, with the constant matrix

    r = (i l / 2) [[1,0,0,0], [0,-1,0,0], [0,4,-1,0], [0,0,0,1]]

(``l`` is the deformation parameter).
"""
from __future__ import annotations

import itertools
from collections.abc import Mapping, Sequence

from .algebra.matrix import (
    Matrix,
    components_from_layout,
    hermitian_p_layout,
    identity,
    kron,
    swap,
)
from .algebra.reduce import UnimodularReducer
from .algebra.ring import Poly, Ring
from .poisson import (
    PoissonStructure,
    RelationSpec,
    StructureError,
    derive_table,
    jacobi_sweep,
    relation_residual,
    relation_rhs,
    swap_bracket,
)
from .report import nonzero_check, zero_check

P_NAMES = ("p0", "p1", "p2", "p3")
G_NAMES = ("G11", "G12", "G21", "G22")
GB_NAMES = ("Gb11", "Gb12", "Gb21", "Gb22")
OBSERVABLE_NAMES = P_NAMES + G_NAMES + GB_NAMES

# Levi-Civita on 1..3
EPS = {(1, 2, 3): 1, (2, 3, 1): 1, (3, 1, 2): 1,
       (1, 3, 2): -1, (3, 2, 1): -1, (2, 1, 3): -1}


def eps(i: int, j: int, k: int) -> int:
    return EPS.get((i, j, k), 0)


def real_pairs(names: Sequence[str]) -> dict[str, tuple[str, int]]:
    return {n: (n, 1) for n in names}


def dagger_adjugate_pairs(a: Sequence[str], b: Sequence[str]) -> dict[str, tuple[str, int]]:
    """Conjugation with A^dagger = adj(B) for generator matrices A, B."""
    a11, a12, a21, a22 = a
    b11, b12, b21, b22 = b
    pairs = {a11: (b22, 1), a12: (b21, -1), a21: (b12, -1), a22: (b11, 1)}
    pairs.update({v[0]: (k, v[1]) for k, v in list(pairs.items())})
    return pairs


def observable_ring(extra: Sequence[str] = (),
                    extra_conj: Mapping[str, tuple[str, int]] | None = None,
                    name: str = "observables") -> Ring:
    conj = real_pairs(P_NAMES)
    conj.update(dagger_adjugate_pairs(G_NAMES, GB_NAMES))
    if extra_conj:
        conj.update(extra_conj)
    return Ring(OBSERVABLE_NAMES + tuple(extra), conj, name=name)


def gen_matrix(ring: Ring, names: Sequence[str]) -> Matrix:
    a, b, c, d = (ring.gen(n) for n in names)
    return Matrix(ring, [[a, b], [c, d]])


def r_matrix(ring: Ring) -> Matrix:
    h = ring.lam * ring.I / 2
    rows = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 4, -1, 0], [0, 0, 0, 1]]
    return Matrix(ring, [[h * v for v in row] for row in rows])


def base_environment(ring: Ring) -> dict[str, Matrix]:
    r = r_matrix(ring)
    return {
        "r": r,
        "rd": r.dagger(),
        "Pi": swap(ring),
        "one": identity(ring, 2),
    }


def observable_environment(ring: Ring) -> dict[str, Matrix]:
    env = base_environment(ring)
    env["p"] = hermitian_p_layout(ring, P_NAMES)
    env["G"] = gen_matrix(ring, G_NAMES)
    env["Gb"] = gen_matrix(ring, GB_NAMES)
    return env


# The defining relations; the last three follow from the first four by
# hermitian conjugation and are checked independently.
OBSERVABLE_RELATIONS: tuple[RelationSpec, ...] = (
    RelationSpec("pp", "p", "p", "r", "rd", "rd", "r",
                 anchor="momentum-momentum quadratic bracket"),
    RelationSpec("GG", "G", "G", "rd", "r", "r", "rd",
                 anchor="gamma-gamma quadratic bracket"),
    RelationSpec("GGb", "G", "Gb", "r", "r", "r", "r",
                 anchor="gamma-gammabar quadratic bracket"),
    RelationSpec("pG", "p", "G", "rd", "r", "rd", "rd",
                 anchor="momentum-gamma quadratic bracket"),
    RelationSpec("GbGb", "Gb", "Gb", "r", "rd", "rd", "r",
                 anchor="gammabar-gammabar bracket (conjugate of gamma-gamma)"),
    RelationSpec("GbG", "Gb", "G", "rd", "rd", "rd", "rd",
                 anchor="gammabar-gamma bracket (conjugate of gamma-gammabar)"),
    RelationSpec("pGb", "p", "Gb", "r", "r", "rd", "r",
                 anchor="momentum-gammabar bracket (conjugate of momentum-gamma)"),
)


def relation_by_label(relations: Sequence[RelationSpec], label: str) -> RelationSpec:
    for rel in relations:
        if rel.label == label:
            return rel
    raise KeyError(label)


def structure_from_relations(
    ring: Ring,
    env: Mapping[str, Matrix],
    families: Mapping[str, tuple[Sequence[str], Sequence[str]]],
    relations: Sequence[RelationSpec],
    order: int | None = None,
    name: str = "",
    extra_table: Mapping[tuple[str, str], Poly] | None = None,
    verify: bool = True,
) -> PoissonStructure:
    """Bracket table solving the given matrix relations.

    ``families[f] = (matrix names in env, generator names)``.  Every
    relation must have ``left`` and ``right`` naming a family's only matrix
    (or a matrix of a multi-matrix family).  Pairs not covered by any
    relation bracket to zero unless given in ``extra_table``.
    """

    by_pair: dict[tuple[str, str], RelationSpec] = {}
    for rel in relations:
        by_pair.setdefault((rel.left, rel.right), rel)
    fam_mats = {f: ([env[m] for m in mats], names) for f, (mats, names) in families.items()}
    mat_names = {f: mats for f, (mats, _) in families.items()}
    cache: dict[tuple[str, str], Matrix] = {}

    def brackets(ia: int, ib: int, fa: str, fb: str):
        a, b = mat_names[fa][ia], mat_names[fb][ib]
        if (a, b) in cache:
            return cache[(a, b)]
        m = None
        if (a, b) in by_pair:
            m = relation_rhs(by_pair[(a, b)], env, order)
        elif (b, a) in by_pair:
            m = swap_bracket(relation_rhs(by_pair[(b, a)], env, order))
        cache[(a, b)] = m
        return m

    table = derive_table(fam_mats, brackets)
    if extra_table:
        table.update(extra_table)
    s = PoissonStructure(ring, table, order, name)
    if verify:
        for rel in relations:
            res = relation_residual(rel, s, env)
            if not res.is_zero():
                raise StructureError(f"table does not reproduce relation {rel.label!r}")
    return s


OBSERVABLE_FAMILIES = {
    "p": (("p",), P_NAMES),
    "G": (("G",), G_NAMES),
    "Gb": (("Gb",), GB_NAMES),
}


def build_structure(ring: Ring | None = None) -> PoissonStructure:
    """The deformed algebra on p, gamma, gamma-bar (exact, no truncation)."""
    ring = ring or observable_ring()
    env = observable_environment(ring)
    return structure_from_relations(ring, env, OBSERVABLE_FAMILIES,
                                    OBSERVABLE_RELATIONS, name="deformed Poincare")


class Algebra:
    """Bundle of the structure, its matrices and derived quantities."""

    def __init__(self, ring: Ring | None = None):
        self.ring = ring or observable_ring()
        self.env = observable_environment(self.ring)
        self.structure = build_structure(self.ring)
        self.reduce = UnimodularReducer(self.ring, [G_NAMES, GB_NAMES])
        self.p = self.env["p"]
        self.G = self.env["G"]
        self.Gb = self.env["Gb"]
        self.w = pauli_lubanski(self.p, self.G, self.Gb)
        self.env["w"] = self.w
        self.p_comp = [self.ring.gen(n) for n in P_NAMES]
        self.w_comp = components_from_layout(self.w, "p")

    @property
    def generators(self) -> list[Poly]:
        return [self.ring.gen(n) for n in OBSERVABLE_NAMES]

    def bracket(self, f, g) -> Poly:
        return self.structure.bracket(f, g)


def pauli_lubanski(p: Matrix, G: Matrix, Gb: Matrix) -> Matrix:
    """w = (adj(Gb) p G - p) / (2 l), with the adjugate standing in for Gb^{-1}."""
    return (Gb.adjugate2() * p * G - p).div_lam(1) / 2


# -- checks ------------------------------------------------------------------

def relation_checks(alg: Algebra) -> list:
    out = []
    for rel in OBSERVABLE_RELATIONS:
        res = relation_residual(rel, alg.structure, alg.env)
        out.append(zero_check(f"core.relation.{rel.label}", rel.anchor, res))
    # Perturbation control.  Swapping alpha and beta changes the right-hand
    # side by [r - r^dagger, A1 B2] = 2 i l [Pi, A1 B2], which vanishes when
    # A = B, so the control uses a mixed relation.
    pg = relation_by_label(OBSERVABLE_RELATIONS, "pG")
    bad = pg.with_selectors(alpha=pg.beta, beta=pg.alpha, label="pG-swapped")
    out.append(nonzero_check("core.relation.pG.swapped-control",
                             "perturbation control for the momentum-gamma bracket",
                             relation_residual(bad, alg.structure, alg.env)))
    return out


def r_identity_check(ring: Ring) -> list:
    env = base_environment(ring)
    r, rd, pi, one4 = env["r"], env["rd"], env["Pi"], identity(ring, 4)
    res = r - rd - (pi * 2 - one4) * (ring.I * ring.lam)
    return [zero_check("core.r.adjoint-invariant", "r - r^dagger = i l (2 Pi - 1)", res)]


def component_checks(alg: Algebra) -> list:
    ring = alg.ring
    p = alg.p_comp
    lam = ring.lam
    out = []
    s = alg.structure
    for i in range(1, 4):
        for j in range(1, 4):
            if i >= j:
                continue
            expected = ring.zero()
            for k in range(1, 4):
                e = eps(i, j, k)
                if e:
                    expected = expected + lam * 2 * e * p[k] * (p[0] + p[3])
            out.append(zero_check(f"core.component.p{i}p{j}",
                                  "spatial momentum brackets 2 l eps_ijk p_k (p0+p3)",
                                  s.bracket(p[i], p[j]) - expected))
    for i in range(1, 4):
        out.append(zero_check(f"core.component.p{i}p0", "p0 is central in the momentum sector",
                              s.bracket(p[i], p[0])))
    table_lam0 = [v.set_lam(0) for v in s.table().values()]
    out.append(zero_check("core.canonical-limit.table", "all brackets vanish at l = 0", table_lam0))
    return out


def jacobi_checks(alg: Algebra) -> list:
    failing = [(t, r) for t, r in jacobi_sweep(alg.structure) if r]
    n = len(list(_triples(len(OBSERVABLE_NAMES))))
    detail = f"{n} triples"
    res = failing[0][1] if failing else None
    chk = zero_check("core.jacobi.all", "Jacobi identity on p, gamma, gammabar", res, detail=detail)
    if failing:
        chk.detail += f"; first failing triple {failing[0][0]}"
    out = [chk]
    # mutation control: flip the sign of one table entry
    flipped = alg.structure.mapped(
        lambda pair, v: -v if pair == ("p1", "p2") else v, name="mutated")
    bad = [r for _, r in jacobi_sweep(flipped) if r]
    out.append(nonzero_check("core.jacobi.mutation-control",
                             "sign-flipped table violates Jacobi", bad[0] if bad else None))
    return out


def _triples(n):
    return itertools.combinations(range(n), 3)


def casimir_checks(alg: Algebra) -> list:
    s = alg.structure
    gens = alg.generators
    red = alg.reduce
    out = []
    det_p = alg.p.det2()
    out.append(zero_check("core.casimir.det-p", "det p is central",
                          [s.bracket(det_p, g) for g in gens]))
    out.append(zero_check("core.casimir.det-G", "det gamma is central",
                          [s.bracket(alg.G.det2(), g) for g in gens]))
    out.append(zero_check("core.casimir.det-Gb", "det gammabar is central",
                          [s.bracket(alg.Gb.det2(), g) for g in gens]))
    det_w = alg.w.det2()
    out.append(zero_check("core.casimir.det-w", "det w is central (on det gamma = det gammabar = 1)",
                          [red(s.bracket(det_w, g)) for g in gens]))
    p = alg.p_comp
    sq = p[1] ** 2 + p[2] ** 2 + p[3] ** 2
    out.append(zero_check("core.casimir.spatial-p2", "|p|^2 commutes with the momenta",
                          [s.bracket(sq, p[j]) for j in range(4)]))
    return out


W_RELATIONS: tuple[RelationSpec, ...] = (
    RelationSpec("wG", "w", "G", "rd", "r", "rd", "rd",
                 anchor="w-gamma bracket has the momentum-gamma form"),
    RelationSpec("wGb", "w", "Gb", "r", "r", "rd", "r",
                 anchor="w-gammabar bracket has the momentum-gammabar form"),
    RelationSpec("wp", "w", "p", "r", "rd", "rd", "r",
                 anchor="w-momentum bracket"),
    RelationSpec("ww", "w", "w", "r", "rd", "rd", "r",
                 extra=lambda env: -(env["Pi"] * (kron(env["w"], env["one"]) * kron(env["one"], env["p"])
                                                  - kron(env["one"], env["w"]) * kron(env["p"], env["one"])))
                 * env["r"].ring.I,
                 anchor="w-w bracket with the extra -i Pi (w1 p2 - w2 p1) term"),
)


def w_bracket_checks(alg: Algebra) -> list:
    s, red, env = alg.structure, alg.reduce, alg.env
    out = []
    for rel in W_RELATIONS:
        res = relation_residual(rel, s, env).map(red)
        out.append(zero_check(f"core.w.relation.{rel.label}", rel.anchor, res))
    ring = alg.ring
    lam = ring.lam
    p, w = alg.p_comp, alg.w_comp
    br = lambda a, b: red(s.bracket(a, b))
    # {w_i, p_j} = 2 l (eps_ijl (p0+p3) - delta_j3 eps_ikl p_k) w_l
    res = []
    for i in range(1, 4):
        for j in range(1, 4):
            exp = ring.zero()
            for l_ in range(1, 4):
                coeff = (p[0] + p[3]) * eps(i, j, l_)
                if j == 3:
                    for k in range(1, 4):
                        coeff = coeff - p[k] * eps(i, k, l_)
                exp = exp + coeff * w[l_]
            res.append(br(w[i], p[j]) - red(exp * lam * 2))
    out.append(zero_check("core.w.component.wi-pj", "{w_i,p_j} component form", res))
    res = []
    for i in range(1, 4):
        exp = ring.zero()
        for j in range(1, 4):
            for k in range(1, 4):
                if eps(i, j, k):
                    exp = exp + p[j] * w[k] * eps(i, j, k)
        res.append(br(w[i], p[0]) - red(exp * lam * 2))
    out.append(zero_check("core.w.component.wi-p0", "{w_i,p_0} = 2 l eps_ijk p_j w_k", res))
    out.append(zero_check("core.w.component.w0-pmu", "{w_0,p_mu} = 0",
                          [br(w[0], p[m]) for m in range(4)]))
    derived = ww_component_form(ring, p, w, printed=False)
    out.append(zero_check("core.w.component.wi-wj", "{w_i,w_j} as implied by the w-w matrix bracket",
                          [br(w[i], w[j]) - red(e) for (i, j), e in derived.items()]))
    printed = ww_component_form(ring, p, w, printed=True)
    out.append(nonzero_check(
        "core.w.component.wi-wj.printed-form",
        "{w_i,w_j} = eps_ijk (p0 w_k - w0 p_k + 2 l (p0+p3) p_k) as usually quoted",
        [br(w[i], w[j]) - red(e) for (i, j), e in printed.items()],
        detail="known discrepancy: contradicts the w-w matrix bracket and the {w_0,w_i} form",
    ))
    res = []
    for i in range(1, 4):
        exp = ring.zero()
        for j in range(1, 4):
            for k in range(1, 4):
                if eps(i, j, k):
                    exp = exp + p[j] * w[k] * eps(i, j, k)
        res.append(br(w[0], w[i]) - red(exp))
    out.append(zero_check("core.w.component.w0-wi", "{w_0,w_i} = eps_ijk p_j w_k", res))
    return out


def ww_component_form(ring: Ring, p: Sequence[Poly], w: Sequence[Poly],
                      printed: bool = False) -> dict[tuple[int, int], Poly]:
    """Right-hand sides for {w_i, w_j}, i < j.

    The default is the form implied by the w-w matrix bracket,
    eps_ijk (w0 p_k - p0 w_k + 2 l (w0 + w3) w_k).  ``printed=True`` gives
    eps_ijk (p0 w_k - w0 p_k + 2 l (p0 + p3) p_k), which does not hold.
    """
    lam = ring.lam
    out = {}
    for i, j in ((1, 2), (1, 3), (2, 3)):
        acc = ring.zero()
        for k in range(1, 4):
            e = eps(i, j, k)
            if not e:
                continue
            if printed:
                acc = acc + (p[0] * w[k] - w[0] * p[k] + lam * 2 * (p[0] + p[3]) * p[k]) * e
            else:
                acc = acc + (w[0] * p[k] - p[0] * w[k] + lam * 2 * (w[0] + w[3]) * w[k]) * e
        out[(i, j)] = acc
    return out


def commuting_set_checks(alg: Algebra) -> list:
    s, red = alg.structure, alg.reduce
    p, w = alg.p_comp, alg.w_comp
    wp = w[1] * p[1] + w[2] * p[2] + w[3] * p[3]
    members = [("p0", p[0]), ("p3", p[3]), ("w0", w[0]), ("w.p", wp),
               ("det-p", alg.p.det2()), ("det-w", alg.w.det2())]
    out = []
    for a in range(len(members)):
        for b in range(a + 1, len(members)):
            (na, fa), (nb, fb) = members[a], members[b]
            out.append(zero_check(f"core.commuting.{na}.{nb}",
                                  "enlarged commuting set", red(s.bracket(fa, fb))))
    return out
