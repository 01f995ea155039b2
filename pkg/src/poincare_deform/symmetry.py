"""Poisson-Lie symmetry group and Lorentz covariance of the observables.

Symmetry generators ``g11..g22`` and ``gb11..gb22`` with g^dagger = adj(gb).
Their brackets are commutators with the r-matrix,

    {g1, g2} = [r, g1 g2]      {g1, gb2} = [r, g1 gb2]
    {gb1, g2} = [r^dag, gb1 g2]  {gb1, gb2} = [r, gb1 gb2].

Observables and symmetries have zero mutual brackets in the product
structure.  Transformations use adjugates in place of inverses; since det g
and det gb are central and every relation is homogeneous of degree two, the
adjugate form of a relation holds iff the inverse form does on det = 1.
"""
from __future__ import annotations

from collections.abc import Sequence

from .algebra.matrix import Matrix, commutator, hermitian_x_layout, identity, kron
from .algebra.reduce import UnimodularReducer
from .algebra.ring import Ring
from .deformed import (
    G_NAMES,
    GB_NAMES,
    OBSERVABLE_FAMILIES,
    OBSERVABLE_NAMES,
    OBSERVABLE_RELATIONS,
    P_NAMES,
    W_RELATIONS,
    base_environment,
    dagger_adjugate_pairs,
    gen_matrix,
    observable_environment,
    pauli_lubanski,
    real_pairs,
    relation_by_label,
    structure_from_relations,
)
from .poisson import PoissonStructure, RelationSpec, jacobi_sweep, relation_residual
from .report import nonzero_check, zero_check

SG_NAMES = ("g11", "g12", "g21", "g22")
SGB_NAMES = ("gb11", "gb12", "gb21", "gb22")
X_NAMES = ("x0", "x1", "x2", "x3")

SYMMETRY_RELATIONS: tuple[RelationSpec, ...] = (
    RelationSpec.commutator("gg", "g", "g", "r", anchor="{g1,g2} = [r, g1 g2]"),
    RelationSpec.commutator("ggb", "g", "gb", "r", anchor="{g1,gb2} = [r, g1 gb2]"),
    RelationSpec.commutator("gbg", "gb", "g", "rd", anchor="{gb1,g2} = [r^dagger, gb1 g2]"),
    RelationSpec.commutator("gbgb", "gb", "gb", "r", anchor="{gb1,gb2} = [r, gb1 gb2]"),
)

SYMMETRY_FAMILIES = {"g": (("g",), SG_NAMES), "gb": (("gb",), SGB_NAMES)}

# position-position bracket of the spinless realization; closed on x alone
XX_RELATION = RelationSpec("xx", "x", "x", "r", "rd", "r", "rd",
                           anchor="position-position quadratic bracket")


def symmetry_ring(extra: Sequence[str] = (), extra_conj=None) -> Ring:
    conj = dagger_adjugate_pairs(SG_NAMES, SGB_NAMES)
    if extra_conj:
        conj.update(extra_conj)
    return Ring(SG_NAMES + SGB_NAMES + tuple(extra), conj, name="symmetry")


def symmetry_environment(ring: Ring) -> dict[str, Matrix]:
    env = base_environment(ring)
    env["g"] = gen_matrix(ring, SG_NAMES)
    env["gb"] = gen_matrix(ring, SGB_NAMES)
    return env


def build_symmetry_structure(ring: Ring | None = None) -> PoissonStructure:
    ring = ring or symmetry_ring()
    env = symmetry_environment(ring)
    return structure_from_relations(ring, env, SYMMETRY_FAMILIES, SYMMETRY_RELATIONS,
                                    name="symmetry group")


def product_ring(with_x: bool = False) -> Ring:
    conj = real_pairs(P_NAMES)
    conj.update(dagger_adjugate_pairs(G_NAMES, GB_NAMES))
    conj.update(dagger_adjugate_pairs(SG_NAMES, SGB_NAMES))
    names = OBSERVABLE_NAMES + SG_NAMES + SGB_NAMES
    if with_x:
        conj.update(real_pairs(X_NAMES))
        names = names + X_NAMES
    return Ring(names, conj, name="observables x symmetries")


def product_environment(ring: Ring) -> dict[str, Matrix]:
    env = observable_environment(ring)
    env["g"] = gen_matrix(ring, SG_NAMES)
    env["gb"] = gen_matrix(ring, SGB_NAMES)
    if "x0" in ring.index:
        env["x"] = hermitian_x_layout(ring, X_NAMES)
    return env


def build_product_structure(ring: Ring | None = None) -> PoissonStructure:
    """Observables (and optionally positions) x symmetries, zero cross brackets."""
    ring = ring or product_ring()
    env = product_environment(ring)
    families = dict(OBSERVABLE_FAMILIES)
    families.update(SYMMETRY_FAMILIES)
    relations = OBSERVABLE_RELATIONS + SYMMETRY_RELATIONS
    if "x" in env:
        families["x"] = (("x",), X_NAMES)
        relations = relations + (XX_RELATION,)
    return structure_from_relations(ring, env, families, relations, name="product")


def _identity_values(ring: Ring, names: Sequence[str]) -> dict:
    """Substitution sending the matrix [[a, b], [c, d]] of generators to 1."""
    a, b, c, d = names
    return {a: ring.one(), b: ring.zero(), c: ring.zero(), d: ring.one()}


# -- checks ------------------------------------------------------------------

def symmetry_checks() -> list:
    ring = symmetry_ring()
    env = symmetry_environment(ring)
    s = build_symmetry_structure(ring)
    out = []
    for rel in SYMMETRY_RELATIONS:
        out.append(zero_check(f"symmetry.relation.{rel.label}", rel.anchor,
                              relation_residual(rel, s, env)))
    failing = [r for _, r in jacobi_sweep(s) if r]
    out.append(zero_check("symmetry.jacobi.all", "Jacobi identity on g, gb",
                          failing[0] if failing else None, detail="56 triples"))
    gens = [ring.gen(n) for n in ring.names]
    out.append(zero_check("symmetry.casimir.det-g", "det g is central",
                          [s.bracket(env["g"].det2(), x) for x in gens]))
    out.append(zero_check("symmetry.casimir.det-gb", "det gb is central",
                          [s.bracket(env["gb"].det2(), x) for x in gens]))
    out.append(zero_check("symmetry.canonical-limit", "symmetry brackets vanish at l = 0",
                          [v.set_lam(0) for v in s.table().values()]))
    return out


def r_replacement_checks() -> list:
    ring = symmetry_ring()
    env = symmetry_environment(ring)
    one = identity(ring, 2)
    g, gb = env["g"], env["gb"]
    r, rd, pi = env["r"], env["rd"], env["Pi"]
    out = []
    for name, m in (("g", g), ("gb", gb)):
        prod = kron(m, one) * kron(one, m)
        out.append(zero_check(f"symmetry.r-replacement.{name}",
                              "[r, m1 m2] = [r^dagger, m1 m2]",
                              commutator(r, prod) - commutator(rd, prod)))
        out.append(zero_check(f"symmetry.pi-commutes.{name}", "[2 Pi - 1, m1 m2] = 0",
                              commutator(pi * 2 - identity(ring, 4), prod)))
    return out


def multiplicativity_checks() -> list:
    """gg' keeps the group bracket; gamma gamma_s with zero cross brackets does not."""
    out = []
    a_names = SG_NAMES
    b_names = tuple(n + "p" for n in SG_NAMES)
    ring = Ring(a_names + b_names, name="two copies")
    env = base_environment(ring)
    env["a"] = gen_matrix(ring, a_names)
    env["b"] = gen_matrix(ring, b_names)
    rels = (RelationSpec.commutator("aa", "a", "a", "r"),
            RelationSpec.commutator("bb", "b", "b", "r"))
    fams = {"a": (("a",), a_names), "b": (("b",), b_names)}
    s = structure_from_relations(ring, env, fams, rels, name="g x g'")
    env["ab"] = env["a"] * env["b"]
    prod_rel = RelationSpec.commutator("prod", "ab", "ab", "r")
    out.append(zero_check("symmetry.multiplicative.group",
                          "the group bracket is preserved by multiplication",
                          relation_residual(prod_rel, s, env)))
    env["onlya"] = env["a"] * env["b"].subs(_identity_values(ring, b_names))
    out.append(zero_check("symmetry.multiplicative.trivial-factor",
                          "g' = 1 reduces to the group bracket",
                          relation_residual(prod_rel.with_selectors(left="onlya", right="onlya"),
                                            s, env)))
    # gamma-type bracket (r^dag, r, r, r^dag) on two independent copies
    gam = RelationSpec("gg", "a", "a", "rd", "r", "r", "rd")
    gam_b = RelationSpec("gsgs", "b", "b", "rd", "r", "r", "rd")
    s2 = structure_from_relations(ring, env, fams, (gam, gam_b), name="gamma x gamma_s")
    out.append(nonzero_check("symmetry.multiplicative.gamma-fails",
                             "products of gamma-type matrices are not a Poisson-Lie group",
                             relation_residual(gam.with_selectors(left="ab", right="ab"), s2, env)))
    return out


def transformed_environment(ring: Ring) -> dict[str, Matrix]:
    env = product_environment(ring)
    g, gb = env["g"], env["gb"]
    adj_g, adj_gb = g.adjugate2(), gb.adjugate2()
    tenv = base_environment(ring)
    tenv["p"] = gb * env["p"] * adj_g
    tenv["G"] = g * env["G"] * adj_g
    tenv["Gb"] = gb * env["Gb"] * adj_gb
    if "x" in env:
        tenv["x"] = g * env["x"] * adj_gb
    return tenv


def covariance_checks(include_w: bool = True) -> list:
    ring = product_ring(with_x=True)
    s = build_product_structure(ring)
    env = product_environment(ring)
    tenv = transformed_environment(ring)
    out = []
    for rel in OBSERVABLE_RELATIONS + (XX_RELATION,):
        out.append(zero_check(f"symmetry.covariance.{rel.label}",
                              rel.anchor + " for transformed observables",
                              relation_residual(rel, s, tenv)))
    if include_w:
        red = UnimodularReducer(ring, [G_NAMES, GB_NAMES, SG_NAMES, SGB_NAMES])
        w = pauli_lubanski(env["p"], env["G"], env["Gb"])
        tenv["w"] = env["gb"] * w * env["g"].adjugate2()
        # w built from transformed p, gamma, gamma-bar equals the transformed w
        # up to the central factor det g det gb
        w_from_primed = pauli_lubanski(tenv["p"], tenv["G"], tenv["Gb"])
        d = env["g"].det2() * env["gb"].det2()
        out.append(zero_check("symmetry.covariance.w-transforms-like-p",
                              "w transforms as p does",
                              (w_from_primed - tenv["w"] * d).map(red)))
        rel = relation_by_label(W_RELATIONS, "ww")
        out.append(zero_check("symmetry.covariance.ww", rel.anchor + " for transformed w",
                              relation_residual(rel, s, tenv).map(red)))
    # identity transformation leaves everything unchanged
    ident = {**_identity_values(ring, SG_NAMES), **_identity_values(ring, SGB_NAMES)}
    same = [tenv[k].subs(ident) - env[k] for k in ("p", "G", "Gb", "x")]
    out.append(zero_check("symmetry.covariance.identity", "g = gb = 1 leaves observables unchanged",
                          same))
    out.extend(adjugate_lemma_checks(ring, s, env))
    return out


def adjugate_lemma_checks(ring: Ring, s: PoissonStructure, env) -> list:
    """det factors are central, and scaling a matrix by one scales a quadratic residual by its square."""
    gens = [ring.gen(n) for n in ring.names]
    dg, dgb = env["g"].det2(), env["gb"].det2()
    out = [zero_check("symmetry.lemma.det-central", "det g, det gb central in the product structure",
                      [s.bracket(d, x) for d in (dg, dgb) for x in gens])]
    rel = relation_by_label(OBSERVABLE_RELATIONS, "pG")
    scaled = dict(env)
    scaled["p"] = env["p"] * dg
    scaled["G"] = env["G"] * dgb
    res = relation_residual(rel, s, scaled)
    out.append(zero_check("symmetry.lemma.homogeneity",
                          "residual of det-scaled matrices is the det-scaled residual",
                          res - relation_residual(rel, s, env) * (dg * dgb)))
    return out


def product_jacobi_check() -> list:
    ring = product_ring()
    s = build_product_structure(ring)
    failing = [(t, r) for t, r in jacobi_sweep(s) if r]
    chk = zero_check("symmetry.jacobi.product", "Jacobi identity on observables x symmetries",
                     failing[0][1] if failing else None, detail="1140 triples")
    return [chk]
