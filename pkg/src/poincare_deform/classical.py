"""Canonical limit of the deformed algebra.

An independent canonical structure on momenta p_mu and angular momenta
j_{mu nu} (metric diag(-1, 1, 1, 1)) is compared with the deformed algebra by
substituting gamma = exp(i l j), gamma-bar = exp(i l j^dagger) and expanding
in l.
"""
from __future__ import annotations

import itertools

from .algebra.matrix import Matrix, hermitian_p_layout, identity, kron, swap
from .algebra.ring import Poly, Ring
from .algebra.series import exp_matrix
from .deformed import P_NAMES, base_environment, relation_by_label, OBSERVABLE_RELATIONS
from .poisson import PoissonStructure, derive_table, relation_rhs, swap_bracket
from .report import zero_check

J_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
J_NAMES = tuple(f"j{a}{b}" for a, b in J_PAIRS)
ETA = (-1, 1, 1, 1)


def classical_ring() -> Ring:
    names = P_NAMES + J_NAMES
    return Ring(names, {n: (n, 1) for n in names}, name="canonical")


def _eta(a: int, b: int) -> int:
    return ETA[a] if a == b else 0


def j_component(ring: Ring, a: int, b: int) -> Poly:
    """j_ab as a polynomial (antisymmetric, zero on the diagonal)."""
    if a == b:
        return ring.zero()
    if a < b:
        return ring.gen(f"j{a}{b}")
    return -ring.gen(f"j{b}{a}")


def canonical_table(ring: Ring) -> dict[tuple[str, str], Poly]:
    """{p,p} = 0, {j,j} and {p,j} of the Poincare algebra."""
    table = {}
    J = lambda a, b: j_component(ring, a, b)
    p = [ring.gen(n) for n in P_NAMES]
    for (m, n), (r, s) in itertools.combinations(J_PAIRS, 2):
        val = (J(n, s) * _eta(m, r) + J(m, r) * _eta(n, s)
               + J(r, n) * _eta(m, s) + J(s, m) * _eta(n, r))
        table[(f"j{m}{n}", f"j{r}{s}")] = val
    for mu in range(4):
        for (n, r) in J_PAIRS:
            table[(P_NAMES[mu], f"j{n}{r}")] = p[n] * _eta(mu, r) - p[r] * _eta(mu, n)
    return table


def canonical_structure(ring: Ring | None = None, order: int | None = None) -> PoissonStructure:
    ring = ring or classical_ring()
    return PoissonStructure(ring, canonical_table(ring), order, "canonical Poincare")


def j_matrix(ring: Ring) -> Matrix:
    """Traceless 2x2 matrix carrying the six j components."""
    J = lambda a, b: j_component(ring, a, b)
    i = ring.I
    return Matrix(ring, [
        [-i * J(1, 2) + J(3, 0), -i * J(2, 3) - i * J(2, 0) - J(3, 1) + J(1, 0)],
        [-i * J(2, 3) + i * J(2, 0) + J(3, 1) + J(1, 0), i * J(1, 2) - J(3, 0)],
    ])


def limit_matrices(ring: Ring) -> dict[str, Matrix]:
    """Right-hand sides of the lowest-order (canonical) matrix brackets."""
    one = identity(ring, 2)
    pi = swap(ring)
    one4 = identity(ring, 4)
    j = j_matrix(ring)
    p = hermitian_p_layout(ring, P_NAMES)
    j1, j2 = kron(j, one), kron(one, j)
    return {
        "jj": pi * (j2 - j1) * 2,
        "jjd": Matrix.build(ring, 4, 4, lambda a, b: 0),
        "pj": kron(p, one) * (pi * 2 - one4),
    }


def matrix_limit_checks(order: int = 4) -> list:
    """The canonical structure satisfies the three limiting matrix brackets."""
    ring = classical_ring()
    s = canonical_structure(ring)
    j = j_matrix(ring)
    p = hermitian_p_layout(ring, P_NAMES)
    lim = limit_matrices(ring)
    return [
        zero_check("classical.matrix.jj", "{j1,j2} = 2 Pi (j2 - j1)",
                   s.bracket_matrix(j, j) - lim["jj"]),
        zero_check("classical.matrix.jjd", "{j1,j2^dagger} = 0",
                   s.bracket_matrix(j, j.dagger()) - lim["jjd"]),
        zero_check("classical.matrix.pj", "{p1,j2} = p1 (2 Pi - 1)",
                   s.bracket_matrix(p, j) - lim["pj"]),
        zero_check("classical.matrix.pp", "{p1,p2} = 0 in the limit",
                   s.bracket_matrix(p, p)),
    ]


def component_limit_check() -> list:
    """Solve the limiting matrix brackets for components; compare with Poincare."""
    ring = classical_ring()
    j = j_matrix(ring)
    jd = j.dagger()
    p = hermitian_p_layout(ring, P_NAMES)
    lim = limit_matrices(ring)
    known = {
        ("j", "j"): lim["jj"],
        ("j", "jd"): lim["jjd"],
        ("jd", "jd"): lim["jj"].dagger(),
        ("p", "j"): lim["pj"],
        ("p", "jd"): lim["pj"].dagger(),
        ("p", "p"): lim["jjd"],
    }
    names = {"J": ["j", "jd"], "P": ["p"]}

    def brackets(ia, ib, fa, fb):
        a, b = names[fa][ia], names[fb][ib]
        if (a, b) in known:
            return known[(a, b)]
        if (b, a) in known:
            return swap_bracket(known[(b, a)])
        return None

    families = {"J": ([j, jd], J_NAMES), "P": ([p], P_NAMES)}
    derived = PoissonStructure(ring, derive_table(families, brackets), name="derived")
    canon = canonical_structure(ring)
    diffs = []
    for a in ring.names:
        for b in ring.names:
            diffs.append(derived.entry(a, b) - canon.entry(a, b))
    return [zero_check("classical.components", "component Poincare brackets from the matrix limit",
                       diffs, detail=f"{len(ring.names) ** 2} generator pairs")]


def deformed_limit_checks(order: int = 4) -> list:
    """Canonical brackets of exp(i l j) agree with the deformed relations at lowest order."""
    if order < 3:
        raise ValueError("order must be at least 3 to reach the l^2 coefficient")
    ring = classical_ring()
    s = canonical_structure(ring, order)
    j = j_matrix(ring)
    il = ring.I * ring.lam
    G = exp_matrix(j * il, order)
    Gb = exp_matrix(j.dagger() * il, order)
    lim = limit_matrices(ring)
    env = base_environment(ring)
    env.update({"p": hermitian_p_layout(ring, P_NAMES), "G": G, "Gb": Gb})
    out = []
    for label, top in (("GG", 2), ("GGb", 2), ("pG", 1)):
        rel = relation_by_label(OBSERVABLE_RELATIONS, label)
        lhs = s.bracket_matrix(env[rel.left], env[rel.right])
        res = (lhs - relation_rhs(rel, env, order)).truncate(order)
        low = [res.lam_coeff(k) for k in range(top + 1)]
        out.append(zero_check(
            f"classical.deformed.{label}.lowest-order", rel.anchor + " at lowest order in l",
            low, order=top + 1,
            detail=f"coefficients of l^0..l^{top} compared"))
        # the leading coefficient itself: i^2 {j1,j2}, i^2 {j1,j2^dagger}, i {p1,j2}
        lead = {"GG": lim["jj"] * -1, "GGb": lim["jjd"], "pG": lim["pj"] * ring.I}[label]
        out.append(zero_check(
            f"classical.deformed.{label}.leading-coefficient",
            "leading coefficient equals the canonical matrix bracket",
            [lhs.lam_coeff(k) for k in range(top)] + [lhs.lam_coeff(top) - lead],
            order=top + 1))
    return out


def classical_limit_check(order: int = 4) -> list:
    return matrix_limit_checks(order) + component_limit_check() + deformed_limit_checks(order)
