"""First-order semiclassics of the quantum R-matrix relations.

R12 = 1 - i hbar r and R21 = Pi R12 Pi, both kept to O(hbar).  A quantum
relation is a pair of words in R-factors and two operator matrices A (space 1)
and B (space 2).  Its classical reduction treats matrix entries as commuting
at O(hbar^0) and, wherever B2 stands to the left of A1, restores the operator
order with

    B2 A1 = A1 B2 - i hbar {A1 (x) B2}

(the entries of B2 A1 are B_kl A_ij).  The O(hbar^0) and O(hbar^1) parts of
LHS - RHS must vanish when the brackets come from the classical structure.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from .algebra.matrix import Matrix, commutator, identity, kron, swap
from .algebra.ring import Ring
from .deformed import Algebra, r_matrix
from .poisson import PoissonStructure
from .report import nonzero_check, zero_check
from .symmetry import (
    build_product_structure,
    build_symmetry_structure,
    product_ring,
    symmetry_environment,
    symmetry_ring,
    transformed_environment,
)

R_FACTORS = ("R12", "R12i", "R21", "R21i")


@dataclass(frozen=True)
class QuantumRelation:
    """lhs = rhs with words over R_FACTORS and the operator tokens "A1", "B2"."""

    label: str
    left: str
    right: str
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    classical: str
    anchor: str = ""


QUANTUM_RELATIONS: tuple[QuantumRelation, ...] = (
    QuantumRelation("RTT", "g", "g", ("R12", "A1", "B2"), ("B2", "A1", "R12"), "gg",
                    "symmetry RTT relation"),
    QuantumRelation("RTTbar", "g", "gb", ("R12", "A1", "B2"), ("B2", "A1", "R12"), "ggb",
                    "RTT relation between T and T-bar"),
    QuantumRelation("RTbarTbar", "gb", "gb", ("R12", "A1", "B2"), ("B2", "A1", "R12"), "gbgb",
                    "RTT relation for T-bar"),
    QuantumRelation("RPRP", "p", "p", ("R12", "A1", "R12i", "B2"), ("B2", "R21i", "A1", "R21"),
                    "pp", "reflection equation for momenta"),
    QuantumRelation("RGRG", "G", "G", ("R21i", "A1", "R21", "B2"), ("B2", "R12", "A1", "R12i"),
                    "GG", "gamma-gamma exchange relation"),
    QuantumRelation("RGRGbar", "G", "Gb", ("R12", "A1", "R12i", "B2"),
                    ("B2", "R12", "A1", "R12i"), "GGb", "gamma-gammabar exchange relation"),
    QuantumRelation("RPRG", "p", "G", ("R21i", "A1", "R21", "B2"), ("B2", "R21i", "A1", "R12i"),
                    "pG", "momentum-gamma exchange relation"),
    QuantumRelation("RPRGbar", "p", "Gb", ("R12", "A1", "R12i", "B2"),
                    ("B2", "R21i", "A1", "R12i"), "pGb", "momentum-gammabar exchange relation"),
)

# the two conjugated relations completing the observable algebra
CONJUGATE_RELATIONS: tuple[QuantumRelation, ...] = (
    QuantumRelation("RGbRGb", "Gb", "Gb", ("R12", "A1", "R12i", "B2"),
                    ("B2", "R21i", "A1", "R21"), "GbGb", "gammabar-gammabar exchange relation"),
    QuantumRelation("RGbRG", "Gb", "G", ("R21i", "A1", "R21", "B2"),
                    ("B2", "R21i", "A1", "R21"), "GbG", "gammabar-gamma exchange relation"),
)


def quantum_r(ring: Ring) -> dict[str, Matrix]:
    """R12, R21 and their inverses, each exact to O(hbar)."""
    r = r_matrix(ring)
    one = identity(ring, 4)
    pi = swap(ring)
    ih = ring.I * ring.hbar
    r12 = one - r * ih
    r12i = one + r * ih
    return {"R12": r12, "R12i": r12i, "R21": pi * r12 * pi, "R21i": pi * r12i * pi}


def truncate_hbar(m: Matrix, order: int = 2) -> Matrix:
    return m.map(lambda e: sum((e.hbar_coeff(k) * e.ring.hbar ** k for k in range(order)),
                               e.ring.zero()))


def hbar_part(m: Matrix, k: int) -> Matrix:
    return m.map(lambda e: e.hbar_coeff(k))


def _side(word: Sequence[str], A: Matrix, B: Matrix, rs: Mapping[str, Matrix],
          bracket: Matrix) -> Matrix:
    ring = A.ring
    one = identity(ring, 2)
    factors = {"A1": kron(A, one), "B2": kron(one, B), **rs}
    total = identity(ring, 4)
    for tok in word:
        total = truncate_hbar(total * factors[tok])
    if word.index("B2") < word.index("A1"):
        # reorder B2 ... A1 into A1 ... B2; at O(hbar) the R-factors between are 1
        total = total - bracket * (ring.I * ring.hbar)
    return total


def reduction_residual(rel: QuantumRelation, s: PoissonStructure,
                       env: Mapping[str, Matrix], left: str | None = None,
                       right: str | None = None) -> tuple[Matrix, Matrix]:
    """(O(hbar^0), O(hbar^1)) parts of LHS - RHS for the relation's words.

    ``left``/``right`` override the operator matrices (used by the
    mispairing controls).
    """
    A = env[left or rel.left]
    B = env[right or rel.right]
    rs = quantum_r(A.ring)
    br = s.bracket_matrix(A, B)
    diff = _side(rel.lhs, A, B, rs, br) - _side(rel.rhs, A, B, rs, br)
    return hbar_part(diff, 0), hbar_part(diff, 1)


def _reduction_checks(rels, s, env, prefix: str) -> list:
    out = []
    for rel in rels:
        h0, h1 = reduction_residual(rel, s, env)
        out.append(zero_check(f"{prefix}.{rel.label}.hbar0", rel.anchor + " at O(hbar^0)", h0))
        out.append(zero_check(f"{prefix}.{rel.label}.hbar1",
                              f"{rel.anchor} at O(hbar) gives the {rel.classical} bracket", h1))
    return out


def reduction_checks() -> list:
    sym_ring = symmetry_ring()
    sym = build_symmetry_structure(sym_ring)
    sym_env = symmetry_environment(sym_ring)
    alg = Algebra()
    out = _reduction_checks(QUANTUM_RELATIONS[:3], sym, sym_env, "quantum.reduction")
    out += _reduction_checks(QUANTUM_RELATIONS[3:] + CONJUGATE_RELATIONS, alg.structure,
                             alg.env, "quantum.reduction")
    return out


MISPAIRINGS = (
    # relation label, matrices substituted for (A, B)
    ("RPRP", "G", "G"),
    ("RGRG", "p", "p"),
    ("RPRG", "p", "Gb"),
    ("RGRGbar", "G", "G"),
)


def mispairing_controls() -> list:
    alg = Algebra()
    by_label = {rel.label: rel for rel in QUANTUM_RELATIONS}
    out = []
    for label, a, b in MISPAIRINGS:
        _, h1 = reduction_residual(by_label[label], alg.structure, alg.env, a, b)
        out.append(nonzero_check(f"quantum.control.{label}-on-{a}{b}",
                                 f"{label} words do not reduce to the {a}{b} bracket", h1))
    return out


def hermiticity_checks() -> list:
    ring = Ring((), name="constants")
    r = r_matrix(ring)
    pi = swap(ring)
    one = identity(ring, 4)
    rs = quantum_r(ring)
    lam = ring.lam
    return [
        zero_check("quantum.hermiticity.r", "r^dagger = -Pi r Pi", r.dagger() + pi * r * pi),
        zero_check("quantum.hermiticity.R", "R12^dagger = R21 to O(hbar)",
                   truncate_hbar(rs["R12"].dagger() - rs["R21"])),
        zero_check("quantum.hermiticity.classical", "R12 = R21 = 1 at hbar = 0",
                   [hbar_part(rs["R12"], 0) - one, hbar_part(rs["R21"], 0) - one]),
        zero_check("quantum.r-minus-rdagger", "r - r^dagger = i l (2 Pi - 1)",
                   r - r.dagger() - (pi * 2 - one) * (ring.I * lam)),
        zero_check("quantum.inverse", "R12 R12^{-1} = 1 to O(hbar)",
                   truncate_hbar(rs["R12"] * rs["R12i"]) - one),
    ]


def yang_baxter(m: Matrix) -> Matrix:
    """[m12, m13] + [m12, m23] + [m13, m23] on the triple tensor product."""
    ring = m.ring
    one2 = identity(ring, 2)
    p23 = kron(one2, swap(ring))
    m12 = kron(m, one2)
    m23 = kron(one2, m)
    m13 = p23 * m12 * p23
    return commutator(m12, m13) + commutator(m12, m23) + commutator(m13, m23)


def traceless_basis(ring: Ring) -> list[Matrix]:
    c = ring.const
    return [
        Matrix(ring, [[c(1), c(0)], [c(0), c(-1)]]),
        Matrix(ring, [[c(0), c(1)], [c(0), c(0)]]),
        Matrix(ring, [[c(0), c(0)], [c(1), c(0)]]),
    ]


def cybe_checks() -> list:
    """Yang-Baxter expressions of r and of its parts.

    r itself solves the classical Yang-Baxter equation; its skew part
    a = (r - r21)/2 solves the modified one, with an ad-invariant nonzero
    right-hand side equal to minus that of the symmetric part t = (r + r21)/2.
    """
    ring = Ring((), name="constants")
    one = identity(ring, 2)
    pi = swap(ring)
    r = r_matrix(ring)
    r21 = pi * r * pi
    a = (r - r21) / 2
    t = (r + r21) / 2
    ya = yang_baxter(a)
    out = [
        zero_check("quantum.cybe.r", "r solves the classical Yang-Baxter equation", yang_baxter(r)),
        nonzero_check("quantum.cybe.modified", "skew part: Yang-Baxter expression is nonzero", ya),
        zero_check("quantum.cybe.skew-symmetric", "Y(a) = -Y(t)", ya + yang_baxter(t)),
        zero_check("quantum.cybe.lambda0", "Yang-Baxter expression vanishes at l = 0",
                   ya.lam_coeff(0)),
    ]
    for k, b in enumerate(traceless_basis(ring)):
        ad = kron(kron(b, one), one) + kron(kron(one, b), one) + kron(kron(one, one), b)
        out.append(zero_check(f"quantum.cybe.ad-invariant.{k}",
                              "modified Yang-Baxter right-hand side commutes with the diagonal action",
                              commutator(ya, ad)))
        out.append(zero_check(f"quantum.r-minus-rdagger.ad-invariant.{k}",
                              "r - r^dagger is adjoint invariant",
                              commutator(r - r.dagger(), kron(b, one) + kron(one, b))))
    return out


def covariance_replay_check() -> list:
    """P' = Tbar P adj(T) obeys the momentum reflection equation at O(hbar)."""
    ring = product_ring()
    s = build_product_structure(ring)
    tenv = transformed_environment(ring)
    rel = QUANTUM_RELATIONS[3]
    h0, h1 = reduction_residual(rel, s, tenv)
    return [zero_check("quantum.covariance.RPRP", "reflection equation for transformed momenta",
                       [h0, h1], detail="O(hbar^0) and O(hbar^1), adjugate for T^{-1}")]


def quantum_checks() -> list:
    return (hermiticity_checks() + cybe_checks() + reduction_checks()
            + mispairing_controls() + covariance_replay_check())
