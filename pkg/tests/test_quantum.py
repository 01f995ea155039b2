import numpy as np
import pytest
from conftest import cached_suite, checks_by_id

from poincare_deform import quantum
from poincare_deform.algebra.ring import Ring
from poincare_deform.deformed import r_matrix
from poincare_deform.report import EXPECTED_NONZERO, PASS

P = np.eye(4)[[0, 2, 1, 3]]
I2 = np.eye(2)


def r_numeric(lam):
    return 0.5j * lam * np.array([[1, 0, 0, 0], [0, -1, 0, 0], [0, 4, -1, 0], [0, 0, 0, 1]])


def yang_baxter_numeric(m):
    m12, m23 = np.kron(m, I2), np.kron(I2, m)
    p23 = np.kron(I2, P)
    m13 = p23 @ m12 @ p23
    c = lambda a, b: a @ b - b @ a
    return c(m12, m13) + c(m12, m23) + c(m13, m23)


@pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
def test_cybe_numeric_oracle(lam):
    r = r_numeric(lam)
    a = (r - P @ r @ P) / 2
    assert np.abs(yang_baxter_numeric(r)).max() < 1e-12
    ya = yang_baxter_numeric(a)
    # frozen from the direct 8x8 computation: twelve entries of modulus l^2
    assert np.count_nonzero(np.abs(ya) > 1e-12) == 12
    assert np.sum(np.abs(ya) ** 2) == pytest.approx(12 * lam ** 4)
    for b in quantum.traceless_basis(Ring((), name="c")):
        bn = np.array(b.evaluate({}), dtype=complex)
        ad = np.kron(np.kron(bn, I2), I2) + np.kron(np.kron(I2, bn), I2) + np.kron(I2, np.kron(I2, bn))
        assert np.abs(ya @ ad - ad @ ya).max() < 1e-12


def test_exact_yang_baxter_matches_numeric():
    ring = Ring((), name="c")
    r = r_matrix(ring)
    pi = np.array(quantum.swap(ring).evaluate({}), dtype=complex)
    ya = quantum.yang_baxter((r - quantum.swap(ring) * r * quantum.swap(ring)) / 2)
    lam = 0.7
    num = yang_baxter_numeric((r_numeric(lam) - pi @ r_numeric(lam) @ pi) / 2)
    assert np.allclose(np.array(ya.evaluate({}, lam), dtype=complex), num, atol=1e-12)


def test_hermiticity_numeric():
    r = r_numeric(0.9)
    assert np.abs(r.conj().T + P @ r @ P).max() < 1e-15
    assert np.allclose(r - r.conj().T, 0.9j * (2 * P - np.eye(4)))


def test_quantum_suite():
    rep = cached_suite("quantum")
    assert rep.ok, [c.id for c in rep.failures()]
    by_id = checks_by_id(rep)
    for rel in quantum.QUANTUM_RELATIONS + quantum.CONJUGATE_RELATIONS:
        assert by_id[f"quantum.reduction.{rel.label}.hbar0"].status == PASS
        assert by_id[f"quantum.reduction.{rel.label}.hbar1"].status == PASS
    for label, a, b in quantum.MISPAIRINGS:
        assert by_id[f"quantum.control.{label}-on-{a}{b}"].status == EXPECTED_NONZERO
    assert by_id["quantum.cybe.r"].status == PASS
    assert by_id["quantum.cybe.modified"].status == EXPECTED_NONZERO


def test_reduction_detects_a_wrong_r_factor():
    rel = quantum.QUANTUM_RELATIONS[3]
    bad = quantum.QuantumRelation(rel.label, rel.left, rel.right, ("R21", "A1", "R12i", "B2"),
                                  rel.rhs, rel.classical)
    from poincare_deform.deformed import Algebra
    alg = Algebra()
    _, h1 = quantum.reduction_residual(bad, alg.structure, alg.env)
    assert not h1.is_zero()
