import pytest
from conftest import cached_suite, checks_by_id

from poincare_deform import spin
from poincare_deform.report import EXPECTED_NONZERO, PASS


def test_spin_suite():
    rep = cached_suite("spin")
    assert rep.ok, [c.id for c in rep.failures()]
    by_id = checks_by_id(rep)
    for cid in ("spin.relation.SS", "spin.relation.pS", "spin.relation.xS", "spin.jacobi",
                "spin.product.GG", "spin.product.pG", "spin.no-precession"):
        assert by_id[cid].status == PASS
    for cid in ("spin.nonzero.p", "spin.nonzero.x", "spin.control.product-structure",
                "spin.w.det"):
        assert by_id[cid].status == EXPECTED_NONZERO


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_pauli_lubanski_nonzero_for_other_seeds(seed):
    checks = {c.id: c for c in spin.spin_pauli_lubanski_check(4, seed)}
    assert checks["spin.w.lambda0"].status == PASS
    assert checks["spin.w.det"].status == EXPECTED_NONZERO


def test_monomial_lemma_and_limits():
    by_id = checks_by_id(cached_suite("spin"))
    for n in range(1, 5):
        assert by_id[f"spin.lemma.power{n}"].status == PASS
    for label in ("SG", "xS", "pS"):
        assert by_id[f"spin.limit.{label}"].status == PASS
