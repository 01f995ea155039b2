import numpy as np
import pytest
from conftest import cached_suite, checks_by_id

from poincare_deform import spinless
from poincare_deform.report import EXPECTED_NONZERO, PASS
from poincare_deform.spinless import XP_NAMES, Realization


def test_low_order_suite_annotates_guaranteed_order():
    rep = cached_suite("spinless", 4)
    assert rep.ok, [c.id for c in rep.failures()]
    by_id = checks_by_id(rep)
    for cid in ("spinless.relation.xp", "spinless.jacobi", "spinless.f.pf",
                "spinless.gamma.GG", "spinless.gamma.xG", "spinless.appendix.pcos2"):
        assert by_id[cid].order == 2


def test_default_order_suite():
    rep = cached_suite("spinless")
    assert rep.ok, [c.id for c in rep.failures()]
    by_id = checks_by_id(rep)
    assert by_id["spinless.gamma.GG"].order == spinless.DEFAULT_ORDER - 2


def test_controls_are_nonzero():
    by_id = checks_by_id(cached_suite("spinless", 4))
    # f = 1 does not satisfy Jacobi; the literal f^dagger form of the spin-zero identity is false
    assert by_id["spinless.control.unit-f"].status == EXPECTED_NONZERO
    assert by_id["spinless.spin-zero.literal-f-dagger"].status == EXPECTED_NONZERO
    assert by_id["spinless.spin-zero.p-f"].status == PASS


def test_order_below_minimum_is_rejected():
    with pytest.raises(ValueError):
        Realization(spinless.MIN_ORDER - 1)


def test_series_f_numerically():
    real = Realization(6)
    rng = np.random.default_rng(3)
    vals = dict(zip(XP_NAMES, rng.normal(size=8)))
    lam = 0.005
    f = np.array(real.f.evaluate(vals, lam))
    pt = np.array(real.p.evaluate(vals, lam))
    # p f = (f^dagger)^{-1} p
    lhs = pt @ f
    rhs = np.linalg.inv(f.conj().T) @ pt
    assert np.allclose(lhs, rhs, atol=1e-10)
    assert abs(abs(np.linalg.det(f)) - 1) < 1e-10
