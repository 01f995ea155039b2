import numpy as np
import pytest
from conftest import cached_suite, checks_by_id
from hypothesis import given
from hypothesis import strategies as st

from poincare_deform.deformed import OBSERVABLE_NAMES, OBSERVABLE_RELATIONS, Algebra
from poincare_deform.report import EXPECTED_NONZERO, PASS

ALG = Algebra()
RING = ALG.ring
S = ALG.structure
gen_names = st.sampled_from(OBSERVABLE_NAMES)


@st.composite
def polys(draw, max_terms=3, max_deg=2):
    p = RING.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        term = RING.const(draw(st.integers(-3, 3)))
        if draw(st.booleans()):
            term = term * RING.I
        for _ in range(draw(st.integers(0, max_deg))):
            term = term * RING.gen(draw(gen_names))
        p = p + term
    return p


@given(polys(), polys())
def test_antisymmetry(f, g):
    assert S.bracket(f, g) == -S.bracket(g, f)


@given(polys(), polys(), polys())
def test_leibniz(f, g, h):
    assert S.bracket(f, g * h) == S.bracket(f, g) * h + g * S.bracket(f, h)


@given(polys(max_terms=2), polys(max_terms=2), polys(max_terms=2))
def test_jacobi_on_random_polynomials(f, g, h):
    j = (S.bracket(f, S.bracket(g, h)) + S.bracket(g, S.bracket(h, f))
         + S.bracket(h, S.bracket(f, g)))
    assert j.is_zero()


@given(polys(), polys())
def test_bracket_is_real(f, g):
    assert S.bracket(f, g).star() == S.bracket(f.star(), g.star())


@given(polys())
def test_casimirs_on_random_polynomials(f):
    assert S.bracket(ALG.p.det2(), f).is_zero()
    assert S.bracket(ALG.G.det2(), f).is_zero()
    assert S.bracket(ALG.Gb.det2(), f).is_zero()
    assert ALG.reduce(S.bracket(ALG.w.det2(), f)).is_zero()


def test_momentum_components():
    p = ALG.p_comp
    lam = RING.lam
    assert S.bracket(p[1], p[2]) == lam * 2 * p[3] * (p[0] + p[3])
    assert S.bracket(p[2], p[3]) == lam * 2 * p[1] * (p[0] + p[3])
    assert S.bracket(p[3], p[1]) == lam * 2 * p[2] * (p[0] + p[3])
    for i in range(1, 4):
        assert S.bracket(p[i], p[0]).is_zero()


def _numeric(m, vals, lam):
    return np.array(m.evaluate(vals, lam), dtype=complex)


@pytest.mark.parametrize("rel", OBSERVABLE_RELATIONS, ids=lambda r: r.label)
def test_relation_rhs_numpy_oracle(rel):
    """Exact brackets against a numpy evaluation of the relation's right-hand side."""
    rng = np.random.default_rng(7)
    # the relations are polynomial identities, so any point will do
    vals = {n: complex(rng.normal()) for n in ("p0", "p1", "p2", "p3")}
    for n in OBSERVABLE_NAMES[4:]:
        vals[n] = complex(rng.normal(), rng.normal())
    lam = 0.3
    r = 0.5j * lam * np.array([[1, 0, 0, 0], [0, -1, 0, 0], [0, 4, -1, 0], [0, 0, 0, 1]])
    mats = {"r": r, "rd": r.conj().T}
    one = np.eye(2)
    A = _numeric(ALG.env[rel.left], vals, lam)
    B = _numeric(ALG.env[rel.right], vals, lam)
    A1, B2 = np.kron(A, one), np.kron(one, B)
    a, b, c, d = (mats[k] for k in (rel.alpha, rel.beta, rel.gamma, rel.delta))
    expected = a @ A1 @ B2 + A1 @ B2 @ b - B2 @ c @ A1 - A1 @ d @ B2
    got = _numeric(S.bracket_matrix(ALG.env[rel.left], ALG.env[rel.right]), vals, lam)
    assert np.allclose(got, expected, atol=1e-12)


def test_core_suite_passes():
    rep = cached_suite("core")
    assert rep.ok, [c.id for c in rep.failures()]
    by_id = checks_by_id(rep)
    assert by_id["core.jacobi.mutation-control"].status == EXPECTED_NONZERO
    assert by_id["core.relation.pG.swapped-control"].status == EXPECTED_NONZERO
    assert by_id["core.w.component.wi-wj"].status == PASS


def test_every_check_has_an_anchor():
    for name in ("core", "symmetry", "quantum"):
        for c in cached_suite(name).checks:
            assert c.anchor.strip(), c.id


def test_classical_limit_components():
    rep = checks_by_id(cached_suite("core"))
    for cid in ("classical.components", "classical.matrix.jj", "classical.matrix.pj",
                "classical.deformed.GG.leading-coefficient",
                "classical.deformed.pG.leading-coefficient"):
        assert rep[cid].status == PASS
