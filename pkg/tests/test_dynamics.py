import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from poincare_deform import dynamics as dyn
from poincare_deform.spinless import XP_NAMES, Realization

finite = st.floats(-2, 2, allow_nan=False)


def theta_gap(x, p, lam):
    """|theta_1 - theta_2| for the eigenvalues sin(theta_k) of l x p~."""
    mu = np.linalg.eigvals(lam * dyn.x_matrix(x) @ dyn.p_matrix(p)).real
    return abs(math.asin(mu[0]) - math.asin(mu[1]))


def test_layout_helpers_roundtrip():
    x = np.array([0.3, -1.2, 0.7, 2.5])
    assert np.allclose(dyn.x_components(dyn.x_matrix(x)), x)
    p = np.array([3.0, 1.0, -2.0, 0.5])
    assert dyn.det2(dyn.p_matrix(p)).real == pytest.approx(9 - 1 - 4 - 0.25)


def test_free_limit_f_is_identity():
    f, c = dyn.f_numeric([1, 2, 3, 4], [5, 1, 1, 1], 0.0)
    assert np.allclose(f, np.eye(2)) and np.allclose(c, np.eye(2))
    xdot, pdot = dyn.hamilton_rhs([1, 2, 3, 4], [5, 1, 1, 1], 0.0)
    assert dyn.collinearity(xdot, [5, 1, 1, 1]) < 1e-14
    assert not pdot.any()


@given(st.lists(finite, min_size=8, max_size=8))
def test_closed_form_f_satisfies_its_defining_relations(vals):
    x, p = np.array(vals[:4]), np.array(vals[4:])
    lam = 0.05
    m = lam * dyn.x_matrix(x) @ dyn.p_matrix(p)
    if abs(dyn.det2(np.eye(2) - m @ m)) < 1e-3:
        return
    f, c = dyn.f_numeric(x, p, lam)
    assert np.allclose(c @ c, np.eye(2) - m @ m, atol=1e-10)
    assert np.allclose(f - c, 1j * m)


def test_series_f_matches_closed_form():
    real = Realization(8)
    rng = np.random.default_rng(11)
    vals = dict(zip(XP_NAMES, rng.normal(size=8)))
    x = np.array([vals[f"x{i}"] for i in range(4)])
    p = np.array([vals[f"p{i}"] for i in range(4)])
    lam = 0.01
    series = np.array(real.f.evaluate(vals, lam), dtype=complex)
    closed, _ = dyn.f_numeric(x, p, lam)
    assert np.abs(series - closed).max() < 1e-12


def test_hamilton_rhs_matches_symbolic_bracket():
    real = Realization(6)
    s = real.structure
    detp = real.p.det2()
    rng = np.random.default_rng(5)
    vals = dict(zip(XP_NAMES, rng.normal(size=8)))
    lam = 0.01
    x = np.array([vals[f"x{i}"] for i in range(4)])
    p = np.array([vals[f"p{i}"] for i in range(4)])
    xdot, pdot = dyn.hamilton_rhs(x, p, lam)
    # dx/dtau = {x, det p~} with alpha = 1
    for mu in range(4):
        sym = s.bracket(s.ring.gen(f"x{mu}"), detp).evaluate(vals, lam)
        assert sym == pytest.approx(xdot[mu], abs=1e-10)
        assert s.bracket(s.ring.gen(f"p{mu}"), detp).evaluate(vals, lam) == pytest.approx(0, abs=1e-12)
    assert not pdot.any()


def test_rk4_is_fourth_order():
    s0 = dyn.NumericState([0.2, 0.5, -0.3, 0.1], [2.0, 0.3, 0.4, -0.5], lam=0.2)
    fine = dyn.integrate(s0, 1e-3, 800).rows[-1].x
    errs = [np.abs(dyn.integrate(s0, h, round(0.8 / h)).rows[-1].x - fine).max() for h in (0.08, 0.04)]
    assert 12 < errs[0] / errs[1] < 20


def test_sqrt_branch_is_continuous_along_trajectory():
    s0 = dyn.NumericState([0, 0, 0, 0], [1.25, 0.75, 0, 0], lam=0.1, m=1)
    traj = dyn.integrate(s0, 1e-2, 1000)
    jumps = [np.abs(a.C - b.C).max() for a, b in zip(traj.rows, traj.rows[1:])]
    assert max(jumps) < 0.05


@pytest.mark.parametrize("lam", [0.0, 0.01, 0.1, 1.0])
@pytest.mark.parametrize("p", [(1, 0, 0, 1), (1, 0, 0, -1), (7, 2, 3, 6)])
def test_photons_move_along_p(lam, p):
    s0 = dyn.NumericState([0.1, -0.4, 0.2, 0.3], p, lam=lam)
    rep, _ = dyn.photon_check(s0, dt=1e-2, t_end=5)
    assert rep.passed(1e-9), rep


def test_massless_line_is_straight():
    s0 = dyn.NumericState([0.1, -0.4, 0.2, 0.3], (7, 2, 3, 6), lam=0.3)
    traj = dyn.integrate(s0, 1e-2, 300)
    d = np.array([r.x for r in traj.rows]) - traj.rows[0].x
    assert np.linalg.matrix_rank(d[1:], tol=1e-9) == 1


def test_free_massive_motion_is_straight():
    s0 = dyn.NumericState([1, 2, 3, 4], [3, 1, 2, 0.5], lam=0.0, m=math.sqrt(9 - 1 - 4 - 0.25))
    traj = dyn.integrate(s0, 1e-2, 200)
    assert traj.singular_tau is None
    d = np.array([r.x for r in traj.rows]) - traj.rows[0].x
    assert np.linalg.matrix_rank(d[1:], tol=1e-9) == 1
    assert max(r.collinearity for r in traj.rows) < 1e-12


def test_lifetime_at_reference_state():
    s0 = dyn.NumericState([0, 0, 0, 0], [1.25, 0.75, 0, 0], lam=0.1, m=1)
    rep, fwd, bwd = dyn.lifetime_check(s0)
    assert rep.formula == pytest.approx(25, rel=1e-12)
    assert rep.relative_error < 5e-3
    # frozen from the eigenvalue oracle: proper time 20, tau span pi / (2 l m^2).
    # Both eigenvalues hit 1 together, a double zero that the cutoff meets early.
    assert rep.proper_time == pytest.approx(20, rel=1e-4)
    assert rep.tau_span == pytest.approx(math.pi / 0.2, rel=2e-3)


@pytest.mark.parametrize("x", [(0.5, 1, 0.3, -0.2), (0, 1, 0, 0), (0.6, 0, 0, 0.4)])
def test_rest_frame_lifetime_deviation(x):
    lam, m = 0.5, 1.0
    s0 = dyn.NumericState(x, [m, 0, 0, 0], lam=lam, m=m)
    rep, _, _ = dyn.lifetime_check(s0, dt=1e-3)
    gap = theta_gap(x, s0.p, lam)
    # the sqrt endpoint limits RK4 to roughly sqrt(dt) accuracy near the surface
    assert rep.tau_span == pytest.approx((math.pi - gap) / (2 * lam * m ** 2), rel=1e-3)
    assert rep.coordinate_time / rep.formula == pytest.approx(math.cos(gap / 2), rel=1e-3)
    assert rep.coordinate_time / rep.formula < 0.999


def test_generic_lifetime_converges_to_oracle():
    x, p, lam = (0.5, 1, 0.3, -0.2), [1, 0, 0, 0], 0.5
    target = (math.pi - theta_gap(x, p, lam)) / (2 * lam)
    errs = [abs(dyn.lifetime_check(dyn.NumericState(x, p, lam=lam, m=1), dt=dt)[0].tau_span - target)
            for dt in (4e-3, 1e-3)]
    assert errs[1] < errs[0] / 3


@pytest.mark.parametrize("alpha", [0.5, 2.0])
def test_coordinate_lifetime_does_not_depend_on_alpha(alpha):
    base = dyn.NumericState([0.2, 0.1, 0, 0], [1.25, 0.75, 0, 0], lam=0.5, m=1)
    scaled = dyn.NumericState(base.x, base.p, lam=0.5, m=1, alpha=alpha)
    r1, _, _ = dyn.lifetime_check(base, dt=2e-3)
    r2, _, _ = dyn.lifetime_check(scaled, dt=2e-3 / alpha)
    assert r2.coordinate_time == pytest.approx(r1.coordinate_time, rel=1e-6)
    assert r2.tau_span == pytest.approx(r1.tau_span / alpha, rel=1e-6)


def test_lifetime_grows_as_deformation_vanishes():
    times = []
    for lam in (0.8, 0.4, 0.2):
        rep, _, _ = dyn.lifetime_check(dyn.NumericState([0, 0, 0, 0], [1, 0, 0, 0], lam=lam, m=1),
                                       dt=5e-3)
        times.append(rep.coordinate_time)
    assert times[0] < times[1] < times[2]
    assert times[2] == pytest.approx(2 / 0.2, rel=1e-3)


def test_lifetime_formula_diverges_for_light_momentum():
    vals = [dyn.lifetime_formula([0, 0, 0, 0], [1, 0, 0, math.sqrt(1 - e)], 0.1)
            for e in (1e-1, 1e-2, 1e-3)]
    assert vals[0] < vals[1] < vals[2]


def test_domain_sees_double_zero_at_rest():
    p = [1, 0, 0, 0]
    assert dyn.domain([0, 0, 0, 0], p, 0.5) == (1, 1)
    assert dyn.domain([-2.5, 0, 0, 0], p, 0.5) == (-1, -1)
    # det(1 - M^2) is positive on both sides of this surface
    assert dyn.singularity_det([-2.5, 0, 0, 0], p, 0.5) > 0


def test_csv_output():
    s0 = dyn.NumericState([0, 0, 0, 0], [1, 0, 0, 0], lam=0.1, m=1)
    buf = io.StringIO()
    dyn.integrate(s0, 0.1, 3).write_csv(buf)
    lines = buf.getvalue().split("\n")
    assert lines[0] == ",".join(dyn.CSV_HEADER)
    assert len(lines) == 6 and lines[-1] == ""
    row = [float(v) for v in lines[2].split(",")]
    assert row[0] == pytest.approx(0.1)
    assert "-0," not in buf.getvalue()


def test_error_cases():
    with pytest.raises(ValueError):
        dyn.photon_check(dyn.NumericState([0] * 4, [1, 0, 0, 0.5], lam=0.1))
    with pytest.raises(ValueError):
        dyn.lifetime_check(dyn.NumericState([0] * 4, [1, 0, 0, 0], lam=0.0, m=1))
    with pytest.raises(ValueError):
        dyn.integrate(dyn.NumericState([0] * 4, [1, 0, 0, 0]), 0.0, 1)
    with pytest.raises(dyn.SingularityError):
        dyn.f_numeric([1, 0, 0, 0], [1, 0, 0, 0], 1.0)
    with pytest.raises(RuntimeError):
        dyn.lifetime_check(dyn.NumericState([0] * 4, [1, 0, 0, 0], lam=0.01, m=1), dt=1e-3,
                           max_steps=10)
