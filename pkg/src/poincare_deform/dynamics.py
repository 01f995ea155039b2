"""Hamiltonian dynamics of the deformed particle in double precision.

H = alpha (det p~ - m^2) with the deformed brackets gives

    dx/dtau = -alpha (f p + p f^dagger),    dp/dtau = 0,

where p = sigma2 p~^T sigma2 and f = C + i l x p~ with C the square root of
1 - (l x p~)^2 that tends to 1 as l -> 0.  The flow stops where
det(1 - (l x p~)^2) vanishes: there the square root has a branch point.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import IO

import numpy as np

ETA = np.array([-1.0, 1.0, 1.0, 1.0])
SIGMA2 = np.array([[0, -1j], [1j, 0]])
ONE = np.eye(2, dtype=complex)
SINGULAR_TOL = 1e-12
CSV_HEADER = ("tau", "x0", "x1", "x2", "x3", "p0", "p1", "p2", "p3",
              "collinearity", "singularity_det", "detp")


class SingularityError(ValueError):
    """det(1 - (l x p~)^2) is zero (or the square root is ambiguous) at the given state."""

    def __init__(self, message: str, det: complex):
        super().__init__(f"{message} (det(1 - (l x p~)^2) = {det:.6g})")
        self.det = det


def p_matrix(p) -> np.ndarray:
    """p~ = [[-p0+p3, p1-i p2], [p1+i p2, -p0-p3]]."""
    p0, p1, p2, p3 = p
    return np.array([[-p0 + p3, p1 - 1j * p2], [p1 + 1j * p2, -p0 - p3]])


def x_matrix(x) -> np.ndarray:
    """x = [[-x0-x3, -x1+i x2], [-x1-i x2, -x0+x3]]."""
    x0, x1, x2, x3 = x
    return np.array([[-x0 - x3, -x1 + 1j * x2], [-x1 - 1j * x2, -x0 + x3]])


def x_components(m: np.ndarray) -> np.ndarray:
    """Inverse of x_matrix (real parts; the input is hermitian)."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    return np.array([-(a + d) / 2, -(b + c) / 2, -1j * (b - c) / 2, (d - a) / 2]).real


def lowered(pt: np.ndarray) -> np.ndarray:
    """p = sigma2 p~^T sigma2; for a hermitian p~ this is p in the x layout."""
    return SIGMA2 @ pt.T @ SIGMA2


def det2(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


def sqrt2(a: np.ndarray, ref: np.ndarray | None = None, tol: float = 1e-14) -> np.ndarray:
    """Square root of a 2x2 matrix by Cayley-Hamilton, the root nearest ``ref``.

    Every root has the form (a + s 1)/t with s^2 = det a and t^2 = tr a + 2 s.
    The candidate closest to ``ref`` (the identity by default) is returned,
    which tracks the branch continuously along a path.
    """
    ref = ONE if ref is None else ref
    sd = np.sqrt(complex(det2(a)))
    tr = a[0, 0] + a[1, 1]
    best, dist = None, math.inf
    for s in (sd, -sd):
        t2 = tr + 2 * s
        if abs(t2) <= tol * max(1.0, abs(tr)):
            continue
        t = np.sqrt(t2)
        root = (a + s * ONE) / t
        for cand in (root, -root):
            d = np.abs(cand - ref).max()
            if d < dist:
                best, dist = cand, d
    if best is None:
        raise SingularityError("no square root with a nonzero trace", det2(a))
    return best


def singularity_det(x, p, lam: float) -> float:
    m = lam * x_matrix(x) @ p_matrix(p)
    return det2(ONE - m @ m).real


def f_numeric(x, p, lam: float, ref: np.ndarray | None = None,
              tol: float = SINGULAR_TOL) -> tuple[np.ndarray, np.ndarray]:
    """(f, C) with f = C + i l x p~ and C^2 = 1 - (l x p~)^2.

    Raises SingularityError when det(1 - (l x p~)^2) is within ``tol`` of 0.
    """
    m = lam * x_matrix(x) @ p_matrix(p)
    a = ONE - m @ m
    d = det2(a)
    if abs(d) <= tol:
        raise SingularityError("f is singular", d)
    c = sqrt2(a, ref)
    return c + 1j * m, c


def hamilton_rhs(x, p, lam: float, alpha: float = 1.0,
                 ref: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(dx/dtau, dp/dtau) as component vectors."""
    f, _ = f_numeric(x, p, lam, ref)
    return _xdot(f, p, alpha), np.zeros(4)


def _xdot(f, p, alpha):
    pl = lowered(p_matrix(p))
    return x_components(-alpha * (f @ pl + pl @ f.conj().T))


def collinearity(xdot, p) -> float:
    """max |xdot_mu p_nu - xdot_nu p_mu| with lowered indices."""
    a = ETA * np.asarray(xdot)
    b = ETA * np.asarray(p)
    return float(np.abs(np.outer(a, b) - np.outer(b, a)).max())


def minkowski(u, v) -> float:
    return float(np.dot(ETA * np.asarray(u), np.asarray(v)))


@dataclass
class NumericState:
    x: np.ndarray
    p: np.ndarray
    tau: float = 0.0
    lam: float = 0.0
    m: float = 0.0
    alpha: float = 1.0

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float)
        self.p = np.asarray(self.p, dtype=float)

    @property
    def detp(self) -> float:
        return det2(p_matrix(self.p)).real


@dataclass
class TrajectoryRow:
    tau: float
    x: np.ndarray
    p: np.ndarray
    collinearity: float
    singularity_det: float
    detp: float
    minkowski: float
    proper_time: float
    C: np.ndarray = field(repr=False)


@dataclass
class Trajectory:
    rows: list[TrajectoryRow]
    lam: float
    alpha: float
    singular_tau: float | None = None

    @property
    def proper_time(self) -> float:
        return self.rows[-1].proper_time

    def write_csv(self, out: IO[str]) -> None:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            vals = [r.tau, *r.x, *r.p, r.collinearity, r.singularity_det, r.detp]
            w.writerow([f"{v + 0.0:.17g}" for v in vals])


def _speed(xdot) -> float:
    return math.sqrt(max(-minkowski(xdot, xdot), 0.0))


def domain(x, p, lam: float) -> tuple[int, ...]:
    """Side of the singular surface: signs of 1 - mu^2 over the eigenvalues mu of l x p~.

    Per-eigenvalue signs see a double zero of det(1 - (l x p~)^2), e.g. at
    rest where l x p~ is a multiple of 1; the determinant alone does not
    change sign there.  For massive p the matrix p~ is definite, so x p~ is
    similar to a hermitian matrix and mu is real; otherwise the sign of the
    determinant is used.  A zero entry means the state is on the surface.
    """
    pt = p_matrix(p)
    d = singularity_det(x, p, lam)
    if abs(d) <= SINGULAR_TOL:
        return (0,)
    if det2(pt).real <= 0:
        return (int(np.sign(d)),)
    m = lam * x_matrix(x) @ pt
    half = ((m[0, 0] + m[1, 1]) / 2).real
    disc = math.sqrt(max(half * half - det2(m).real, 0.0))
    q = sorted((1 - (half + disc) ** 2, 1 - (half - disc) ** 2))
    return tuple(int(np.sign(v)) if abs(v) > SINGULAR_TOL else 0 for v in q)


def _rhs(y, p, lam, alpha, ref, side):
    if domain(y[:4], p, lam) != side:
        raise SingularityError("RK4 stage left the starting domain", singularity_det(y[:4], p, lam))
    xdot, _ = hamilton_rhs(y[:4], p, lam, alpha, ref)
    return np.append(xdot, _speed(xdot))


def _rk4(y, h, p, lam, alpha, ref, side):
    k1 = _rhs(y, p, lam, alpha, ref, side)
    k2 = _rhs(y + h / 2 * k1, p, lam, alpha, ref, side)
    k3 = _rhs(y + h / 2 * k2, p, lam, alpha, ref, side)
    k4 = _rhs(y + h * k3, p, lam, alpha, ref, side)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _try_step(y, h, p, lam, alpha, ref, side):
    """RK4 step, or None if it or one of its stages reaches or crosses the singular surface."""
    try:
        y1 = _rk4(y, h, p, lam, alpha, ref, side)
    except SingularityError:
        return None
    if not np.all(np.isfinite(y1)) or domain(y1[:4], p, lam) != side:
        return None
    return y1


def _row(tau, y, p, lam, alpha, ref) -> TrajectoryRow:
    f, c = f_numeric(y[:4], p, lam, ref)
    xdot = _xdot(f, p, alpha)
    return TrajectoryRow(tau, y[:4].copy(), np.asarray(p, dtype=float), collinearity(xdot, p),
                         singularity_det(y[:4], p, lam), det2(p_matrix(p)).real,
                         minkowski(xdot, p), float(y[4]), c)


def integrate(s0: NumericState, dt: float, steps: int, *, backward: bool = False,
              bisections: int = 60) -> Trajectory:
    """Fixed-step RK4 from s0; stops at the singular surface if it is reached.

    The crossing is bracketed by bisection on the size of the last step (a
    step fails when any RK4 stage leaves the starting side), so
    ``singular_tau`` is accurate far below ``dt``.  Each row also carries the
    proper time elapsed since s0 (negative when integrating backward).
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    lam, alpha, p = s0.lam, s0.alpha, s0.p
    h = -dt if backward else dt
    _, ref = f_numeric(s0.x, p, lam)
    side = domain(s0.x, p, lam)
    y = np.append(s0.x, 0.0)
    tau = s0.tau
    rows = [_row(tau, y, p, lam, alpha, ref)]
    for _ in range(steps):
        y1 = _try_step(y, h, p, lam, alpha, ref, side)
        if y1 is None:
            lo, hi = 0.0, 1.0
            for _ in range(bisections):
                mid = (lo + hi) / 2
                if _try_step(y, mid * h, p, lam, alpha, ref, side) is None:
                    hi = mid
                else:
                    lo = mid
            if lo > 0:
                y = _try_step(y, lo * h, p, lam, alpha, ref, side)
                tau += lo * h
                rows.append(_row(tau, y, p, lam, alpha, rows[-1].C))
            return Trajectory(rows, lam, alpha, singular_tau=tau + (hi - lo) / 2 * h)
        y, tau = y1, tau + h
        rows.append(_row(tau, y, p, lam, alpha, ref))
        ref = rows[-1].C
    return Trajectory(rows, lam, alpha)


@dataclass
class PhotonReport:
    lam: float
    alpha: float
    max_collinearity: float
    max_minkowski: float
    steps: int
    singular: bool

    def passed(self, tol: float = 1e-9) -> bool:
        return not self.singular and self.max_collinearity <= tol and self.max_minkowski <= tol


def photon_check(s0: NumericState, dt: float = 1e-3, t_end: float = 10.0,
                 light_tol: float = 1e-12) -> tuple[PhotonReport, Trajectory]:
    """Run a massless trajectory and report the collinearity and x.p residuals."""
    if abs(s0.detp) > light_tol:
        raise ValueError(f"p is not light-like: det p~ = {s0.detp:.6g}")
    steps = int(round(t_end / dt))
    traj = integrate(s0, dt, steps)
    report = PhotonReport(
        s0.lam, s0.alpha,
        max(r.collinearity for r in traj.rows),
        max(abs(r.minkowski) for r in traj.rows),
        len(traj.rows) - 1, traj.singular_tau is not None)
    return report, traj


def lifetime_formula(x, p, lam: float) -> float:
    """|Tr(gamma p) / (l det p~)| with gamma = f / sqrt(det f)."""
    f, _ = f_numeric(x, p, lam)
    gamma = f / np.sqrt(det2(f))
    pt = p_matrix(p)
    return abs(np.trace(gamma @ lowered(pt)) / (lam * det2(pt)))


@dataclass
class LifetimeReport:
    lam: float
    m: float
    alpha: float
    formula: float
    coordinate_time: float
    proper_time: float
    tau_span: float
    steps: int

    @property
    def relative_error(self) -> float:
        return abs(self.coordinate_time - self.formula) / self.formula

    def passed(self, tol: float = 5e-3) -> bool:
        return self.relative_error <= tol


def lifetime_check(s0: NumericState, dt: float = 1e-3,
                   max_steps: int = 1_000_000) -> tuple[LifetimeReport, Trajectory, Trajectory]:
    """Integrate both ways to the singular surface and compare with the formula.

    The measured lifetime is the elapsed coordinate time x0 between the two
    singularities.  Like the proper time (also reported) it does not depend on
    the multiplier alpha; the tau span does, and is reported for reference.
    """
    if s0.lam == 0 or abs(s0.detp) < 1e-12:
        raise ValueError("the lifetime needs l != 0 and a massive momentum")
    fwd = integrate(s0, dt, max_steps)
    bwd = integrate(s0, dt, max_steps, backward=True)
    if fwd.singular_tau is None or bwd.singular_tau is None:
        raise RuntimeError(f"no singularity within {max_steps} steps of size {dt}")
    report = LifetimeReport(
        s0.lam, s0.m, s0.alpha, lifetime_formula(s0.x, s0.p, s0.lam),
        abs(fwd.rows[-1].x[0] - bwd.rows[-1].x[0]),
        abs(fwd.proper_time) + abs(bwd.proper_time), fwd.singular_tau - bwd.singular_tau,
        len(fwd.rows) + len(bwd.rows) - 2)
    return report, fwd, bwd
