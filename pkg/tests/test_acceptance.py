"""Acceptance gate: one pass/fail line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""
import sys
from dataclasses import dataclass, field
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, cached_suite, checks_by_id  # noqa: E402

from poincare_deform import dynamics as dyn  # noqa: E402
from poincare_deform import quantum  # noqa: E402
from poincare_deform.cli import main as cli_main  # noqa: E402
from poincare_deform.report import EXPECTED_NONZERO, PASS  # noqa: E402


@dataclass
class Outcome:
    number: int
    title: str
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def require(self, cond, what: str):
        if not cond:
            self.failures.append(what)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "; ".join(self.failures or self.notes)
        return f"criterion {self.number} [{status}] {self.title}" + (f": {extra}" if extra else "")


def _statuses(outcome, by_id, ids, status=PASS):
    for cid in ids:
        c = by_id.get(cid)
        outcome.require(c is not None and c.status == status,
                        f"{cid} is {c.status if c else 'missing'}")


def _all_pass(outcome, report, prefixes=("",)):
    """Every relational check in ``report`` passes; controls are nonzero as designed."""
    for c in report.checks:
        if c.id.startswith(prefixes):
            outcome.require(c.status in (PASS, EXPECTED_NONZERO), f"{c.id} is {c.status}")


def _bracket_text(*argv) -> str:
    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["bracket", *argv])
    return buf.getvalue().strip() if code == 0 else f"<exit {code}>"


def criterion_1() -> Outcome:
    out = Outcome(1, "exact relations and Jacobi identities")
    core, sym = cached_suite("core"), cached_suite("symmetry")
    elapsed = core.wall_time + sym.wall_time
    c, s = checks_by_id(core), checks_by_id(sym)
    _statuses(out, c, [f"core.relation.{k}" for k in ("pp", "GG", "GGb", "pG", "GbGb", "GbG", "pGb")]
              + ["core.jacobi.all"])
    _statuses(out, s, [f"symmetry.relation.{k}" for k in ("gg", "ggb", "gbg", "gbgb")]
              + ["symmetry.jacobi.all"])
    _statuses(out, c, ["core.jacobi.mutation-control"], EXPECTED_NONZERO)
    out.require(elapsed < 60, f"took {elapsed:.1f} s")
    out.notes.append(f"{elapsed:.1f} s")
    return out


def criterion_2() -> Outcome:
    out = Outcome(2, "Casimirs")
    c, s = checks_by_id(cached_suite("core")), checks_by_id(cached_suite("symmetry"))
    _statuses(out, c, [f"core.casimir.{k}" for k in ("det-p", "det-w", "det-G", "det-Gb")])
    _statuses(out, s, ["symmetry.casimir.det-g", "symmetry.casimir.det-gb"])
    return out


def _criterion_3_parts(literal: bool) -> Outcome:
    out = Outcome(3, "component brackets")
    out.require(_bracket_text("p1", "p2", "--factor") == "2*l*p3*(p0 + p3)", "{p1,p2}")
    for i in (1, 2, 3):
        out.require(_bracket_text(f"p{i}", "p0") == "0", f"{{p{i},p0}}")
    c = checks_by_id(cached_suite("core"))
    _statuses(out, c, ["core.w.component.wi-pj", "core.w.component.wi-p0",
                       "core.w.component.w0-pmu", "core.w.component.wi-wj",
                       "core.w.component.w0-wi"])
    _statuses(out, c, [k for k in c if k.startswith("core.commuting.")])
    if literal:
        # the literal {w_i, w_j} component form, evaluated as written
        _statuses(out, c, ["core.w.component.wi-wj.printed-form"])
    return out


def criterion_3() -> Outcome:
    return _criterion_3_parts(literal=True)


def criterion_4() -> Outcome:
    out = Outcome(4, "covariance under the symmetry group")
    s = checks_by_id(cached_suite("symmetry"))
    _statuses(out, s, [k for k in s if k.startswith("symmetry.covariance.")]
              + ["symmetry.multiplicative.group", "symmetry.jacobi.product"])
    _statuses(out, s, ["symmetry.multiplicative.gamma-fails"], EXPECTED_NONZERO)
    return out


def criterion_5() -> Outcome:
    out = Outcome(5, "classical limit")
    c = checks_by_id(cached_suite("core"))
    ids = [k for k in c if k.startswith("classical.")] + ["core.canonical-limit.table"]
    out.require(len(ids) > 5, "classical checks missing")
    _statuses(out, c, ids)
    return out


def _criterion_6_parts(literal: bool) -> Outcome:
    out = Outcome(6, "spinless realization at N = 8")
    report = cached_suite("spinless")
    seconds = report.wall_time
    by_id = checks_by_id(report)
    out.require(report.config["order"] == 8, f"order {report.config['order']}")
    _all_pass(out, report)
    for c in report.checks:
        # exact coefficient comparisons ("first-order") are not truncated
        if c.status == PASS and c.id.split(".")[1] in ("relation", "f", "gamma", "appendix") \
                and not c.id.endswith("first-order"):
            out.require(c.order is not None, f"{c.id} has no recorded order")
    _statuses(out, by_id, ["spinless.gamma.xG", "spinless.spin-zero.p-f",
                           "spinless.spin-zero.w", "spinless.spin-zero.det-w"])
    if literal:
        # p~ f = f^dagger p~ read literally rather than with (f^dagger)^-1
        _statuses(out, by_id, ["spinless.spin-zero.literal-f-dagger"])
    out.require(seconds < 300, f"took {seconds:.0f} s")
    out.notes.append(f"{seconds:.0f} s")
    return out


def criterion_6() -> Outcome:
    return _criterion_6_parts(literal=True)


def criterion_7() -> Outcome:
    out = Outcome(7, "spin sector")
    report = cached_suite("spin")
    _all_pass(out, report)
    by_id = checks_by_id(report)
    _statuses(out, by_id, ["spin.relation.SS", "spin.relation.pS", "spin.relation.xS",
                           "spin.product.GG", "spin.product.pG", "spin.no-precession"])
    _statuses(out, by_id, ["spin.nonzero.p", "spin.nonzero.x"], EXPECTED_NONZERO)
    return out


PHOTON_LAMBDAS = (0.0, 0.01, 0.1, 1.0)
LIFETIME_STATE = dict(x=[0.0, 0.0, 0.0, 0.0], p=[1.25, 0.75, 0.0, 0.0], lam=0.1, m=1.0)


def criterion_8() -> Outcome:
    out = Outcome(8, "photon collinearity and massive lifetime")
    for lam in PHOTON_LAMBDAS:
        rep, _ = dyn.photon_check(dyn.NumericState([0.1, -0.4, 0.2, 0.3], [1, 0, 0, 1], lam=lam),
                                  dt=1e-3, t_end=10.0)
        out.require(rep.max_collinearity <= 1e-9 and rep.max_minkowski <= 1e-9 and not rep.singular,
                    f"photon at l={lam}: {rep.max_collinearity:.2e}, {rep.max_minkowski:.2e}")
    life, _, _ = dyn.lifetime_check(dyn.NumericState(**LIFETIME_STATE), dt=1e-3)
    out.require(life.relative_error <= 5e-3, f"lifetime relative error {life.relative_error:.2e}")
    out.notes.append(f"lifetime {life.coordinate_time:.6f} vs {life.formula:.6f}")
    return out


def criterion_9() -> Outcome:
    out = Outcome(9, "quantum semiclassics")
    report = cached_suite("quantum")
    _all_pass(out, report)
    q = checks_by_id(report)
    _statuses(out, q, ["quantum.hermiticity.r", "quantum.r-minus-rdagger"]
              + [k for k in q if k.startswith("quantum.cybe.ad-invariant.")])
    for rel in quantum.QUANTUM_RELATIONS:
        _statuses(out, q, [f"quantum.reduction.{rel.label}.hbar0", f"quantum.reduction.{rel.label}.hbar1"])
    _statuses(out, q, [f"quantum.control.{label}-on-{a}{b}" for label, a, b in quantum.MISPAIRINGS],
              EXPECTED_NONZERO)
    _statuses(out, q, ["quantum.cybe.modified"], EXPECTED_NONZERO)
    return out


CRITERIA = (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9)


def _record(outcome: Outcome) -> Outcome:
    ACCEPTANCE_LINES[outcome.number] = outcome.line()
    print(outcome.line())
    return outcome


def test_criterion_1():
    assert _record(criterion_1()).ok


def test_criterion_2():
    assert _record(criterion_2()).ok


@pytest.mark.xfail(strict=True, reason="the literal {w_i, w_j} component form is false")
def test_criterion_3():
    assert _record(criterion_3()).ok


def test_criterion_3_without_literal_form():
    out = _criterion_3_parts(literal=False)
    assert out.ok, out.failures


def test_criterion_4():
    assert _record(criterion_4()).ok


def test_criterion_5():
    assert _record(criterion_5()).ok


@pytest.mark.xfail(strict=True, reason="p~ f = f^dagger p~ taken literally is false at order l")
def test_criterion_6():
    assert _record(criterion_6()).ok


def test_criterion_6_with_inverse_dagger():
    out = _criterion_6_parts(literal=False)
    assert out.ok, out.failures


def test_criterion_7():
    assert _record(criterion_7()).ok


def test_criterion_8():
    assert _record(criterion_8()).ok


def test_criterion_9():
    assert _record(criterion_9()).ok


def main() -> int:
    outcomes = [fn() for fn in CRITERIA]
    for o in outcomes:
        print(o.line())
    return 0 if all(o.ok for o in outcomes) else 1


if __name__ == "__main__":
    sys.exit(main())
