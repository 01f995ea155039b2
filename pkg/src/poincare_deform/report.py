"""Verification reports.

A check either passes, fails, or is an ``expected-nonzero`` control: a
residual that must NOT vanish (mutation controls and no-go results).  An
expected-nonzero control that comes out zero is recorded as a failure.
"""
from __future__ import annotations

import json
import time
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field

from .algebra.matrix import Matrix
from .algebra.ring import Poly

SCHEMA_VERSION = 1

PASS = "pass"
FAIL = "fail"
EXPECTED_NONZERO = "expected-nonzero"


def summarize(residual) -> str:
    """Short description of a residual (polynomial, matrix or list)."""
    if residual is None:
        return "0"
    if isinstance(residual, Poly):
        if residual.is_zero():
            return "0"
        text = str(residual)
        return text if len(text) <= 80 else f"{len(residual)} terms, e.g. {text[:60]}..."
    if isinstance(residual, Matrix):
        nz = residual.nonzero_entries()
        if not nz:
            return "0"
        i, j, e = nz[0]
        return f"{len(nz)} nonzero entries; first at ({i},{j}): {summarize(e)}"
    if isinstance(residual, (list, tuple)):
        nz = [r for r in residual if not _is_zero(r)]
        if not nz:
            return "0"
        return f"{len(nz)} of {len(residual)} nonzero; first: {summarize(nz[0])}"
    return str(residual)


def _is_zero(x) -> bool:
    if x is None:
        return True
    if isinstance(x, (Poly, Matrix)):
        return x.is_zero()
    if isinstance(x, (list, tuple)):
        return all(_is_zero(y) for y in x)
    return x == 0


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    order: int | None = None
    residual: str = "0"
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status in (PASS, EXPECTED_NONZERO)


def zero_check(id: str, anchor: str, residual, order: int | None = None,
               detail: str = "") -> Check:
    """Passes iff the residual vanishes identically."""
    status = PASS if _is_zero(residual) else FAIL
    return Check(id, anchor, status, order, summarize(residual), detail)


def nonzero_check(id: str, anchor: str, residual, order: int | None = None,
                  detail: str = "") -> Check:
    """Passes iff the residual is NOT identically zero."""
    status = FAIL if _is_zero(residual) else EXPECTED_NONZERO
    return Check(id, anchor, status, order, summarize(residual), detail)


def bool_check(id: str, anchor: str, ok: bool, detail: str = "",
               order: int | None = None, residual: str = "") -> Check:
    return Check(id, anchor, PASS if ok else FAIL, order, residual, detail)


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check]) -> None:
        self.checks.extend(checks)

    @property
    def totals(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, EXPECTED_NONZERO: 0}
        for c in self.checks:
            out[c.status] += 1
        out["total"] = len(self.checks)
        return out

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [asdict(c) for c in sorted(self.checks, key=lambda c: c.id)],
            "totals": self.totals,
            "wall_time": round(self.wall_time, 3),
            "config": self.config,
        }

    def to_text(self) -> str:
        lines = [f"== {self.suite} =="]
        for c in sorted(self.checks, key=lambda c: c.id):
            order = f" [mod l^{c.order}]" if c.order is not None else ""
            lines.append(f"{c.status.upper():17s} {c.id}{order}  ({c.anchor})")
            if not c.ok or c.status == EXPECTED_NONZERO:
                lines.append(f"{'':17s} residual: {c.residual}")
            if c.detail:
                lines.append(f"{'':17s} {c.detail}")
        t = self.totals
        lines.append(
            f"-- {t['total']} checks: {t[PASS]} pass, {t[EXPECTED_NONZERO]} expected-nonzero, "
            f"{t[FAIL]} fail ({self.wall_time:.2f}s)"
        )
        return "\n".join(lines)


class timed:
    """Context manager filling ``report.wall_time``."""

    def __init__(self, report: SuiteReport):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time += time.perf_counter() - self.t0
        return False


def combined_json(reports: list[SuiteReport], config: dict) -> str:
    totals = {PASS: 0, FAIL: 0, EXPECTED_NONZERO: 0, "total": 0}
    for r in reports:
        for k, v in r.totals.items():
            totals[k] += v
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "suites": [r.to_dict() for r in reports],
        "totals": totals,
        "ok": all(r.ok for r in reports),
    }
    return json.dumps(doc, indent=2, sort_keys=False)
