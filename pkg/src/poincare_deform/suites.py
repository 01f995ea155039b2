"""Named verification suites and their runner."""
from __future__ import annotations

import os
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor

from . import classical, deformed, quantum, spin, spinless, symmetry
from .report import SuiteReport, timed

ORDER_ENV = "POINCARE_DEFORM_ORDER"
SUITE_NAMES = ("core", "symmetry", "spinless", "spin", "quantum")


class ConfigError(ValueError):
    pass


def core_checks(**_) -> list:
    alg = deformed.Algebra()
    return (deformed.relation_checks(alg) + deformed.r_identity_check(alg.ring)
            + deformed.component_checks(alg) + deformed.jacobi_checks(alg)
            + deformed.casimir_checks(alg) + deformed.w_bracket_checks(alg)
            + deformed.commuting_set_checks(alg) + classical.classical_limit_check())


def symmetry_checks(**_) -> list:
    return (symmetry.symmetry_checks() + symmetry.r_replacement_checks()
            + symmetry.multiplicativity_checks() + symmetry.covariance_checks()
            + symmetry.product_jacobi_check())


def spinless_checks(order: int | None = None, **_) -> list:
    return spinless.spinless_checks(order or spinless.DEFAULT_ORDER)


def spin_checks(order: int | None = None, seed: int = 0, **_) -> list:
    return spin.spin_checks(order or spin.DEFAULT_ORDER, seed)


def quantum_checks(**_) -> list:
    return quantum.quantum_checks()


SUITES: dict[str, Callable[..., list]] = {
    "core": core_checks,
    "symmetry": symmetry_checks,
    "spinless": spinless_checks,
    "spin": spin_checks,
    "quantum": quantum_checks,
}


def default_order() -> int | None:
    """Truncation order from the environment, or None for the per-suite default."""
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None


def validate_order(order: int | None) -> None:
    if order is not None and order < spinless.MIN_ORDER:
        raise ConfigError(f"truncation order must be at least {spinless.MIN_ORDER}, got {order}")


def run_suite(name: str, order: int | None = None, seed: int = 0) -> SuiteReport:
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}")
    report = SuiteReport(name, config={"order": order, "seed": seed})
    if name == "spinless":
        report.config["order"] = order or spinless.DEFAULT_ORDER
    elif name == "spin":
        report.config["order"] = order or spin.DEFAULT_ORDER
    else:
        report.config["order"] = None
    with timed(report):
        report.extend(SUITES[name](order=order, seed=seed))
    return report


def run_suites(names, order: int | None = None, seed: int = 0,
               jobs: int = 1) -> list[SuiteReport]:
    """Run suites, in worker processes when ``jobs > 1``; results keep the input order."""
    validate_order(order)
    names = list(names)
    if jobs <= 1 or len(names) == 1:
        return [run_suite(n, order, seed) for n in names]
    with ProcessPoolExecutor(max_workers=min(jobs, len(names))) as pool:
        futures = [pool.submit(run_suite, n, order, seed) for n in names]
        return [f.result() for f in futures]
