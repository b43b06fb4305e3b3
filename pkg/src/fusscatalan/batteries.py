"""Built-in verification batteries behind ``fusscatalan verify``.

Each battery runs one identity over a fixed parameter grid and records, per
check, both sides, their difference and the tolerance applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .combinatorics import FCParams, cumulants_to_moments, free_cumulants, moments
from .density import moment_by_quadrature
from .levy import (
    verify_binom_integral,
    verify_lk_general,
    verify_lk_p_pminus1,
    verify_lk_pp,
    verify_weighted_binom_integral,
)

__all__ = ["Check", "SuiteResult", "SUITES", "run_suite", "run_all"]

BINOM_P = (1.2, 1.5, 1.8, -0.5, 0.5)
WEIGHTED_BINOM_P = (1.2, 1.5, 1.8, 0.5)
BINOM_N = tuple(range(7))
LK_PP_GRID = tuple((p, z) for p in (1.2, 1.5, 1.8) for z in (-0.4, -0.2, -0.1, -0.01))
LK_P_PMINUS1_GRID = tuple(
    (p, z) for p in (1.2, 1.5, 1.8) for z in (-0.3, -0.1, 0.1, 0.2, 0.4)
)
LK_GENERAL_GRID = (
    (3.0, 1.0, -0.1),
    (3.0, 1.0, -0.05),
    (4.0, 1.5, -0.05),
    (4.0, 1.0, -0.05),
    (5.0, 2.0, -0.02),
    (3.5, 1.2, -0.05),
)
MOMENT_GRID = ((2.0, 1.0), (3.0, 1.0), (3.0, 2.0), (1.7, 1.7), (4.0, 1.5))
MOMENT_N = 12
QUADRATURE_K = 6


@dataclass(frozen=True)
class Check:
    label: str
    params: dict
    lhs: float
    rhs: float
    delta: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    checks: tuple[Check, ...]


def _check(label, params, lhs, rhs, tol) -> Check:
    delta = abs(lhs - rhs)
    return Check(label, params, float(lhs), float(rhs), float(delta), float(tol), bool(delta <= tol))


def _binom() -> list[Check]:
    out = []
    for p in BINOM_P:
        for n in BINOM_N:
            lhs, rhs = verify_binom_integral(p, n)
            out.append(_check("binom", {"p": p, "n": n}, lhs, rhs, 1e-8 * max(1.0, abs(rhs))))
    return out


def _weighted_binom() -> list[Check]:
    out = []
    for p in WEIGHTED_BINOM_P:
        for n in BINOM_N:
            lhs, rhs = verify_weighted_binom_integral(p, n)
            out.append(
                _check("weighted-binom", {"p": p, "n": n}, lhs, rhs, 1e-8 * max(1.0, abs(rhs)))
            )
    return out


def _lk_pp() -> list[Check]:
    out = []
    for p, z in LK_PP_GRID:
        lhs, rhs = verify_lk_pp(p, z)
        out.append(_check("lk-pp", {"p": p, "z": z}, lhs, rhs, 1e-8))
    return out


def _lk_p_pminus1() -> list[Check]:
    out = []
    for p, z in LK_P_PMINUS1_GRID:
        comp, rhs = verify_lk_p_pminus1(p, z, form="compensated")
        free, _ = verify_lk_p_pminus1(p, z, form="drift_free")
        params = {"p": p, "z": z}
        out.append(_check("lk-p-pminus1 compensated", params, comp, rhs, 1e-8))
        out.append(_check("lk-p-pminus1 drift-free", params, free, rhs, 1e-8))
        out.append(_check("lk-p-pminus1 forms agree", params, comp, free, 1e-8))
    return out


def _lk_general() -> list[Check]:
    out = []
    for p, r, z in LK_GENERAL_GRID:
        lhs, rhs = verify_lk_general(FCParams(p, r), z)
        out.append(_check("lk-general", {"p": p, "r": r, "z": z}, lhs, rhs, 1e-6))
    return out


def _moment_cumulant() -> list[Check]:
    out = []
    for p, r in MOMENT_GRID:
        params = FCParams(p, r)
        exact = moments(params, MOMENT_N)
        rebuilt = cumulants_to_moments(free_cumulants(params, MOMENT_N))
        for n in range(MOMENT_N + 1):
            lhs, rhs = rebuilt[n], exact[n]
            out.append(
                _check("moment-cumulant", {"p": p, "r": r, "n": n}, lhs, rhs, 1e-10 * abs(rhs))
            )
        for k in range(QUADRATURE_K + 1):
            lhs, rhs = moment_by_quadrature(params, k), exact[k]
            out.append(
                _check(
                    "moment-quadrature", {"p": p, "r": r, "k": k}, lhs, rhs,
                    1e-6 * max(1.0, abs(rhs)),
                )
            )
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "binom": _binom,
    "weighted-binom": _weighted_binom,
    "lk-pp": _lk_pp,
    "lk-p-pminus1": _lk_p_pminus1,
    "lk-general": _lk_general,
    "moment-cumulant": _moment_cumulant,
}


def run_suite(name: str) -> SuiteResult:
    checks = tuple(SUITES[name]())
    return SuiteResult(name, all(c.passed for c in checks), checks)


def run_all() -> list[SuiteResult]:
    return [run_suite(name) for name in SUITES]
