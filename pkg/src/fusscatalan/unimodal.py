"""Mode counting for W_{p,r} and the phase transition of mu(2, r).

:func:`mode_scan` works on the exact logarithmic derivative of
``phi -> W(rho(phi))``, so no finite differences are involved; the
family-specific derivative formulas (for r = p, r = p - 1, p = 2r and p = 2)
are exposed separately and used as cross-checks.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .combinatorics import FCParams
from .density import _curve, endpoint_exponents, rho, support
from .errors import AtomError, DomainError, NoFlipError
from .numerics import RootConfig, find_root

__all__ = [
    "ModeReport",
    "TransitionMethod",
    "TransitionResult",
    "ExploratoryWarning",
    "mode_scan",
    "pp_derivative_factor",
    "p_pminus1_derivative_numerator",
    "g_2r_r",
    "h_2_r",
    "check_pp_unimodal",
    "check_p_pminus1_unimodal",
    "check_2r_r_unimodal",
    "transition_equation_A",
    "solve_r0_mu2",
    "phase_transition_scan",
]

NOISE_FLOOR = 1e-9


class ExploratoryWarning(UserWarning):
    """A result without an independent reference value."""


@dataclass(frozen=True)
class ModeReport:
    """Result of :func:`mode_scan`.

    ``sign_pattern`` lists ``(sign, run_length)`` pairs of the x-derivative of
    the density in increasing-x order, after dropping samples below the noise
    floor. A density diverging at the left end has its mode reported at 0.
    """

    params: FCParams
    mode_count: int
    mode_locations_x: tuple[float, ...]
    sign_pattern: tuple[tuple[int, int], ...]
    grid_size: int
    antimode_locations_x: tuple[float, ...] = ()


class TransitionMethod(enum.Enum):
    A_ROOT = "A_ROOT"
    MODE_SCAN = "MODE_SCAN"


@dataclass(frozen=True)
class TransitionResult:
    p: float
    r0_estimate: float
    method: TransitionMethod
    bracket: tuple[float, float]
    tolerance: float
    exploratory: bool = False


# ---------------------------------------------------------------------------
# Mode scan


def _runs(signs: np.ndarray) -> list[list[int]]:
    """Runs ``[sign, first_index, last_index]`` of the non-zero entries."""
    runs: list[list[int]] = []
    for i in np.flatnonzero(signs):
        s = int(signs[i])
        if runs and runs[-1][0] == s:
            runs[-1][2] = int(i)
        else:
            runs.append([s, int(i), int(i)])
    return runs


def _scan_p1(params: FCParams, grid: int):
    r = params.r
    eps = math.pi / (10.0 * grid)
    theta = eps + np.arange(grid) * ((math.pi - 2.0 * eps) / (grid - 1))
    x = np.sin(0.5 * theta) ** 2
    xc = np.cos(0.5 * theta) ** 2
    w = math.sin(r * math.pi) / math.pi * x ** (r - 1.0) * xc ** (-r)
    dlog = (r - 1.0) / x + r / xc
    d_theta = w * dlog * np.sin(theta) / 2.0
    signs = np.sign(dlog).astype(int)
    signs[np.abs(d_theta) < NOISE_FLOOR * np.max(np.abs(w))] = 0

    def refine(i, j):
        f = lambda t: (r - 1.0) / t + r / (1.0 - t)
        return find_root(f, float(x[i]), float(x[j]), RootConfig(x_tol=1e-15))

    return x, signs, refine


def _scan_curve(params: FCParams, grid: int):
    p, r = params.p, params.r
    end = math.pi / p
    eps = end / (10.0 * grid)
    phi = eps + np.arange(grid) * ((end - 2.0 * eps) / (grid - 1))
    x, w, _, dlog_w = _curve(p, r, phi, end - phi)
    d_phi = w * dlog_w
    # rho decreases in phi, so dW/dx has the opposite sign of dlogW/dphi
    signs = -np.sign(dlog_w).astype(int)
    signs[np.abs(d_phi) < NOISE_FLOOR * np.max(np.abs(w))] = 0
    phi, x, signs = phi[::-1], x[::-1], signs[::-1]

    def refine(i, j):
        f = lambda t: float(_curve(p, r, t, end - t)[3])
        root = find_root(f, float(phi[j]), float(phi[i]), RootConfig(x_tol=1e-15))
        return rho(p, root)

    return x, signs, refine


def mode_scan(params: FCParams, grid: int = 20000) -> ModeReport:
    """Count the modes of W_{p,r} from the sign of its derivative on a grid.

    Interior modes are sign changes ``+ -> -`` (refined by root finding).
    An endpoint is a mode when the density diverges there, or when its limit
    there is finite and non-zero and the density decreases away from it.
    """
    if params.is_dirac:
        raise AtomError("mu(1, 1) is a point mass; mode counting does not apply")
    if grid < 10:
        raise DomainError("mode_scan needs grid >= 10")
    if params.p == 1.0:
        x, signs, refine = _scan_p1(params, grid)
    else:
        x, signs, refine = _scan_curve(params, grid)
    runs = _runs(signs)
    supp = support(params)
    left_exp, right_exp = endpoint_exponents(params)

    modes: list[float] = []
    antimodes: list[float] = []
    if runs:
        if left_exp < 0 or (left_exp == 0 and runs[0][0] < 0):
            modes.append(supp.lo)
    for a, b in zip(runs[:-1], runs[1:]):
        loc = refine(a[2], b[1])
        (modes if a[0] > 0 else antimodes).append(loc)
    if runs:
        if right_exp < 0 or (right_exp == 0 and runs[-1][0] > 0):
            modes.append(supp.hi)
    pattern = tuple((s, last - first + 1) for s, first, last in runs)
    return ModeReport(
        params=params,
        mode_count=len(modes),
        mode_locations_x=tuple(float(m) for m in modes),
        sign_pattern=pattern,
        grid_size=grid,
        antimode_locations_x=tuple(float(m) for m in antimodes),
    )


# ---------------------------------------------------------------------------
# Family-specific derivative formulas


def pp_derivative_factor(p: float, phi):
    """``sin^2(p phi) - p sin^2(phi)``, the sign of d/dphi W_{p,p}(rho(phi))."""
    return np.sin(p * phi) ** 2 - p * np.sin(phi) ** 2


def p_pminus1_derivative_numerator(p: float, phi):
    """``(p-1) sin^2(phi) + sin^2((p-1) phi)``, the numerator of the
    phi-derivative of ``pi W_{p,p-1}(rho(phi))``."""
    return (p - 1.0) * np.sin(phi) ** 2 + np.sin((p - 1.0) * phi) ** 2


def g_2r_r(r: float, phi):
    """``G_r(phi)``, with ``d/dphi [pi W_{2r,r}(rho(phi))] = G_r / sin^{r+1}(2 r phi)``."""
    s1, c1 = np.sin(phi), np.cos(phi)
    sr, cr = np.sin(r * phi), np.cos(r * phi)
    sq, cq = np.sin((2 * r - 1) * phi), np.cos((2 * r - 1) * phi)
    s2, c2 = np.sin(2 * r * phi), np.cos(2 * r * phi)
    bracket = (2 * r * r - 3 * r + 1) * s1 * sr * cq + sq * (r * s1 * cr + c1 * sr)
    return sq ** (r - 2) * s2 * bracket - 2 * r * c2 * sq ** (r - 1) * s1 * sr


def h_2_r(r: float, phi):
    """``r cos((r+1) phi) + 2 sin(r phi) sin(phi)``, the sign of the
    phi-derivative of W_{2,r}(rho(phi))."""
    return r * np.cos((r + 1.0) * phi) + 2.0 * np.sin(r * phi) * np.sin(phi)


def _open_grid(end: float, n: int) -> np.ndarray:
    return end * (np.arange(1, n + 1) / (n + 1.0))


def _sign_changes(values: np.ndarray) -> int:
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def check_pp_unimodal(p: float, grid: int = 10000) -> bool:
    """Unimodality of mu(p, p).

    For 1 <= p <= 2 the law is freely self-decomposable and hence unimodal.
    For p > 2 the phi-derivative of the density changes sign exactly once.
    """
    if p < 1.0:
        raise DomainError(f"check_pp_unimodal needs p >= 1, got {p!r}")
    if p <= 2.0:
        return True
    phi = _open_grid(math.pi / p, grid)
    return _sign_changes(pp_derivative_factor(p, phi)) == 1


def check_p_pminus1_unimodal(p: float, grid: int = 10000) -> bool:
    """Unimodality of mu(p, p-1): its density is monotone along the curve.

    Checks that the derivative numerator and the exact log-derivative are
    both positive on a grid. mu(1, 0) is the point mass at 0.
    """
    if p < 1.0:
        raise DomainError(f"check_p_pminus1_unimodal needs p >= 1, got {p!r}")
    if p == 1.0:
        return True
    end = math.pi / p
    phi = _open_grid(end, grid)
    numerator_ok = bool(np.all(p_pminus1_derivative_numerator(p, phi) > 0))
    dlog_w = _curve(p, p - 1.0, phi, end - phi)[3]
    return numerator_ok and bool(np.all(dlog_w > 0))


def check_2r_r_unimodal(r: float, grid: int = 10000) -> bool:
    """Unimodality of mu(2r, r), r >= 1, via ``G_r >= 0`` on (0, pi/(2r))."""
    if r < 1.0:
        raise DomainError(f"check_2r_r_unimodal needs r >= 1, got {r!r}")
    phi = _open_grid(math.pi / (2.0 * r), grid)
    g = g_2r_r(r, phi)
    return bool(np.all(g >= -1e-12 * np.max(np.abs(g))))


# ---------------------------------------------------------------------------
# Phase transition


def transition_equation_A(r: float) -> float:
    """``r sin((3r+3)/(2r+4) pi) + 2 sin(3r/(2r+4) pi) cos(3/(2r+4) pi)``."""
    if not 1.0 <= r <= 2.0:
        raise DomainError(f"transition_equation_A is defined for 1 <= r <= 2, got {r!r}")
    d = 2.0 * r + 4.0
    return r * math.sin((3.0 * r + 3.0) / d * math.pi) + 2.0 * math.sin(
        3.0 * r / d * math.pi
    ) * math.cos(3.0 / d * math.pi)


def solve_r0_mu2(cfg: RootConfig | None = None) -> TransitionResult:
    """The root of :func:`transition_equation_A` in (3/2, 2)."""
    cfg = cfg or RootConfig()
    r0 = find_root(transition_equation_A, 1.5, 2.0, cfg)
    return TransitionResult(2.0, float(r0), TransitionMethod.A_ROOT, (1.5, 2.0), cfg.x_tol)


def phase_transition_scan(
    p: float,
    r_lo: float,
    r_hi: float,
    tol: float = 1e-5,
    grid: int = 20000,
) -> TransitionResult:
    """Bisect on r for the change of ``mode_scan(p, r).mode_count == 1``.

    Assumes the predicate flips once on ``[r_lo, r_hi]``; raises
    :class:`NoFlipError` if it has the same value at both ends. For p != 2
    the result is flagged exploratory and an :class:`ExploratoryWarning` is
    emitted.
    """
    if not r_lo < r_hi:
        raise DomainError("phase_transition_scan needs r_lo < r_hi")
    if not tol > 0:
        raise DomainError("tol must be positive")

    def unimodal(r: float) -> bool:
        return mode_scan(FCParams(p, r), grid).mode_count == 1

    lo, hi = float(r_lo), float(r_hi)
    at_lo = unimodal(lo)
    if at_lo == unimodal(hi):
        raise NoFlipError(
            f"mode_scan unimodality is {at_lo} at both r={lo!r} and r={hi!r} for p={p!r}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if unimodal(mid) == at_lo:
            lo = mid
        else:
            hi = mid
    exploratory = p != 2.0
    if exploratory:
        warnings.warn(
            f"r0({p:g}) = {0.5 * (lo + hi):.6f} has no reference value; exploratory",
            ExploratoryWarning,
            stacklevel=2,
        )
    return TransitionResult(
        float(p), 0.5 * (lo + hi), TransitionMethod.MODE_SCAN, (lo, hi), tol, exploratory
    )
