"""Scalar numerical kernel: log-gamma, Beta, real binomials, tanh-sinh
quadrature, bracketed root finding and the closed form of 2F1(1, s; 3; z).

Everything here is a pure function of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from scipy.optimize import brentq

from .errors import BracketError, DomainError, QuadratureError, RootFindingError

__all__ = [
    "QuadratureConfig",
    "RootConfig",
    "log_gamma",
    "beta",
    "binom_real",
    "integrate",
    "find_root",
    "gauss_2f1_1_s_3",
]


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_levels: int = 12

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_levels < 1:
            raise DomainError("max_levels must be >= 1")


@dataclass(frozen=True)
class RootConfig:
    x_tol: float = 1e-12
    f_tol: float = 1e-13
    max_iter: int = 200

    def __post_init__(self):
        if not (self.x_tol > 0 and self.f_tol > 0 and self.max_iter > 0):
            raise DomainError("root-finding tolerances and max_iter must be positive")


# ---------------------------------------------------------------------------
# Gamma and friends

_EULER_GAMMA = 0.57721566490153286061
_HALF_LOG_2PI = 0.91893853320467274178

# zeta(k) - 1 for k = 2..32
_ZETA_MINUS_ONE = (
    0.644934066848226436, 0.202056903159594285, 0.0823232337111381915,
    0.0369277551433699263, 0.0173430619844491397, 0.00834927738192282684,
    0.00407735619794433938, 0.00200839282608221442, 0.000994575127818085337,
    0.000494188604119464559, 0.000246086553308048299, 0.000122713347578489147,
    0.0000612481350587048293, 0.0000305882363070204936, 0.0000152822594086518717,
    0.00000763719763789976227, 0.00000381729326499983986, 0.00000190821271655393893,
    0.000000953962033872796113, 0.000000476932986787806463, 0.00000023845050272773299,
    0.000000119219925965311073, 0.0000000596081890512594796, 0.0000000298035035146522802,
    0.0000000149015548283650412, 0.00000000745071178983542949, 0.00000000372533402478845705,
    0.00000000186265972351304901, 0.000000000931327432419668183, 0.000000000465662906503378407,
    0.000000000232831183367650549,
)

# B_{2k} / (2k (2k-1)) for the Stirling series
_STIRLING = (
    1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0,
    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
)


def _lgamma_2_plus(z: float) -> float:
    # log Gamma(2 + z) for |z| <= 1/2 via the zeta series; no cancellation at z = 0.
    total = 0.0
    zk = -z
    for k, c in enumerate(_ZETA_MINUS_ONE, start=2):
        zk *= -z
        term = c * zk / k
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300):
            break
    return z * (1.0 - _EULER_GAMMA) + total


def log_gamma(x: float) -> float:
    """Natural logarithm of the Gamma function for ``x > 0``.

    Uses a zeta-function series around 1 and 2, upward recurrence on (2.5, 10)
    and the Stirling series beyond, so the result keeps full relative accuracy
    near the zeros of log Gamma at 1 and 2.
    """
    x = float(x)
    if not x > 0 or math.isinf(x):
        raise DomainError(f"log_gamma requires a finite x > 0, got {x!r}")
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x
        return log_gamma(x + 1.0) - math.log(x)
    if x <= 1.5:
        return _lgamma_2_plus(x - 1.0) - math.log1p(x - 1.0)
    if x <= 2.5:
        return _lgamma_2_plus(x - 2.0)
    if x < 10.0:
        m = math.ceil(x - 2.5)
        base = x - m
        acc = 0.0
        for j in range(m):
            acc += math.log(base + j)
        return log_gamma(base) + acc
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    power = inv
    for c in _STIRLING:
        series += c * power
        power *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series


def beta(a: float, b: float) -> float:
    """Euler Beta function B(a, b) for positive arguments."""
    if not (a > 0 and b > 0):
        raise DomainError(f"beta requires a, b > 0, got ({a!r}, {b!r})")
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def binom_real(p: float, n: int) -> float:
    """Generalized binomial coefficient ``p (p-1) ... (p-n+1) / n!``.

    Computed as an n-term product, so the sign is exact. Integer ``p`` is
    routed through exact integer arithmetic.
    """
    n = int(n)
    if n < 0:
        raise DomainError("binom_real requires n >= 0")
    if float(p).is_integer():
        ip = int(p)
        if ip >= 0:
            return float(math.comb(ip, n))
        # C(-m, n) = (-1)^n C(m + n - 1, n)
        return float((-1) ** n * math.comb(-ip + n - 1, n))
    value = 1.0
    for i in range(n):
        value *= (p - i) / (i + 1)
    return value


# ---------------------------------------------------------------------------
# Quadrature

_T_MAX = 6.5


@lru_cache(maxsize=None)
def _de_nodes(level: int) -> tuple[tuple[float, float], ...]:
    """(fraction, weight) pairs that first appear at ``level``.

    ``fraction`` is the distance from the nearest endpoint of the unit
    interval, ``weight`` the derivative of the tanh-sinh map there. The centre
    node (fraction 1/2) is listed once; every other pair stands for two
    mirrored abscissae.
    """
    h = 2.0 ** -level
    if level == 0:
        ts = [float(k) for k in range(0, int(_T_MAX) + 1)]
    else:
        ts = [h * k for k in range(1, int(_T_MAX / h) + 1, 2)]
    nodes = []
    for t in ts:
        u = 0.5 * math.pi * math.sinh(t)
        e = math.exp(-2.0 * u)
        frac = e / (1.0 + e)
        if frac < 1e-300:
            break
        weight = math.pi * math.cosh(t) * e / (1.0 + e) ** 2
        nodes.append((frac, weight))
    return tuple(nodes)


def integrate(
    f: Callable[..., float],
    a: float,
    b: float,
    cfg: QuadratureConfig | None = None,
    *,
    offsets: bool = False,
) -> float:
    """Integrate ``f`` over the open interval ``(a, b)`` by tanh-sinh quadrature.

    The endpoints are never evaluated, so integrable power-law singularities
    there are fine. With ``offsets=True`` the integrand is called as
    ``f(x, x - a, b - x)`` where both offsets are computed without rounding
    against the endpoint; use this when ``f`` is singular at an endpoint
    other than zero.

    Raises
    ------
    QuadratureError
        If the level-to-level change does not fall below the tolerance within
        ``cfg.max_levels`` refinements, or ``f`` returns a non-finite value.
    """
    cfg = cfg or QuadratureConfig()
    a = float(a)
    b = float(b)
    if a == b:
        return 0.0
    if not a < b:
        raise DomainError("integrate requires a < b")
    width = b - a

    def call(x: float, dl: float, dr: float) -> float:
        v = f(x, dl, dr) if offsets else f(x)
        v = float(v)
        if not math.isfinite(v):
            raise QuadratureError(f"integrand is not finite at x={x!r}")
        return v

    def level_sum(level: int) -> float:
        s = 0.0
        for frac, weight in _de_nodes(level):
            if level == 0 and frac == 0.5:
                s += weight * call(a + 0.5 * width, 0.5 * width, 0.5 * width)
                continue
            d = width * frac
            if d == 0.0:
                continue
            xl = a + d
            xr = b - d
            if offsets or (xl != a and xl != b):
                s += weight * call(xl, d, width - d)
            if offsets or (xr != a and xr != b):
                s += weight * call(xr, width - d, d)
        return s

    total = level_sum(0)
    previous = total * width
    for level in range(1, cfg.max_levels + 1):
        total += level_sum(level)
        estimate = total * width * 2.0 ** -level
        err = abs(estimate - previous)
        if level >= 3 and err <= max(cfg.abs_tol, cfg.rel_tol * abs(estimate)):
            return estimate
        previous = estimate
    raise QuadratureError(
        f"tanh-sinh did not converge in {cfg.max_levels} levels "
        f"(last estimate {previous!r}, change {err!r})"
    )


# ---------------------------------------------------------------------------
# Root finding


def find_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: RootConfig | None = None,
) -> float:
    """Root of ``f`` in the bracket ``[lo, hi]`` (Brent's method).

    Returns an endpoint directly when ``|f|`` there is within ``cfg.f_tol``.
    """
    cfg = cfg or RootConfig()
    flo = f(lo)
    fhi = f(hi)
    if abs(flo) <= cfg.f_tol:
        return lo
    if abs(fhi) <= cfg.f_tol:
        return hi
    if flo * fhi > 0:
        raise BracketError(
            f"f(lo) and f(hi) have the same sign: f({lo!r})={flo!r}, f({hi!r})={fhi!r}"
        )
    root, info = brentq(
        f, lo, hi, xtol=cfg.x_tol, maxiter=cfg.max_iter, full_output=True, disp=False
    )
    if not info.converged:
        raise RootFindingError(f"brentq did not converge: {info.flag}")
    return root


# ---------------------------------------------------------------------------
# Gauss hypergeometric special case

_SERIES_RADIUS = 0.5


def _2f1_1_s_3_series(s: float, z: float) -> float:
    # sum_n (s)_n / (3)_n z^n; ratio of successive terms -> z
    term = 1.0
    total = 1.0
    n = 0
    while True:
        term *= (s + n) / (3.0 + n) * z
        total += term
        n += 1
        if abs(term) <= 1e-17 * abs(total) or n > 500:
            return total


def gauss_2f1_1_s_3(s: float, z: float) -> float:
    """``2F1(1, s; 3; z)`` for ``s > 0``, ``s`` not 1 or 2, real ``z < 1``.

    Closed form ``-2((s-2)z + 1 - (1-z)^(2-s)) / ((s-2)(s-1)z^2)``; for
    ``|z| < 1/2`` the power series is summed instead because the closed form
    cancels to second order at the origin.
    """
    if not s > 0 or s == 1.0 or s == 2.0:
        raise DomainError(f"gauss_2f1_1_s_3 requires s > 0 and s not in {{1, 2}}, got {s!r}")
    if not z < 1.0:
        raise DomainError(f"gauss_2f1_1_s_3 requires z < 1, got {z!r}")
    if abs(z) < _SERIES_RADIUS:
        return _2f1_1_s_3_series(s, z)
    num = (s - 2.0) * z + 1.0 - (1.0 - z) ** (2.0 - s)
    return -2.0 * num / ((s - 2.0) * (s - 1.0) * z * z)
