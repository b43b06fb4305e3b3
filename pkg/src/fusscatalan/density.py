"""Density W_{p,r} of mu(p, r).

For p > 1 the density is known along the curve ``x = rho(phi)``,
``0 < phi < pi/p``, where rho decreases from the right support endpoint to 0.
All curve formulas here take both ``phi`` and ``psi = pi/p - phi``: sines that
vanish at ``phi = pi/p`` are computed from ``psi`` so that nothing cancels
near the left end of the support. For p = 1, 0 < r < 1 a closed form is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .combinatorics import FCParams
from .errors import AtomError, DomainError, OutsideSupportError
from .numerics import QuadratureConfig, RootConfig, find_root, integrate

__all__ = [
    "SupportInterval",
    "DensitySample",
    "DensityGrid",
    "support",
    "rho",
    "rho_prime",
    "density_on_curve",
    "density_at",
    "phi_of_x",
    "endpoint_samples",
    "endpoint_exponents",
    "integrate_against_density",
    "moment_by_quadrature",
    "density_grid",
]

_INVERSION_DELTA = 1e-12
_INVERSION_ROOT = RootConfig(x_tol=1e-15, f_tol=1e-300, max_iter=300)


@dataclass(frozen=True)
class SupportInterval:
    lo: float
    hi: float

    def contains_open(self, x: float) -> bool:
        return self.lo < x < self.hi


@dataclass(frozen=True)
class DensitySample:
    """One point ``(phi, x, w)`` of the density curve.

    ``diverges`` marks an endpoint where the density tends to +infinity; only
    :func:`endpoint_samples` produces such samples (with ``w = inf``).
    """

    phi: float
    x: float
    w: float
    diverges: bool = False


@dataclass(frozen=True)
class DensityGrid:
    params: FCParams
    samples: tuple[DensitySample, ...]

    @property
    def phi(self) -> np.ndarray:
        return np.array([s.phi for s in self.samples])

    @property
    def x(self) -> np.ndarray:
        return np.array([s.x for s in self.samples])

    @property
    def w(self) -> np.ndarray:
        return np.array([s.w for s in self.samples])

    def trapezoid_mass(self) -> float:
        """Trapezoid estimate of the mass carried by the grid.

        Each half of the grid is integrated in a variable that removes the
        endpoint power law: near an end where ``W ~ d^e`` with ``e < 0``
        (``d`` the distance to that end) the rule runs in ``v = d^(e+1)``,
        where the integrand is bounded. The estimate therefore falls short of
        1 by the truncated end pieces instead of overshooting. The plain
        x-space rule is :meth:`x_trapezoid_mass`.
        """
        x, w = self.x, self.w
        supp = support(self.params)
        left_exp, right_exp = endpoint_exponents(self.params)
        mid = len(x) // 2
        return _regularized_trapezoid(x[: mid + 1] - supp.lo, w[: mid + 1], left_exp) + (
            _regularized_trapezoid(supp.hi - x[mid:][::-1], w[mid:][::-1], right_exp)
        )

    def x_trapezoid_mass(self) -> float:
        return float(np.trapezoid(self.w, self.x))

    def __len__(self) -> int:
        return len(self.samples)


def _regularized_trapezoid(d: np.ndarray, w: np.ndarray, e: float) -> float:
    # integral of w dd over the sampled d-range, in v = d^(e+1) when e < 0
    if e >= 0.0:
        return float(abs(np.trapezoid(w, d)))
    a = e + 1.0
    return float(abs(np.trapezoid(w * d**-e / a, d**a)))


def support(params: FCParams) -> SupportInterval:
    p = params.p
    if p > 1.0:
        return SupportInterval(0.0, p**p * (p - 1.0) ** (1.0 - p))
    if params.r == 1.0:
        return SupportInterval(1.0, 1.0)
    return SupportInterval(0.0, 1.0)


# ---------------------------------------------------------------------------
# Curve formulas (numpy-aware: accept floats or arrays)


def _sines(p, r, phi, psi):
    """sin/cos of phi, (p-1)phi, p phi, r phi, accurate at both ends."""
    near_left = phi <= psi
    s1 = np.sin(phi)
    c1 = np.cos(phi)
    sp = np.where(near_left, np.sin(p * phi), np.sin(p * psi))
    cp = np.where(near_left, np.cos(p * phi), -np.cos(p * psi))
    a_q = math.pi / p + (p - 1.0) * psi
    sq = np.where(near_left, np.sin((p - 1.0) * phi), np.sin(a_q))
    cq = np.where(near_left, np.cos((p - 1.0) * phi), -np.cos(a_q))
    a_r = math.pi * (p - r) / p + r * psi
    sr = np.where(near_left, np.sin(r * phi), np.sin(a_r))
    cr = np.where(near_left, np.cos(r * phi), -np.cos(a_r))
    return s1, c1, sq, cq, sp, cp, sr, cr


def _curve(p, r, phi, psi):
    """Return ``(x, W, dx/dphi, dlogW/dphi)`` along the curve."""
    s1, c1, sq, cq, sp, cp, sr, cr = _sines(p, r, phi, psi)
    # powers are formed in log space: sq**(p-1) alone underflows for tiny phi
    lsp, ls1, lsq = np.log(sp), np.log(s1), np.log(sq)
    x = np.exp(p * lsp - ls1 - (p - 1.0) * lsq)
    dlog_rho = p * p * cp / sp - c1 / s1 - (p - 1.0) ** 2 * cq / sq
    # sr is negative only for signed densities with r > p
    w = np.sign(sr) * np.exp(
        (p - r - 1.0) * lsq + ls1 + np.log(np.abs(sr)) - (p - r) * lsp
    ) / math.pi
    dlog_w = (p - r - 1.0) * (p - 1.0) * cq / sq + c1 / s1 + r * cr / sr - (p - r) * p * cp / sp
    return x, w, x * dlog_rho, dlog_w


def _mass_element(p, r, phi, psi):
    """``(x, W(x) |dx/dphi|)``, combined in log space.

    At the left end of the support W and dx/dphi are large and tiny powers of
    psi; formed separately they overflow and underflow.
    """
    s1, c1, sq, cq, sp, cp, sr, _ = _sines(p, r, phi, psi)
    with np.errstate(divide="ignore", over="ignore", under="ignore"):
        lsp, ls1, lsq = np.log(sp), np.log(s1), np.log(sq)
        log_x = p * lsp - ls1 - (p - 1.0) * lsq
        dlog_rho = p * p * cp / sp - c1 / s1 - (p - 1.0) ** 2 * cq / sq
        log_w = (p - r - 1.0) * lsq + ls1 + np.log(np.abs(sr)) - (p - r) * lsp - math.log(math.pi)
        element = np.sign(sr) * np.exp(log_w + log_x + np.log(np.abs(dlog_rho)))
        return np.exp(log_x), element


def _log_rho(p, phi, psi):
    s1, _, sq, _, sp, _, _, _ = _sines(p, p, phi, psi)
    return p * np.log(sp) - np.log(s1) - (p - 1.0) * np.log(sq)


def _log_sinc(t: float) -> float:
    """``log(sin(t)/t)`` for ``0 < t < pi``, accurate as t -> 0."""
    if t >= 1.0:
        return math.log(math.sin(t) / t)
    # sin(t)/t - 1 = sum_{k>=1} (-1)^k t^(2k) / (2k+1)!
    t2 = t * t
    term = 1.0
    total = 0.0
    for k in range(1, 12):
        term *= -t2 / ((2 * k) * (2 * k + 1))
        total += term
    return math.log1p(total)


def _check_curve_args(p: float, phi: float) -> float:
    if not p > 1.0:
        raise DomainError(f"the curve parametrization needs p > 1, got p={p!r}")
    end = math.pi / p
    if not 0.0 < phi < end:
        raise DomainError(f"phi must lie in (0, pi/p) = (0, {end!r}), got {phi!r}")
    return end - phi


def rho(p: float, phi: float) -> float:
    """``sin(p phi)^p / (sin(phi) sin((p-1) phi)^(p-1))``, decreasing on (0, pi/p)."""
    psi = _check_curve_args(p, phi)
    return float(_curve(p, p, phi, psi)[0])


def rho_prime(p: float, phi: float) -> float:
    """Derivative of :func:`rho` (negative throughout the domain)."""
    psi = _check_curve_args(p, phi)
    return float(_curve(p, p, phi, psi)[2])


def density_on_curve(params: FCParams, phi: float) -> float:
    """``W_{p,r}(rho(phi))`` for p > 1."""
    psi = _check_curve_args(params.p, phi)
    return float(_curve(params.p, params.r, phi, psi)[1])


def _w_p1(r: float, x: float, one_minus_x: float) -> float:
    return math.sin(r * math.pi) / math.pi * x ** (r - 1.0) * one_minus_x ** (-r)


def phi_of_x(p: float, x: float) -> tuple[float, float]:
    """Invert rho: return ``(phi, pi/p - phi)`` with ``rho(phi) = x``.

    Solves in the logarithm of whichever of phi, psi is the small one, so the
    answer keeps relative accuracy near both ends of the support.
    """
    end = math.pi / p
    half = 0.5 * end
    log_x = math.log(x)
    x_mid = float(_curve(p, p, half, end - half)[0])
    if x >= x_mid:
        # log rho = log(hi) + small(phi); solving for small(phi) keeps the
        # answer accurate where x is close to the right end of the support
        target = log_x - (p * math.log(p) - (p - 1.0) * math.log(p - 1.0))

        def g(u):
            phi = math.exp(u)
            small = (
                p * _log_sinc(p * phi)
                - _log_sinc(phi)
                - (p - 1.0) * _log_sinc((p - 1.0) * phi)
            )
            return small - target

        # the bracket extends past the midpoint so x = x_mid is interior
        u = find_root(g, math.log(_INVERSION_DELTA), math.log(0.75 * end), _INVERSION_ROOT)
        phi = math.exp(u)
        return phi, end - phi

    def g(u):
        psi = math.exp(u)
        return float(_log_rho(p, end - psi, psi)) - log_x

    u = find_root(g, math.log(1e-300), math.log(0.75 * end), _INVERSION_ROOT)
    psi = math.exp(u)
    return end - psi, psi


def density_at(params: FCParams, x: float) -> float:
    """``W_{p,r}(x)`` for x in the open support."""
    if params.is_dirac:
        raise AtomError("mu(1, 1) is the point mass at 1 and has no density")
    supp = support(params)
    if not supp.contains_open(x):
        raise OutsideSupportError(
            f"x={x!r} is outside the open support ({supp.lo!r}, {supp.hi!r})"
        )
    if params.p == 1.0:
        return _w_p1(params.r, x, 1.0 - x)
    phi, psi = phi_of_x(params.p, x)
    return float(_curve(params.p, params.r, phi, psi)[1])


def endpoint_exponents(params: FCParams) -> tuple[float, float]:
    """Exponents e with ``W ~ dist^e`` at the left and right support endpoints."""
    p, r = params.p, params.r
    if params.is_dirac:
        raise AtomError("mu(1, 1) has no density")
    if p == 1.0:
        return r - 1.0, -r
    left = 1.0 / p if params.is_pp else r / p - 1.0
    return left, 0.5


def endpoint_samples(params: FCParams) -> tuple[DensitySample, DensitySample]:
    """Analytic limits of the density at the two support endpoints."""
    supp = support(params)
    left_exp, right_exp = endpoint_exponents(params)
    end = math.pi / params.p

    def sample(phi, x, e):
        if e < 0:
            return DensitySample(phi, x, math.inf, diverges=True)
        return DensitySample(phi, x, 0.0)

    if params.p == 1.0:
        return sample(0.0, supp.lo, left_exp), sample(math.pi, supp.hi, right_exp)
    return sample(end, supp.lo, left_exp), sample(0.0, supp.hi, right_exp)


# ---------------------------------------------------------------------------
# Integration against the density


def integrate_against_density(
    params: FCParams,
    g: Callable[[float], float],
    cfg: QuadratureConfig | None = None,
    breakpoints: Iterable[float] = (),
) -> float:
    """``integral of g(x) W_{p,r}(x) dx`` over the support.

    For p > 1 the integral is taken in phi, ``int g(rho) W(rho) |rho'| dphi``.
    ``breakpoints`` are x-values where ``g`` is not smooth; the integration is
    split there.
    """
    cfg = cfg or QuadratureConfig()
    if params.is_dirac:
        raise AtomError("mu(1, 1) has no density")
    p, r = params.p, params.r
    supp = support(params)
    cuts = sorted(b for b in breakpoints if supp.lo < b < supp.hi)

    if p == 1.0:
        edges = [0.0, *cuts, 1.0]
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            left_gap, right_gap = a, 1.0 - b

            def f(x, dl, dr, left_gap=left_gap, right_gap=right_gap):
                return g(x) * _w_p1(r, left_gap + dl, right_gap + dr)

            total += integrate(f, a, b, cfg, offsets=True)
        return total

    end = math.pi / p
    # x decreases in phi, so breakpoints map to phi in reverse order
    phi_cuts = sorted(phi_of_x(p, c)[0] for c in cuts)
    edges = [0.0, *phi_cuts, end]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        psi_b = end - b

        def f(phi, dl, dr, a=a, psi_b=psi_b):
            ph = a + dl
            ps = psi_b + dr
            x, element = _mass_element(p, r, ph, ps)
            return g(float(x)) * float(element)

        total += integrate(f, a, b, cfg, offsets=True)
    return total


def moment_by_quadrature(
    params: FCParams, k: int, cfg: QuadratureConfig | None = None
) -> float:
    """k-th moment of mu(p, r) by quadrature of ``x^k W_{p,r}(x)``."""
    return integrate_against_density(params, lambda x: x**k, cfg)


def density_grid(params: FCParams, n: int) -> DensityGrid:
    """``n`` density samples, uniform in the curve parameter, sorted by x.

    For p > 1 the parameter is phi in ``(eps, pi/p - eps)`` with
    ``eps = (pi/p) / (10 n)``. For p = 1 the parameter theta runs over
    ``(eps, pi - eps)`` with ``x = sin^2(theta/2)``, which clusters samples at
    both (singular) endpoints.
    """
    if n < 2:
        raise DomainError("a density grid needs n >= 2")
    if params.is_dirac:
        raise AtomError("mu(1, 1) has no density")
    p, r = params.p, params.r
    end = math.pi / p
    eps = end / (10.0 * n)
    t = eps + np.arange(n) * ((end - 2.0 * eps) / (n - 1))
    if p == 1.0:
        x = np.sin(0.5 * t) ** 2
        xc = np.cos(0.5 * t) ** 2
        w = math.sin(r * math.pi) / math.pi * x ** (r - 1.0) * xc ** (-r)
        samples = tuple(DensitySample(float(a), float(b), float(c)) for a, b, c in zip(t, x, w))
        return DensityGrid(params, samples)
    x, w, _, _ = _curve(p, r, t, end - t)
    samples = tuple(
        DensitySample(float(a), float(b), float(c)) for a, b, c in zip(t[::-1], x[::-1], w[::-1])
    )
    return DensityGrid(params, samples)
