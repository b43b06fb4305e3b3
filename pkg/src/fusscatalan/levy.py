"""Free cumulant transforms and free Levy-Khintchine data of mu(p, r).

Four Levy measures appear, each absolutely continuous:

* ``MU_PP``: mu(p, p), 1 < p < 2, density ``k_p(x)/|x|`` on (-1, 0);
* ``MU_PR_GENERAL``: mu(p, r), 0 < r <= min(p/2, p-1), density
  ``W_{p-r,r}`` on the support of mu(p-r, r);
* ``MU_P_PMINUS1``: mu(p, p-1), 1 < p < 2, density
  ``-sin(p pi)/pi x^(p-2) (1-x)^(1-p)`` on (0, 1);
* ``REMAINDER_PP``: the remainder rho_{p,c} in the free self-decomposition
  of mu(p, p), density ``k_{p,c}(x)/|x|`` on (-1, 0).

All identities are checked on the real axis only.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import density as _density
from .combinatorics import FCParams, fuss_catalan_number
from .errors import (
    AtomError,
    DomainError,
    OutsideSupportError,
    SeriesDivergenceWarning,
    UnsupportedFamilyError,
)
from .numerics import QuadratureConfig, binom_real, integrate

__all__ = [
    "LevyFamily",
    "LevyDensitySpec",
    "FreeTriplet",
    "GeneratingPair",
    "SigmaDensity",
    "free_triplet",
    "r_transform_closed",
    "r_transform_series",
    "cumulant_growth",
    "levy_density",
    "verify_binom_integral",
    "verify_weighted_binom_integral",
    "verify_lk_pp",
    "verify_lk_p_pminus1",
    "verify_lk_general",
    "triplet_to_generating_pair",
]


class LevyFamily(enum.Enum):
    MU_PP = "MU_PP"
    MU_PR_GENERAL = "MU_PR_GENERAL"
    MU_P_PMINUS1 = "MU_P_PMINUS1"
    REMAINDER_PP = "REMAINDER_PP"


def _in_general_region(p: float, r: float) -> bool:
    return 0.0 < r <= min(p / 2.0, p - 1.0)


@dataclass(frozen=True)
class LevyDensitySpec:
    """A Levy measure from one of the four families, by its parameters.

    ``c`` is used by ``REMAINDER_PP`` only.
    """

    family: LevyFamily
    params: FCParams
    c: Optional[float] = None

    def __post_init__(self):
        p, r = self.params.p, self.params.r
        fam = self.family
        if fam is LevyFamily.MU_PP:
            if not (self.params.is_pp and 1.0 < p < 2.0):
                raise DomainError(f"MU_PP needs r = p with 1 < p < 2, got ({p!r}, {r!r})")
        elif fam is LevyFamily.REMAINDER_PP:
            if not (self.params.is_pp and 1.0 < p < 2.0):
                raise DomainError(f"REMAINDER_PP needs r = p with 1 < p < 2, got ({p!r}, {r!r})")
            if self.c is None or not 0.0 < self.c < 1.0:
                raise DomainError(f"REMAINDER_PP needs c in (0, 1), got {self.c!r}")
        elif fam is LevyFamily.MU_P_PMINUS1:
            if not (self.params.is_p_pminus1 and 1.0 < p < 2.0):
                raise DomainError(f"MU_P_PMINUS1 needs r = p - 1 with 1 < p < 2, got ({p!r}, {r!r})")
        elif fam is LevyFamily.MU_PR_GENERAL:
            if not _in_general_region(p, r):
                raise DomainError(f"MU_PR_GENERAL needs 0 < r <= min(p/2, p-1), got ({p!r}, {r!r})")
            if p - r == 1.0 and r == 1.0:
                raise AtomError("the Levy measure of mu(2, 1) is the point mass at 1")
        if fam is not LevyFamily.REMAINDER_PP and self.c is not None:
            raise DomainError("c is only meaningful for REMAINDER_PP")

    # -- geometry ---------------------------------------------------------

    @property
    def support(self) -> tuple[float, float]:
        fam = self.family
        if fam in (LevyFamily.MU_PP, LevyFamily.REMAINDER_PP):
            return (-1.0, 0.0)
        if fam is LevyFamily.MU_P_PMINUS1:
            return (0.0, 1.0)
        q, r = self.params.p - self.params.r, self.params.r
        supp = _density.support(FCParams(q, r))
        return (supp.lo, supp.hi)

    @property
    def _coef(self) -> float:
        # -sin(p pi)/pi, positive for 1 < p < 2
        return -math.sin(self.params.p * math.pi) / math.pi

    @property
    def _mixing(self) -> FCParams:
        # mu(p - r, r), whose density is the general Levy density
        return FCParams(self.params.p - self.params.r, self.params.r)

    # -- evaluation -------------------------------------------------------

    def log_density_gaps(self, lg: float, rg: float) -> float:
        """Log of the density at distances ``lg``, ``rg`` from the support ends.

        Working in logs keeps ``g(x) nu(x)`` finite near x = 0, where nu
        itself overflows although the product is integrable.
        """
        fam = self.family
        p = self.params.p
        log_coef = math.log(self._coef) if fam is not LevyFamily.MU_PR_GENERAL else 0.0
        if fam is LevyFamily.MU_PP:
            y = rg  # y = -x
            return log_coef + p * math.log(lg) - (p + 1.0) * math.log(y)
        if fam is LevyFamily.REMAINDER_PP:
            y = rg
            # (1+x)^p - (c+x)^p, formed in logs: lg^p underflows near x = -1
            log_bracket = p * math.log(lg)
            if y < self.c:
                log_bracket += math.log1p(-(((self.c - y) / lg) ** p))
            return log_coef + log_bracket - (p + 1.0) * math.log(y)
        if fam is LevyFamily.MU_P_PMINUS1:
            return log_coef + (p - 2.0) * math.log(lg) + (1.0 - p) * math.log(rg)
        mix = self._mixing
        if mix.p == 1.0:
            r = mix.r
            return (
                math.log(math.sin(r * math.pi) / math.pi)
                + (r - 1.0) * math.log(lg)
                - r * math.log(rg)
            )
        return math.log(_density.density_at(mix, lg))

    def density_gaps(self, lg: float, rg: float) -> float:
        """Density at the point with distances ``lg``, ``rg`` to the support ends."""
        return math.exp(self.log_density_gaps(lg, rg))

    def density(self, x: float) -> float:
        lo, hi = self.support
        if not lo < x < hi:
            raise OutsideSupportError(f"x={x!r} is outside the Levy support ({lo!r}, {hi!r})")
        return self.density_gaps(x - lo, hi - x)

    def k(self, x: float) -> float:
        """``|x|`` times the Levy density (k_p, k_{p,c} or k_{p,r})."""
        return abs(x) * self.density(x)

    # -- integration ------------------------------------------------------

    def integrate(
        self,
        g: Callable[[float], float],
        cfg: QuadratureConfig | None = None,
        breakpoints: Iterable[float] = (),
    ) -> float:
        """``integral of g(x) nu(dx)``; ``g`` must tame the singularity at 0."""
        cfg = cfg or QuadratureConfig()
        lo, hi = self.support
        cuts = set(b for b in breakpoints if lo < b < hi)
        if self.family is LevyFamily.REMAINDER_PP:
            cuts.add(-self.c)
        if self.family is LevyFamily.MU_PR_GENERAL and self._mixing.p > 1.0:
            return _density.integrate_against_density(self._mixing, g, cfg, sorted(cuts))
        edges = [lo, *sorted(cuts), hi]
        total = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            left_gap, right_gap = a - lo, hi - b

            def f(x, dl, dr, left_gap=left_gap, right_gap=right_gap):
                gx = g(x)
                if gx == 0.0:
                    return 0.0
                log_nu = self.log_density_gaps(left_gap + dl, right_gap + dr)
                return math.copysign(math.exp(math.log(abs(gx)) + log_nu), gx)

            total += integrate(f, a, b, cfg, offsets=True)
        return total


@dataclass(frozen=True)
class FreeTriplet:
    """Free Levy-Khintchine triplet ``(a, eta, nu)``.

    With ``drift_free=False`` the representation is
    ``R(z) = a z^2 + eta z + int (1/(1-zx) - 1 - zx 1_[-1,1](x)) nu(dx)``.
    With ``drift_free=True`` the compensator is dropped,
    ``R(z) = a z^2 + eta z + int (1/(1-zx) - 1) nu(dx)``, which is how the
    general region is naturally written.
    """

    a: float
    eta: float
    levy: Optional[LevyDensitySpec] = None
    drift_free: bool = False

    def __post_init__(self):
        if self.a < 0:
            raise DomainError(f"the semicircular coefficient must be >= 0, got {self.a!r}")

    def compensated_eta(self, cfg: QuadratureConfig | None = None) -> float:
        """Drift in the [-1, 1]-compensated convention."""
        if not self.drift_free or self.levy is None:
            return self.eta
        return self.eta + self.levy.integrate(
            lambda t: t if -1.0 <= t <= 1.0 else 0.0, cfg, breakpoints=(-1.0, 1.0)
        )


@dataclass(frozen=True)
class SigmaDensity:
    """Absolutely continuous part ``t^2/(1+t^2) nu(dt)`` of sigma."""

    levy: object

    def __call__(self, t: float) -> float:
        return t * t / (1.0 + t * t) * self.levy.density(t)

    def total_mass(self, cfg: QuadratureConfig | None = None) -> float:
        return self.levy.integrate(lambda t: t * t / (1.0 + t * t), cfg)


@dataclass(frozen=True)
class GeneratingPair:
    gamma: float
    sigma_atom_at_zero: float
    sigma_density: Optional[SigmaDensity] = None

    def sigma_total_mass(self, cfg: QuadratureConfig | None = None) -> float:
        extra = 0.0 if self.sigma_density is None else self.sigma_density.total_mass(cfg)
        return self.sigma_atom_at_zero + extra


def free_triplet(params: FCParams) -> FreeTriplet:
    """Free Levy-Khintchine triplet of a freely infinitely divisible mu(p, r)."""
    p, r = params.p, params.r
    if params.is_pp:
        if p == 1.0:
            return FreeTriplet(0.0, 1.0)
        if p == 2.0:
            return FreeTriplet(1.0, 2.0)
        if 1.0 < p < 2.0:
            return FreeTriplet(0.0, p, LevyDensitySpec(LevyFamily.MU_PP, params))
    elif _in_general_region(p, r):
        if params.is_p_pminus1 and p < 2.0:
            return FreeTriplet(0.0, p - 1.0, LevyDensitySpec(LevyFamily.MU_P_PMINUS1, params))
        if p - r == 1.0 and r == 1.0:
            raise UnsupportedFamilyError(
                "mu(2, 1) has Levy measure delta_1, which has no density representation here"
            )
        return FreeTriplet(
            0.0, 0.0, LevyDensitySpec(LevyFamily.MU_PR_GENERAL, params), drift_free=True
        )
    raise UnsupportedFamilyError(f"mu({p!r}, {r!r}) is not freely infinitely divisible")


# ---------------------------------------------------------------------------
# R-transform


def r_transform_closed(params: FCParams, z: float) -> float:
    """Closed-form free cumulant transform for r = p and r = p - 1."""
    p = params.p
    if params.is_pp:
        if not z > -1.0:
            raise DomainError(f"(1+z)^p - 1 needs z > -1, got {z!r}")
        return (1.0 + z) ** p - 1.0
    if params.is_p_pminus1:
        if not z < 1.0:
            raise DomainError(f"(1-z)^(1-p) - 1 needs z < 1, got {z!r}")
        return (1.0 - z) ** (1.0 - p) - 1.0
    raise UnsupportedFamilyError(
        f"no closed form for the R-transform of mu({p!r}, {params.r!r})"
    )


def cumulant_growth(params: FCParams) -> float:
    """Exponential growth rate G of the free cumulants, ``|r_n| ~ G^n``."""
    q = params.p - params.r
    return q**q * abs(1.0 - q) ** (1.0 - q)


def r_transform_series(
    params: FCParams, z: float, n_terms: int = 60, *, return_bound: bool = False
):
    """Truncated series ``sum_{n=1}^{n_terms} r_n z^n``.

    Emits :class:`SeriesDivergenceWarning` when ``|z| G >= 1/2``. With
    ``return_bound=True`` returns ``(value, tail_bound)``, where the bound is
    the geometric tail of the last term's decay rate.
    """
    growth = cumulant_growth(params)
    ratio = abs(z) * growth
    if ratio >= 0.5:
        warnings.warn(
            f"|z| * G = {ratio:.3g} is outside the disc where the cumulant series "
            "is known to converge fast",
            SeriesDivergenceWarning,
            stacklevel=2,
        )
    q, r = params.p - params.r, params.r
    total = 0.0
    zn = 1.0
    last = 0.0
    for n in range(1, n_terms + 1):
        zn *= z
        last = fuss_catalan_number(q, r, n) * zn
        total += last
    if not return_bound:
        return total
    bound = abs(last) * ratio / (1.0 - ratio) if ratio < 1.0 else math.inf
    return total, bound


def levy_density(spec: LevyDensitySpec, x: float) -> float:
    return spec.density(x)


# ---------------------------------------------------------------------------
# Integral identities


def verify_binom_integral(
    p: float, n: int, cfg: QuadratureConfig | None = None
) -> tuple[float, float]:
    """Quadrature of ``int_{-1}^0 x^n (x sin(p pi)/pi) ((1+x)/(-x))^p dx``
    against ``binom(p, n+2)``, for p in (-1, 2) minus {0, 1}."""
    if not (-1.0 < p < 2.0) or p in (0.0, 1.0):
        raise DomainError(f"p must lie in (-1, 2) minus {{0, 1}}, got {p!r}")
    if n < 0:
        raise DomainError("n must be >= 0")
    s = math.sin(p * math.pi) / math.pi
    sign = -1.0 if n % 2 == 0 else 1.0  # (-1)^(n+1)

    def f(y, dl, dr):
        return dl ** (n + 1.0 - p) * dr**p

    lhs = sign * s * integrate(f, 0.0, 1.0, cfg, offsets=True)
    return lhs, binom_real(p, n + 2)


def verify_weighted_binom_integral(
    p: float, n: int, cfg: QuadratureConfig | None = None
) -> tuple[float, float]:
    """Quadrature of ``-int_{-1}^0 x^n p sin(p pi)/pi ((1+x)/(-x))^(p-1) dx``
    against ``(n+2) binom(p, n+2)``, for p in (0, 2) minus {1}."""
    if not (0.0 < p < 2.0) or p == 1.0:
        raise DomainError(f"p must lie in (0, 2) minus {{1}}, got {p!r}")
    if n < 0:
        raise DomainError("n must be >= 0")
    s = p * math.sin(p * math.pi) / math.pi
    sign = -1.0 if n % 2 == 0 else 1.0  # -(-1)^n

    def f(y, dl, dr):
        return dl ** (n + 1.0 - p) * dr ** (p - 1.0)

    lhs = sign * s * integrate(f, 0.0, 1.0, cfg, offsets=True)
    return lhs, (n + 2) * binom_real(p, n + 2)


def verify_lk_pp(
    p: float, z: float, cfg: QuadratureConfig | None = None
) -> tuple[float, float]:
    """Levy-Khintchine form of mu(p, p), 1 < p < 2, against ``(1+z)^p - 1``.

    On (-1, 0) the compensated kernel ``1/(1-zx) - 1 - zx`` equals
    ``z^2 x^2 / (1 - zx)``; that form is integrated.
    """
    if not 1.0 < p < 2.0:
        raise DomainError(f"p must lie in (1, 2), got {p!r}")
    if not -0.5 < z <= 0.0:
        raise DomainError(f"z must lie in (-0.5, 0], got {z!r}")
    params = FCParams(p, p)
    spec = LevyDensitySpec(LevyFamily.MU_PP, params)
    if z == 0.0:
        return 0.0, r_transform_closed(params, z)
    lhs = p * z + spec.integrate(lambda x: z * z * x * x / (1.0 - z * x), cfg)
    return lhs, r_transform_closed(params, z)


def verify_lk_p_pminus1(
    p: float, z: float, cfg: QuadratureConfig | None = None, form: str = "compensated"
) -> tuple[float, float]:
    """Levy-Khintchine form of mu(p, p-1), 1 < p < 2, against ``(1-z)^(1-p) - 1``.

    ``form="compensated"`` uses drift ``p - 1`` with kernel ``z^2 x^2/(1-zx)``;
    ``form="drift_free"`` uses kernel ``zx/(1-zx)`` and no drift.
    """
    if not 1.0 < p < 2.0:
        raise DomainError(f"p must lie in (1, 2), got {p!r}")
    if not -0.5 < z < 0.5:
        raise DomainError(f"z must lie in (-0.5, 0.5), got {z!r}")
    params = FCParams(p, p - 1.0)
    spec = LevyDensitySpec(LevyFamily.MU_P_PMINUS1, params)
    rhs = r_transform_closed(params, z)
    if z == 0.0:
        return 0.0, rhs
    if form == "compensated":
        lhs = (p - 1.0) * z + spec.integrate(lambda x: z * z * x * x / (1.0 - z * x), cfg)
    elif form == "drift_free":
        lhs = spec.integrate(lambda x: z * x / (1.0 - z * x), cfg)
    else:
        raise DomainError(f"form must be 'compensated' or 'drift_free', got {form!r}")
    return lhs, rhs


def verify_lk_general(
    params: FCParams, z: float, cfg: QuadratureConfig | None = None, n_terms: int = 80
) -> tuple[float, float]:
    """``int (1/(1-zx) - 1) W_{p-r,r}(x) dx`` against the cumulant series.

    Requires p - r > 1 and r <= min(p/2, p-1), and z in (-0.5, 0] inside the
    disc ``|z| G < 1/2``.
    """
    p, r = params.p, params.r
    if not (p - r > 1.0 and _in_general_region(p, r)):
        raise DomainError(f"need p - r > 1 and r <= min(p/2, p-1), got ({p!r}, {r!r})")
    if not -0.5 < z <= 0.0:
        raise DomainError(f"z must lie in (-0.5, 0], got {z!r}")
    if abs(z) * cumulant_growth(params) >= 0.5:
        raise DomainError(f"z={z!r} is outside the series disc |z| G < 1/2")
    if z == 0.0:
        return 0.0, 0.0
    spec = LevyDensitySpec(LevyFamily.MU_PR_GENERAL, params)
    lhs = spec.integrate(lambda x: z * x / (1.0 - z * x), cfg)
    return lhs, r_transform_series(params, z, n_terms)


# ---------------------------------------------------------------------------
# Generating pair


def triplet_to_generating_pair(
    t: FreeTriplet, cfg: QuadratureConfig | None = None
) -> GeneratingPair:
    """Convert ``(a, eta, nu)`` to the free generating pair ``(gamma, sigma)``.

    ``gamma = eta - int t (1_[-1,1](t) - 1/(1+t^2)) nu(dt)`` with ``eta`` in
    the compensated convention, and ``sigma = a delta_0 + t^2/(1+t^2) nu``.
    ``t.levy`` may be any object with ``density(x)`` and
    ``integrate(g, cfg, breakpoints)``.
    """
    if t.levy is None:
        return GeneratingPair(t.eta, t.a, None)
    eta = t.compensated_eta(cfg)

    def g(s):
        if -1.0 <= s <= 1.0:
            return s**3 / (1.0 + s * s)
        return -s / (1.0 + s * s)

    gamma = eta - t.levy.integrate(g, cfg, breakpoints=(-1.0, 1.0))
    return GeneratingPair(gamma, t.a, SigmaDensity(t.levy))
