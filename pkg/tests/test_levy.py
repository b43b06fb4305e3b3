import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fusscatalan.combinatorics import FCParams, free_cumulants
from fusscatalan.density import density_at, support
from fusscatalan.errors import (
    AtomError,
    DomainError,
    OutsideSupportError,
    SeriesDivergenceWarning,
    UnsupportedFamilyError,
)
from fusscatalan.levy import (
    FreeTriplet,
    LevyDensitySpec,
    LevyFamily,
    cumulant_growth,
    free_triplet,
    levy_density,
    r_transform_closed,
    r_transform_series,
    triplet_to_generating_pair,
    verify_binom_integral,
    verify_lk_general,
    verify_lk_p_pminus1,
    verify_lk_pp,
    verify_weighted_binom_integral,
)
from fusscatalan.numerics import binom_real, integrate

PP = LevyFamily.MU_PP
REM = LevyFamily.REMAINDER_PP
PM1 = LevyFamily.MU_P_PMINUS1
GEN = LevyFamily.MU_PR_GENERAL


def mp_quad(f, a, b):
    with mpmath.workdps(30):
        return float(mpmath.quad(f, [a, b]))


class TestRTransformClosed:
    def test_examples(self):
        for z in (-0.5, 0.1, 0.7):
            assert r_transform_closed(FCParams(1, 1), z) == pytest.approx(z, abs=1e-15)
            assert r_transform_closed(FCParams(2, 2), z) == pytest.approx(2 * z + z * z, abs=1e-15)

    def test_p_pminus1(self):
        assert r_transform_closed(FCParams(2.5, 1.5), 0.3) == pytest.approx(0.7**-1.5 - 1)

    def test_taylor_coefficients(self):
        p = 1.7
        with mpmath.workdps(30):
            coeffs = mpmath.taylor(lambda z: (1 + z) ** p - 1, 0, 8)
        cums = free_cumulants(FCParams(p, p), 8)
        for n in range(1, 9):
            assert cums[n] == pytest.approx(float(coeffs[n]), rel=1e-12, abs=1e-15)

    def test_unsupported(self):
        with pytest.raises(UnsupportedFamilyError):
            r_transform_closed(FCParams(3, 1), 0.1)
        with pytest.raises(DomainError):
            r_transform_closed(FCParams(1.5, 1.5), -1.0)
        with pytest.raises(DomainError):
            r_transform_closed(FCParams(1.5, 0.5), 1.0)


class TestRTransformSeries:
    def test_free_poisson(self):
        assert r_transform_series(FCParams(2, 1), 0.1, 50) == pytest.approx(0.1 / 0.9, rel=1e-14)

    @pytest.mark.parametrize("p", [1.2, 1.7, 2.0, 3.0])
    def test_pp(self, p):
        params = FCParams(p, p)
        assert r_transform_series(params, 0.05, 50) == pytest.approx(
            r_transform_closed(params, 0.05), abs=1e-10
        )

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_p_pminus1(self, p):
        params = FCParams(p, p - 1)
        assert r_transform_series(params, -0.05, 50) == pytest.approx(
            r_transform_closed(params, -0.05), abs=1e-10
        )

    def test_bound(self):
        params = FCParams(3, 1)
        value, bound = r_transform_series(params, -0.05, 30, return_bound=True)
        exact = r_transform_series(params, -0.05, 200)
        assert abs(value - exact) <= bound

    def test_divergence_warning(self):
        params = FCParams(3, 1)
        assert cumulant_growth(params) == pytest.approx(4.0)
        with pytest.warns(SeriesDivergenceWarning):
            r_transform_series(params, 0.2)
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            r_transform_series(params, 0.05)


class TestLevyDensitySpec:
    def test_pp_value(self):
        spec = LevyDensitySpec(PP, FCParams(1.5, 1.5))
        assert levy_density(spec, -0.5) == pytest.approx(2 / math.pi, rel=1e-14)
        assert spec.k(-0.5) == pytest.approx(1 / math.pi, rel=1e-14)

    def test_supports(self):
        assert LevyDensitySpec(PP, FCParams(1.5, 1.5)).support == (-1.0, 0.0)
        assert LevyDensitySpec(PM1, FCParams(1.5, 0.5)).support == (0.0, 1.0)
        lo, hi = LevyDensitySpec(GEN, FCParams(4, 1.5)).support
        q = 2.5
        assert lo == 0.0 and hi == pytest.approx(q**q * (q - 1) ** (1 - q), rel=1e-14)

    def test_support_sign_contrast(self):
        params = FCParams(1.5, 1.5)
        lo, hi = LevyDensitySpec(PP, params).support
        assert hi <= 0.0
        assert support(params).lo >= 0.0

    @pytest.mark.parametrize("c", [0.25, 0.5, 0.75])
    def test_remainder_matches_pp_below_c(self, c):
        params = FCParams(1.4, 1.4)
        pp = LevyDensitySpec(PP, params)
        rem = LevyDensitySpec(REM, params, c=c)
        for x in np.linspace(-0.99, -c, 20):
            assert rem.density(x) == pytest.approx(pp.density(x), rel=1e-13)
        for x in np.linspace(-c + 1e-3, -1e-3, 20):
            assert rem.density(x) < pp.density(x)

    def test_remainder_formula(self):
        p, c, x = 1.6, 0.5, -0.2
        rem = LevyDensitySpec(REM, FCParams(p, p), c=c)
        k = -math.sin(p * math.pi) / math.pi * (((1 + x) / -x) ** p - ((c + x) / -x) ** p)
        assert rem.k(x) == pytest.approx(k, rel=1e-13)

    def test_p_pminus1_formula(self):
        p, x = 1.3, 0.4
        spec = LevyDensitySpec(PM1, FCParams(p, p - 1))
        expected = -math.sin(p * math.pi) / math.pi * x ** (p - 2) * (1 - x) ** (1 - p)
        assert spec.density(x) == pytest.approx(expected, rel=1e-14)

    def test_general_is_mixing_density(self):
        spec = LevyDensitySpec(GEN, FCParams(3.5, 1.2))
        for x in (0.01, 0.5, 2.0):
            assert spec.density(x) == pytest.approx(density_at(FCParams(2.3, 1.2), x), rel=1e-12)
        spec = LevyDensitySpec(GEN, FCParams(1.5, 0.5))
        assert spec.density(0.5) == pytest.approx(density_at(FCParams(1, 0.5), 0.5), rel=1e-14)

    def test_validation(self):
        with pytest.raises(DomainError):
            LevyDensitySpec(PP, FCParams(2.5, 2.5))
        with pytest.raises(DomainError):
            LevyDensitySpec(REM, FCParams(1.5, 1.5))
        with pytest.raises(DomainError):
            LevyDensitySpec(REM, FCParams(1.5, 1.5), c=1.0)
        with pytest.raises(DomainError):
            LevyDensitySpec(PM1, FCParams(2.5, 1.5))
        with pytest.raises(DomainError):
            LevyDensitySpec(GEN, FCParams(2, 1.5))
        with pytest.raises(DomainError):
            LevyDensitySpec(PP, FCParams(1.5, 1.5), c=0.5)
        with pytest.raises(AtomError):
            LevyDensitySpec(GEN, FCParams(2, 1))

    def test_outside_support(self):
        spec = LevyDensitySpec(PP, FCParams(1.5, 1.5))
        for x in (-1.0, 0.0, 0.3):
            with pytest.raises(OutsideSupportError):
                spec.density(x)

    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8])
    def test_pp_k_non_decreasing(self, p):
        spec = LevyDensitySpec(PP, FCParams(p, p))
        x = np.linspace(-1, 0, 10002)[1:-1]
        k = np.array([spec.k(t) for t in x])
        assert np.all(np.diff(k) >= 0)

    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8])
    @pytest.mark.parametrize("c", [0.25, 0.5, 0.75])
    def test_remainder_k_non_decreasing(self, p, c):
        spec = LevyDensitySpec(REM, FCParams(p, p), c=c)
        x = np.linspace(-1, 0, 10002)[1:-1]
        k = np.array([spec.k(t) for t in x])
        assert np.all(np.diff(k) >= 0)

    @pytest.mark.parametrize(
        "spec",
        [
            LevyDensitySpec(PP, FCParams(1.2, 1.2)),
            LevyDensitySpec(PP, FCParams(1.8, 1.8)),
            LevyDensitySpec(REM, FCParams(1.5, 1.5), c=0.5),
            LevyDensitySpec(PM1, FCParams(1.3, 0.3)),
            LevyDensitySpec(PM1, FCParams(1.9, 0.9)),
            LevyDensitySpec(GEN, FCParams(3, 1)),
            LevyDensitySpec(GEN, FCParams(5, 2)),
            LevyDensitySpec(GEN, FCParams(1.5, 0.5)),
        ],
        ids=lambda s: f"{s.family.value}-{s.params.p}-{s.params.r}",
    )
    def test_levy_measure_condition(self, spec):
        value = spec.integrate(lambda x: min(1.0, x * x), breakpoints=(-1.0, 1.0))
        assert math.isfinite(value) and value > 0

    def test_pp_mass_against_mpmath(self):
        p = 1.5
        spec = LevyDensitySpec(PP, FCParams(p, p))
        c = -math.sin(p * math.pi) / math.pi
        ref = mp_quad(lambda x: x * x * c * ((1 + x) / -x) ** p / -x, -1, 0)
        assert spec.integrate(lambda x: x * x) == pytest.approx(ref, rel=1e-10)

    @pytest.mark.parametrize("p, r", [(3, 1), (4, 1.5)])
    def test_general_small_x_asymptotics(self, p, r):
        spec = LevyDensitySpec(GEN, FCParams(p, r))
        x = np.logspace(-6, -4, 41)
        k = np.array([spec.k(t) for t in x])
        slope = np.polyfit(np.log(x), np.log(k), 1)[0]
        assert slope == pytest.approx(r / (p - r), abs=1e-2)
        lead = math.sin(r * math.pi / (p - r)) / math.pi * x ** (r / (p - r))
        gap = np.abs(np.log(k) - np.log(lead))
        assert gap[0] < gap[-1] and gap[0] < 0.05


class TestIntegralRepresentations:
    def test_binom_examples(self):
        for p, n, expected in [(1.5, 0, 0.375), (1.5, 1, -0.0625), (-0.5, 0, 0.375)]:
            lhs, rhs = verify_binom_integral(p, n)
            assert rhs == pytest.approx(expected, rel=1e-15)
            assert abs(lhs - rhs) <= 1e-8

    def test_weighted_examples(self):
        for p, n, expected in [(1.5, 0, 0.75), (1.5, 1, -0.1875), (0.5, 0, -0.25)]:
            lhs, rhs = verify_weighted_binom_integral(p, n)
            assert rhs == pytest.approx(expected, rel=1e-15)
            assert abs(lhs - rhs) <= 1e-8

    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8, -0.5, 0.5, 0.3, -0.9])
    @pytest.mark.parametrize("n", range(7))
    def test_binom_battery(self, p, n):
        lhs, rhs = verify_binom_integral(p, n)
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))

    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8, 0.5, 0.1])
    @pytest.mark.parametrize("n", range(7))
    def test_weighted_battery(self, p, n):
        lhs, rhs = verify_weighted_binom_integral(p, n)
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(rhs))

    @pytest.mark.parametrize("p, n", [(1.5, 2), (-0.5, 3), (0.5, 1)])
    def test_binom_against_mpmath_in_x(self, p, n):
        s = math.sin(p * math.pi) / math.pi
        ref = mp_quad(lambda x: x**n * x * s * ((1 + x) / -x) ** p, -1, 0)
        lhs, _ = verify_binom_integral(p, n)
        assert lhs == pytest.approx(ref, rel=1e-10)

    def test_domains(self):
        for p in (0.0, 1.0, 2.0, -1.0):
            with pytest.raises(DomainError):
                verify_binom_integral(p, 0)
        for p in (0.0, 1.0, -0.5):
            with pytest.raises(DomainError):
                verify_weighted_binom_integral(p, 0)


class TestLevyKhintchine:
    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8])
    @pytest.mark.parametrize("z", [-0.4, -0.2, -0.1, -0.01])
    def test_pp(self, p, z):
        lhs, rhs = verify_lk_pp(p, z)
        assert abs(lhs - rhs) <= 1e-8

    def test_pp_zero(self):
        assert verify_lk_pp(1.5, 0.0) == (0.0, 0.0)

    @pytest.mark.parametrize("p, z", [(1.5, -0.2), (1.2, -0.1), (1.8, -0.4)])
    def test_pp_against_mpmath(self, p, z):
        # 1/(1-zx) - 1 - zx = (zx)^2/(1-zx); the expanded form cancels near x = 0
        # even in extended precision
        c = -math.sin(p * math.pi) / math.pi
        with mpmath.workdps(30):
            f = lambda x: (z * x) ** 2 / (1 - z * x) * c * ((1 + x) / -x) ** p / -x
            # x = -u^5 removes the x^(1-p) singularity at 0 for mpmath
            ref = p * z + float(mpmath.quad(lambda u: f(-(u**5)) * 5 * u**4, [0, 1]))
        lhs, _ = verify_lk_pp(p, z)
        assert lhs == pytest.approx(ref, abs=1e-12)

    @pytest.mark.parametrize("p", [1.2, 1.5, 1.8])
    @pytest.mark.parametrize("z", [-0.3, -0.1, 0.1, 0.2, 0.4])
    def test_p_pminus1(self, p, z):
        comp, rhs = verify_lk_p_pminus1(p, z, form="compensated")
        free, _ = verify_lk_p_pminus1(p, z, form="drift_free")
        assert abs(comp - rhs) <= 1e-8
        assert abs(free - rhs) <= 1e-8
        assert abs(comp - free) <= 1e-8

    def test_p_pminus1_bad_form(self):
        with pytest.raises(DomainError):
            verify_lk_p_pminus1(1.5, 0.1, form="other")

    @pytest.mark.parametrize(
        "p, r, z",
        [(3, 1, -0.1), (3, 1, -0.05), (4, 1.5, -0.05), (4, 1, -0.05), (5, 2, -0.02), (3.5, 1.2, -0.05)],
    )
    def test_general(self, p, r, z):
        lhs, rhs = verify_lk_general(FCParams(p, r), z)
        assert abs(lhs - rhs) <= 1e-6

    def test_general_zero_and_domain(self):
        assert verify_lk_general(FCParams(3, 1), 0.0) == (0.0, 0.0)
        with pytest.raises(DomainError):
            verify_lk_general(FCParams(2.5, 1.5), -0.05)  # p - r = 1
        with pytest.raises(DomainError):
            verify_lk_general(FCParams(3, 1), -0.2)  # outside the series disc

    @settings(max_examples=25, deadline=None)
    @given(st.floats(1.05, 1.95), st.floats(-0.45, 0.45))
    def test_p_pminus1_property(self, p, z):
        lhs, rhs = verify_lk_p_pminus1(p, z)
        assert abs(lhs - rhs) <= 1e-8


class _EvenMeasure:
    """nu(dx) = |x|^-2.5 dx on (-1, 1), symmetric about 0."""

    def density(self, x):
        return abs(x) ** -2.5

    def integrate(self, g, cfg=None, breakpoints=()):
        def f(x):
            gx = g(x)
            if gx == 0.0:
                return 0.0
            return math.copysign(math.exp(math.log(abs(gx)) - 2.5 * math.log(abs(x))), gx)

        return integrate(f, -1.0, 0.0, cfg) + integrate(f, 0.0, 1.0, cfg)


class TestTripletsAndPairs:
    def test_point_mass_and_semicircle(self):
        t = free_triplet(FCParams(1, 1))
        assert (t.a, t.eta, t.levy) == (0.0, 1.0, None)
        g = triplet_to_generating_pair(t)
        assert (g.gamma, g.sigma_atom_at_zero, g.sigma_total_mass()) == (1.0, 0.0, 0.0)
        t = free_triplet(FCParams(2, 2))
        assert (t.a, t.eta, t.levy) == (1.0, 2.0, None)
        g = triplet_to_generating_pair(t)
        assert (g.gamma, g.sigma_atom_at_zero, g.sigma_total_mass()) == (2.0, 1.0, 1.0)

    def test_families(self):
        t = free_triplet(FCParams(1.5, 1.5))
        assert (t.a, t.eta, t.levy.family) == (0.0, 1.5, PP)
        t = free_triplet(FCParams(1.5, 0.5))
        assert (t.a, t.eta, t.levy.family) == (0.0, 0.5, PM1)
        t = free_triplet(FCParams(4, 1.5))
        assert (t.a, t.eta, t.levy.family, t.drift_free) == (0.0, 0.0, GEN, True)

    def test_not_fid(self):
        for pr in [(2, 1.5), (2.5, 2.5), (3, 2.5)]:
            with pytest.raises(UnsupportedFamilyError):
                free_triplet(FCParams(*pr))
        with pytest.raises(UnsupportedFamilyError):
            free_triplet(FCParams(2, 1))

    def test_negative_semicircular_part(self):
        with pytest.raises(DomainError):
            FreeTriplet(-1.0, 0.0)

    def test_even_measure_gives_eta(self):
        g = triplet_to_generating_pair(FreeTriplet(0.0, 0.0, _EvenMeasure()))
        assert g.gamma == pytest.approx(0.0, abs=1e-12)
        g = triplet_to_generating_pair(FreeTriplet(0.5, 1.25, _EvenMeasure()))
        assert g.gamma == pytest.approx(1.25, abs=1e-12)
        assert g.sigma_atom_at_zero == 0.5

    def test_pp_pair_against_mpmath(self):
        p = 1.5
        c = -math.sin(p * math.pi) / math.pi
        nu = lambda x: c * ((1 + x) / -x) ** p / -x
        gamma_ref = p - mp_quad(lambda x: x**3 / (1 + x * x) * nu(x), -1, 0)
        sigma_ref = mp_quad(lambda x: x * x / (1 + x * x) * nu(x), -1, 0)
        g = triplet_to_generating_pair(free_triplet(FCParams(p, p)))
        assert g.gamma == pytest.approx(gamma_ref, rel=1e-10)
        assert g.sigma_total_mass() == pytest.approx(sigma_ref, rel=1e-10)
        assert g.sigma_density(-0.5) == pytest.approx(0.2 * nu(-0.5), rel=1e-13)

    def test_general_compensated_eta(self):
        # drift-free: R(z) = int (1/(1-zx) - 1) nu; compensated drift adds int_[-1,1] x nu
        t = free_triplet(FCParams(4, 1.5))
        spec = t.levy
        eta = t.compensated_eta()
        ref = spec.integrate(lambda x: x if x <= 1.0 else 0.0, breakpoints=(1.0,))
        assert eta == pytest.approx(ref, rel=1e-10)
        g = triplet_to_generating_pair(t)
        assert math.isfinite(g.gamma) and g.sigma_total_mass() > 0
