"""Numerics for the Fuss-Catalan distributions mu(p, r).

Moments and free cumulants, the density W_{p,r}, free Levy-Khintchine data,
free infinite divisibility and related classifications, and unimodality.
"""

from .classify import (
    ClassificationReport,
    HankelReport,
    HankelSource,
    classify,
    classify_free_l1,
    classify_free_regular,
    classify_fid,
    classify_fsd,
    find_negative_even_cumulant,
    hankel_min_eig,
    numeric_fid_evidence,
    numeric_fsd_evidence,
)
from .combinatorics import (
    FCParams,
    RealSequence,
    cumulants_to_moments,
    free_cumulants,
    fuss_catalan_number,
    moments,
    moments_to_cumulants,
)
from .density import (
    DensityGrid,
    DensitySample,
    SupportInterval,
    density_at,
    density_grid,
    density_on_curve,
    moment_by_quadrature,
    rho,
    rho_prime,
    support,
)
from .errors import (
    AtomError,
    BracketError,
    DomainError,
    FussCatalanError,
    NoFlipError,
    NumericalError,
    OutsideSupportError,
    QuadratureError,
    RootFindingError,
    SeriesDivergenceWarning,
    UnsupportedFamilyError,
)
from .levy import (
    FreeTriplet,
    GeneratingPair,
    LevyDensitySpec,
    LevyFamily,
    free_triplet,
    levy_density,
    r_transform_closed,
    r_transform_series,
    triplet_to_generating_pair,
)
from .numerics import QuadratureConfig, RootConfig
from .unimodal import (
    ModeReport,
    TransitionResult,
    mode_scan,
    phase_transition_scan,
    solve_r0_mu2,
    transition_equation_A,
)

__version__ = "0.1.0"
