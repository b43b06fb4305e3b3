"""Free infinite divisibility, free self-decomposability, free regularity and
free L1 membership of mu(p, r).

The ``classify_*`` functions encode the known characterizations exactly.
Hankel-matrix tests on (weighted) free cumulants are provided separately as
numerical evidence; they only see finite sections and so can miss a failure
of positive definiteness that first shows up in a large section.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .combinatorics import FCParams, RealSequence, free_cumulants, fuss_catalan_number
from .errors import DomainError

__all__ = [
    "HankelSource",
    "HankelReport",
    "ClassificationReport",
    "PSD_REL_TOL",
    "classify_fid",
    "classify_fsd",
    "classify_free_regular",
    "classify_free_l1",
    "hankel_matrix",
    "hankel_min_eig",
    "numeric_fid_evidence",
    "numeric_fsd_evidence",
    "evidence_is_psd",
    "find_negative_even_cumulant",
    "fid_boundary_distance",
    "fsd_boundary_distance",
    "classify",
]

PSD_REL_TOL = 1e-10
MAX_HANKEL_SIZE = 8


class HankelSource(enum.Enum):
    CUMULANT_SHIFT2 = "CUMULANT_SHIFT2"
    WEIGHTED_CUMULANT_SHIFT2 = "WEIGHTED_CUMULANT_SHIFT2"
    MOMENT = "MOMENT"


@dataclass(frozen=True)
class HankelReport:
    size: int
    matrix_source: HankelSource
    min_eigenvalue: float
    is_psd: bool
    determinant: float
    scale: float


@dataclass(frozen=True)
class ClassificationReport:
    params: FCParams
    fid: bool
    fsd: bool
    free_regular: bool
    free_l1: bool
    hankel_evidence: tuple[HankelReport, ...] = ()
    negative_cumulant_witness: Optional[int] = None
    notes: tuple[str, ...] = field(default=())


def _in_general_region(p: float, r: float) -> bool:
    return r <= min(p / 2.0, p - 1.0)


def classify_fid(params: FCParams) -> bool:
    """True iff ``r <= min(p/2, p-1)`` or ``1 <= p = r <= 2``."""
    p, r = params.p, params.r
    return _in_general_region(p, r) or (params.is_pp and 1.0 <= p <= 2.0)


def classify_fsd(params: FCParams) -> bool:
    """True iff ``1 <= p = r <= 2``."""
    return params.is_pp and 1.0 <= params.p <= 2.0


def classify_free_regular(params: FCParams) -> bool:
    """True iff ``r <= min(p/2, p-1)`` or ``p = r`` in {1, 2}."""
    p, r = params.p, params.r
    return _in_general_region(p, r) or (params.is_pp and p in (1.0, 2.0))


def classify_free_l1(params: FCParams) -> bool:
    """True iff ``1 <= p = r <= 2``.

    Free L1 laws are freely self-decomposable, and mu(p, r) is freely
    self-decomposable only on that segment, so the answer is determined
    everywhere.
    """
    return classify_fsd(params)


# ---------------------------------------------------------------------------
# Hankel evidence


def hankel_matrix(seq: RealSequence, size: int, shift: int) -> np.ndarray:
    """``H[i, j] = seq[shift + i + j]`` for ``0 <= i, j < size``."""
    if size < 1:
        raise DomainError("Hankel size must be >= 1")
    need = shift + 2 * (size - 1)
    if shift < seq.start_index or need > seq.last_index:
        raise DomainError(
            f"a size-{size} Hankel matrix at shift {shift} needs indices "
            f"{shift}..{need}, the sequence covers {seq.start_index}..{seq.last_index}"
        )
    idx = np.add.outer(np.arange(size), np.arange(size)) + shift
    values = seq.as_array()
    return values[idx - seq.start_index]


def hankel_min_eig(
    seq: RealSequence,
    size: int,
    shift: int,
    source: HankelSource = HankelSource.CUMULANT_SHIFT2,
) -> HankelReport:
    """Smallest eigenvalue of the Hankel section, with a relative PSD test.

    The matrix counts as positive semidefinite when its smallest eigenvalue is
    at least ``-1e-10`` times its largest absolute entry.
    """
    if size > MAX_HANKEL_SIZE:
        raise DomainError(f"Hankel sizes above {MAX_HANKEL_SIZE} are not supported")
    h = hankel_matrix(seq, size, shift)
    scale = float(np.max(np.abs(h)))
    min_eig = float(np.linalg.eigvalsh(h)[0])
    if size == 1:
        det = float(h[0, 0])
    elif size == 2:
        det = float(h[0, 0] * h[1, 1] - h[0, 1] * h[1, 0])
    else:
        det = float(np.linalg.det(h))
    is_psd = min_eig >= -PSD_REL_TOL * scale
    return HankelReport(size, source, min_eig, bool(is_psd), det, scale)


def _evidence(seq: RealSequence, max_size: int, source: HankelSource) -> list[HankelReport]:
    return [hankel_min_eig(seq, k, 2, source) for k in range(1, max_size + 1)]


def numeric_fid_evidence(params: FCParams, max_size: int = 6) -> list[HankelReport]:
    """Hankel sections of the shifted free cumulants ``r_2, r_3, ...``."""
    seq = free_cumulants(params, 2 * max_size)
    return _evidence(seq, max_size, HankelSource.CUMULANT_SHIFT2)


def numeric_fsd_evidence(params: FCParams, max_size: int = 6) -> list[HankelReport]:
    """Hankel sections of the shifted weighted cumulants ``n r_n``, n >= 2."""
    seq = free_cumulants(params, 2 * max_size).scaled_by_index()
    return _evidence(seq, max_size, HankelSource.WEIGHTED_CUMULANT_SHIFT2)


def evidence_is_psd(reports) -> bool:
    return all(rep.is_psd for rep in reports)


def find_negative_even_cumulant(params: FCParams, n_max: int = 200) -> Optional[int]:
    """Smallest even ``n <= n_max`` with ``r_n = A_n(p-r, r) <= 0``.

    Requires ``p - 1 < r < p``; returns None if the scan finds nothing.
    """
    p, r = params.p, params.r
    if not (p - 1.0 < r < p):
        raise DomainError(f"the witness search needs p - 1 < r < p, got ({p!r}, {r!r})")
    q = p - r
    for n in range(2, n_max + 1, 2):
        if fuss_catalan_number(q, r, n) <= 0.0:
            return n
    return None


# ---------------------------------------------------------------------------
# Distances to the region boundaries in the (p, r) plane


def _segment_distance(px, py, ax, ay, bx, by) -> float:
    dx, dy = bx - ax, by - ay
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def fid_boundary_distance(p: float, r: float, p_max: float = 1e6) -> float:
    """Euclidean distance from (p, r) to the boundary of the FID region.

    The boundary is the curve ``r = min(p/2, p-1)`` together with the segment
    ``p = r``, ``1 <= p <= 2`` (which has no interior).
    """
    return min(
        _segment_distance(p, r, 1.0, 0.0, 2.0, 1.0),
        _segment_distance(p, r, 2.0, 1.0, p_max, p_max / 2.0),
        _segment_distance(p, r, 1.0, 1.0, 2.0, 2.0),
    )


def fsd_boundary_distance(p: float, r: float) -> float:
    """Distance from (p, r) to the FSD segment ``p = r``, ``1 <= p <= 2``."""
    return _segment_distance(p, r, 1.0, 1.0, 2.0, 2.0)


def classify(params: FCParams, hankel_size: int = 6) -> ClassificationReport:
    fid = classify_fid(params)
    fsd = classify_fsd(params)
    evidence = tuple(numeric_fid_evidence(params, hankel_size)) + tuple(
        numeric_fsd_evidence(params, hankel_size)
    )
    witness = None
    notes = []
    if params.p - 1.0 < params.r < params.p:
        witness = find_negative_even_cumulant(params)
        if witness is None:
            notes.append("no non-positive even cumulant found up to n = 200")
    fid_evidence = evidence_is_psd(evidence[:hankel_size])
    if fid_evidence != fid:
        notes.append(
            f"Hankel sections up to size {hankel_size} do not detect the FID status"
        )
    if evidence_is_psd(evidence[hankel_size:]) != fsd:
        notes.append(
            f"weighted Hankel sections up to size {hankel_size} do not detect the FSD status"
        )
    if not fsd:
        notes.append("free L1 is false because the law is not freely self-decomposable")
    return ClassificationReport(
        params=params,
        fid=fid,
        fsd=fsd,
        free_regular=classify_free_regular(params),
        free_l1=classify_free_l1(params),
        hankel_evidence=evidence,
        negative_cumulant_witness=witness,
        notes=tuple(notes),
    )
