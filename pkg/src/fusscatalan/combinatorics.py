"""Fuss-Catalan numbers, free cumulants of mu(p, r), and the free
moment-cumulant transform.

Moment sequences start at index 0 (``m_0 = 1``) and cumulant sequences at
index 1. :class:`RealSequence` stores that start index and is indexed by the
mathematical index, not the list position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "FCParams",
    "RealSequence",
    "fuss_catalan_number",
    "fuss_catalan_integer",
    "moments",
    "free_cumulants",
    "cumulants_to_moments",
    "moments_to_cumulants",
]

# Tolerance for recognising the special lines r = p and r = p - 1.
FAMILY_TOL = 1e-12


@dataclass(frozen=True)
class FCParams:
    """Parameter pair (p, r) of the Fuss-Catalan distribution mu(p, r).

    Construction validates the standing region ``p >= 1``, ``0 < r <= p``.
    :meth:`unchecked` builds a pair outside it, for the handful of places
    where the formulas are still meaningful (e.g. signed densities with
    ``r > p``).
    """

    p: float
    r: float

    def __post_init__(self):
        object.__setattr__(self, "p", float(self.p))
        object.__setattr__(self, "r", float(self.r))
        if not (math.isfinite(self.p) and math.isfinite(self.r)):
            raise DomainError(f"p and r must be finite, got p={self.p!r}, r={self.r!r}")
        if self.p < 1.0:
            raise DomainError(f"p must be >= 1, got p={self.p!r}")
        if not 0.0 < self.r <= self.p:
            raise DomainError(f"r must satisfy 0 < r <= p, got p={self.p!r}, r={self.r!r}")

    @classmethod
    def unchecked(cls, p: float, r: float) -> "FCParams":
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", float(p))
        object.__setattr__(obj, "r", float(r))
        return obj

    @property
    def is_pp(self) -> bool:
        return abs(self.p - self.r) <= FAMILY_TOL

    @property
    def is_p_pminus1(self) -> bool:
        return abs(self.p - 1.0 - self.r) <= FAMILY_TOL

    @property
    def is_dirac(self) -> bool:
        """mu(1, 1) is the point mass at 1."""
        return self.p == 1.0 and self.r == 1.0


@dataclass(frozen=True)
class RealSequence:
    """Finite real sequence ``a_start, a_{start+1}, ...``.

    ``seq[k]`` returns the term with mathematical index ``k``.
    """

    start_index: int
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise DomainError("a RealSequence needs at least one value")
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("RealSequence values must be finite")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start_index", int(self.start_index))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, k: int) -> float:
        pos = k - self.start_index
        if not 0 <= pos < len(self.values):
            raise IndexError(
                f"index {k} outside [{self.start_index}, {self.last_index}]"
            )
        return self.values[pos]

    @property
    def last_index(self) -> int:
        return self.start_index + len(self.values) - 1

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def scaled_by_index(self) -> "RealSequence":
        """The sequence ``k * a_k``."""
        return RealSequence(
            self.start_index,
            tuple((self.start_index + i) * v for i, v in enumerate(self.values)),
        )

    @classmethod
    def of_moments(cls, values: Iterable[float]) -> "RealSequence":
        return cls(0, tuple(values))

    @classmethod
    def of_cumulants(cls, values: Iterable[float]) -> "RealSequence":
        return cls(1, tuple(values))


def fuss_catalan_integer(p: int, r: int, k: int) -> int:
    """Exact ``A_k(p, r)`` for integer p and r, as a Python int."""
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return 1
    num = r
    for i in range(1, k):
        num *= k * p + r - i
    q, rem = divmod(num, math.factorial(k))
    if rem:
        raise DomainError(f"A_{k}({p}, {r}) is not an integer")
    return q


def fuss_catalan_number(p: float, r: float, k: int) -> float:
    """Raney number ``A_k(p, r) = r/k! * prod_{i=1}^{k-1} (k p + r - i)``.

    ``A_0 = 1`` for every (p, r). Integer-valued p and r are evaluated in
    exact integer arithmetic and rounded once, so e.g. the Catalan numbers
    ``A_k(2, 1)`` come out as exact integers as long as they fit in a double.
    """
    k = int(k)
    if k < 0:
        raise DomainError("k must be >= 0")
    if k == 0:
        return 1.0
    p = float(p)
    r = float(r)
    if p.is_integer() and r.is_integer():
        ip, ir = int(p), int(r)
        num = ir
        for i in range(1, k):
            num *= k * ip + ir - i
        q, rem = divmod(num, math.factorial(k))
        return float(q) if rem == 0 else num / math.factorial(k)
    value = r / k
    kp_r = k * p + r
    for i in range(1, k):
        value *= (kp_r - i) / i
    return value


def moments(params: FCParams, n_max: int) -> RealSequence:
    """Moments ``A_0(p, r), ..., A_{n_max}(p, r)`` of mu(p, r)."""
    return RealSequence(
        0, tuple(fuss_catalan_number(params.p, params.r, k) for k in range(n_max + 1))
    )


def free_cumulants(params: FCParams, n_max: int) -> RealSequence:
    """Free cumulants ``r_k = A_k(p - r, r)`` for ``k = 1..n_max``."""
    q = params.p - params.r
    return RealSequence(
        1, tuple(fuss_catalan_number(q, params.r, k) for k in range(1, n_max + 1))
    )


def _power_coefficients(m: np.ndarray, s_max: int, degree: int) -> np.ndarray:
    # pw[s, d] = [z^d] M(z)^s, truncated at ``degree``
    pw = np.zeros((s_max + 1, degree + 1))
    pw[0, 0] = 1.0
    for s in range(1, s_max + 1):
        pw[s] = np.convolve(pw[s - 1], m[: degree + 1])[: degree + 1]
    return pw


def cumulants_to_moments(cumulants: RealSequence | Sequence[float]) -> RealSequence:
    """Moments from free cumulants through ``M(z) = 1 + C(z M(z))``.

    Coefficientwise, ``m_n = sum_{s=1}^{n} r_s [z^{n-s}] M(z)^s``.
    """
    if not isinstance(cumulants, RealSequence):
        cumulants = RealSequence.of_cumulants(cumulants)
    if cumulants.start_index != 1:
        raise DomainError("cumulant sequences must start at index 1")
    n = len(cumulants)
    r = cumulants.as_array()
    m = np.zeros(n + 1)
    m[0] = 1.0
    for k in range(1, n + 1):
        pw = _power_coefficients(m, k, k - 1)
        m[k] = math.fsum(r[s - 1] * pw[s, k - s] for s in range(1, k + 1))
    return RealSequence(0, tuple(m))


def moments_to_cumulants(moment_seq: RealSequence | Sequence[float]) -> RealSequence:
    """Inverse of :func:`cumulants_to_moments`; requires ``m_0 = 1``."""
    if not isinstance(moment_seq, RealSequence):
        moment_seq = RealSequence.of_moments(moment_seq)
    if moment_seq.start_index != 0:
        raise DomainError("moment sequences must start at index 0")
    m = moment_seq.as_array()
    if m[0] != 1.0:
        raise DomainError(f"m_0 must equal 1, got {m[0]!r}")
    n = len(m) - 1
    if n < 1:
        raise DomainError("need at least m_0 and m_1")
    r = np.zeros(n)
    for k in range(1, n + 1):
        # [z^0] M^k = 1, so r_k enters linearly
        pw = _power_coefficients(m, k - 1, k - 1)
        lower = math.fsum(r[s - 1] * pw[s, k - s] for s in range(1, k))
        r[k - 1] = m[k] - lower
    return RealSequence(1, tuple(r))
