"""Experiment drivers: discrepancy rates in N, prime-radius scans, Jacobi lower-bound scans."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .admissibility import (
    RadiusPQ,
    jacobadly_from_alpha_beta,
    prime_radius_sequence,
    space_radius_admissible,
)
from .errors import DomainError
from .pointsets import generate
from .spectral import (
    _energies,
    as_space,
    auto_truncation,
    ball_coefficients,
    build_gram,
    discrepancy_l2,
    resolve_radius,
    series_report,
)

log = logging.getLogger(__name__)


def slope_fit(xs, ys) -> tuple[float, float]:
    """Ordinary least squares line through (xs, ys): returns (slope, intercept)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape or x.size < 2:
        raise DomainError("need at least two (x, y) pairs")
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if sxx == 0.0:
        raise DomainError("xs are all equal")
    slope = float(np.dot(xc, y - y.mean())) / sxx
    return slope, float(y.mean() - slope * x.mean())


@dataclass
class RateRow:
    N: int
    value: float
    L: int
    tail: float
    seed: int


@dataclass
class RateStudyResult:
    rows: list[RateRow]
    fitted_exponent: float
    fitted_intercept: float

    def to_dict(self) -> dict:
        return {
            "rows": [vars(r) for r in self.rows],
            "fitted_exponent": self.fitted_exponent,
            "fitted_intercept": self.fitted_intercept,
        }

    def to_csv(self) -> str:
        lines = ["N,value,L,tail,seed"]
        lines += [f"{r.N},{r.value!r},{r.L},{r.tail!r},{r.seed}" for r in self.rows]
        return "\n".join(lines) + "\n"


def rate_study(space, generator: str, radius, n_list, seed: int = 0, threads=None, **gen_kwargs) -> RateStudyResult:
    """Spectral discrepancy for each N and the least-squares exponent of value ~ N^s."""
    space = as_space(space)
    radius = RadiusPQ.parse(radius) if isinstance(radius, str) else radius
    n_list = [int(n) for n in n_list]
    if len(n_list) < 4 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError("n_list needs at least 4 strictly increasing entries")
    if not space_radius_admissible(space, radius):
        log.warning("radius %s is not admissible on %s; the lower bound is not guaranteed", radius, space)
    rows = []
    for n in n_list:
        ps = generate(space, generator, n, seed, **gen_kwargs)
        rep = discrepancy_l2(space, ps.points, ps.weights, radius, threads=threads)
        rows.append(RateRow(n, rep.value, rep.L, rep.tail_estimate, seed))
    slope, icept = slope_fit(np.log([r.N for r in rows]), np.log([r.value for r in rows]))
    return RateStudyResult(rows, slope, icept)


@dataclass
class ScanResult:
    radii: list[RadiusPQ]
    values: list[float]
    argmax: int  # 1-based index n* into the prime radius sequence
    max_value: float
    score: float
    H: int
    L: int

    def to_dict(self) -> dict:
        return {
            "radii": [{"p": r.p, "q": r.q} for r in self.radii],
            "values": self.values,
            "argmax": self.argmax,
            "max_value": self.max_value,
            "score": self.score,
            "H": self.H,
            "L": self.L,
        }


def scan_length(n_points: int, c_H: float = 3.0) -> int:
    """H = ceil(c_H log N / log log N)."""
    if n_points < 3:
        raise DomainError("need N >= 3")
    return math.ceil(c_H * math.log(n_points) / math.log(math.log(n_points)))


def prime_scan(space, points, weights=None, ratio_margin=1 / 3, c_H: float = 3.0, truncation=None, threads=None) -> ScanResult:
    """Discrepancy at the first H prime radii and the normalized maximum.

    The score is max_n value_n * N^{1+1/d} log^4 N / log log N.
    """
    space = as_space(space)
    prm = space.params
    if prm.d % 4 != 1:
        log.warning("%s has d = %d, not 1 mod 4; scanning anyway", space, prm.d)
    gram = build_gram(space, points, weights)
    N = gram.n
    H = scan_length(N, c_H)
    radii = prime_radius_sequence(ratio_margin, H)
    L = truncation or auto_truncation(space, N)
    q, n_clamped = _energies(space, gram, L, threads)
    values = []
    for rad in radii:
        phi = ball_coefficients(space, L, rad)
        values.append(series_report(space, q, phi, rad, N, n_clamped).value)
    k = int(np.argmax(values))
    logN = math.log(N)
    score = values[k] * N ** (1 + 1 / prm.d) * logN**4 / math.log(logN)
    return ScanResult(radii, values, k + 1, values[k], score, H, L)


def jacobadly_scan(alpha, beta, radius, m_min: int, m_max: int) -> dict:
    """min over m in [m_min, m_max] of m^{1/2} |P_m^{(alpha, beta)}(cos r)|."""
    if not (1 <= m_min < m_max):
        raise DomainError("need 1 <= m_min < m_max")
    rad = resolve_radius(radius)
    values = specfun.jacobi_eval((float(alpha), float(beta)), m_max, rad.cos_r)
    m = np.arange(m_min, m_max + 1)
    scaled = np.sqrt(m) * np.abs(values[m_min:])
    k = int(np.argmin(scaled))
    out = {"min_scaled": float(scaled[k]), "argmin": int(m[k])}
    if rad.exact is not None:
        out["admissible"] = jacobadly_from_alpha_beta(
            _exact(alpha), _exact(beta), rad.exact
        )
    return out


def _exact(v):
    from fractions import Fraction

    return Fraction(v).limit_denominator(10**6) if isinstance(v, float) else Fraction(v)


def scaled_ball_coefficients(space, radius, m_min: int = 10, m_max: int = 5000) -> np.ndarray:
    """m^{a+3/2} |phi_m(r)| for m = m_min..m_max."""
    space = as_space(space)
    if not (1 <= m_min < m_max):
        raise DomainError("need 1 <= m_min < m_max")
    phi = ball_coefficients(space, m_max, radius)[m_min - 1 :]
    m = np.arange(m_min, m_max + 1, dtype=float)
    return m ** (float(space.params.a) + 1.5) * np.abs(phi)


def coefficient_scale_scan(space, radius, m_min: int = 10, m_max: int = 5000) -> tuple[float, float]:
    """(min, max) of m^{a+3/2} |phi_m(r)| over the range."""
    s = scaled_ball_coefficients(space, radius, m_min, m_max)
    return float(s.min()), float(s.max())
