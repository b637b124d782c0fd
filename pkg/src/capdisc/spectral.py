"""L2 ball discrepancy as a spectral series over Laplace-Beltrami eigenspaces.

The squared L2 norm of the discrepancy of a weighted point set at radius r is

    sum_{m >= 1} q_m * phi_m(r)^2

where q_m is the energy of the point set in the m-th eigenspace and phi_m(r)
is the normalized integral of the zonal function over a ball.  The energies
are never formed from explicit harmonics: by the addition theorem

    q_m = d_m * sum_{j,k} a_j a_k P_m(t_jk) / P_m(1),   t_jk = cos rho(x_j, x_k)

so only pairwise cosines are needed.  The ball coefficients have the closed
form c(a,b) / (m P_m(1)) * P_{m-1}^{(a+1,b+1)}(cos r) (sin r/2)^{2a+2} (cos r/2)^{2b+2}.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from ._kernels import make_tiles, set_threads, tile_energies
from .admissibility import RadiusPQ
from .errors import DomainError, NumericError
from .spaces import Space, ball_volume, cos_matrix, normalize_points

DEFAULT_TILE = 1024
MIN_TRUNCATION = 512
MAX_TRUNCATION = 50000
CLAMP_FLOOR = -1e-10


def as_space(space) -> Space:
    return space if isinstance(space, Space) else Space.parse(str(space))


def normalize_weights(weights, n: int, tol: float = 1e-6) -> np.ndarray:
    """Equal weights when ``weights`` is None; otherwise check and renormalize.

    Weights must be positive and sum to 1 within ``tol``.
    """
    if weights is None:
        return np.full(n, 1.0 / n)
    w = np.asarray(weights, dtype=float).ravel()
    if w.shape[0] != n:
        raise DomainError(f"{w.shape[0]} weights for {n} points")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise DomainError("weights must be positive")
    total = math.fsum(w)
    if abs(total - 1.0) > tol:
        raise DomainError(f"weights sum to {total}, not 1")
    return w / total


# ---------------------------------------------------------------------------
# radius plumbing


@dataclass(frozen=True)
class _Radius:
    r: float
    cos_r: float
    sin_half: float
    cos_half: float
    exact: RadiusPQ | None

    def to_json(self):
        if self.exact is not None:
            return {"p": self.exact.p, "q": self.exact.q}
        return {"real": self.r}


def resolve_radius(radius) -> _Radius:
    """Accept a RadiusPQ, a "p/q" string or a float in [0, pi]."""
    if isinstance(radius, str):
        radius = RadiusPQ.parse(radius)
    if isinstance(radius, RadiusPQ):
        p, q = radius.p, radius.q
        # sine forms keep cos(pi/2) an exact zero
        return _Radius(
            r=p * math.pi / q,
            cos_r=math.sin(math.pi * (q - 2 * p) / (2 * q)),
            sin_half=math.sin(math.pi * p / (2 * q)),
            cos_half=math.sin(math.pi * (q - p) / (2 * q)),
            exact=radius,
        )
    r = float(radius)
    if not (0.0 <= r <= math.pi):
        raise DomainError(f"radius must lie in [0, pi], got {r}")
    if r == math.pi:
        # the whole space; math.cos(pi / 2) is not an exact zero
        return _Radius(r, -1.0, 1.0, 0.0, None)
    return _Radius(r, math.cos(r), math.sin(r / 2), math.cos(r / 2), None)


# ---------------------------------------------------------------------------
# Gram matrix


@dataclass(frozen=True)
class PairGram:
    """Symmetric matrix of pairwise cos-distances plus normalized weights."""

    cos: np.ndarray
    weights: np.ndarray
    tile_size: int = DEFAULT_TILE

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def tiles(self) -> np.ndarray:
        return make_tiles(self.n, self.tile_size)


def build_gram(space, points, weights=None, tile_size: int = DEFAULT_TILE) -> PairGram:
    space = as_space(space)
    P = normalize_points(space, points)
    if P.shape[0] < 1:
        raise DomainError("need at least one point")
    w = normalize_weights(weights, P.shape[0])
    if tile_size < 1:
        raise DomainError("tile_size must be >= 1")
    t = np.empty((P.shape[0], P.shape[0]))
    for i0 in range(0, P.shape[0], tile_size):
        t[i0 : i0 + tile_size] = cos_matrix(space, P[i0 : i0 + tile_size], P)
    t = 0.5 * (t + t.T)
    np.fill_diagonal(t, 1.0)
    t.flags.writeable = False
    w.flags.writeable = False
    return PairGram(t, w, int(tile_size))


# ---------------------------------------------------------------------------
# series ingredients


def _log_ball_prefactor(space: Space, rad: _Radius):
    p = space.params
    a, b = float(p.a), float(p.b)
    if rad.sin_half <= 0.0 or rad.cos_half <= 0.0:
        return None
    return (
        math.log(specfun.c_ab(p.a, p.b))
        + (2 * a + 2) * math.log(rad.sin_half)
        + (2 * b + 2) * math.log(rad.cos_half)
    )


def ball_coefficients(space, L: int, radius) -> np.ndarray:
    """phi_1(r), ..., phi_L(r) from a single Jacobi prefix at cos r."""
    space = as_space(space)
    if L < 1:
        raise DomainError("need L >= 1")
    rad = resolve_radius(radius)
    log_pre = _log_ball_prefactor(space, rad)
    if log_pre is None:
        # r = 0 or r = pi: the ball is a point or the whole space
        return np.zeros(L)
    p = space.params
    a, b = float(p.a), float(p.b)
    shifted = specfun.jacobi_eval((a + 1, b + 1), L - 1, rad.cos_r)
    m = np.arange(1, L + 1, dtype=float)
    log_h = specfun.log_jacobi_at_one((a, b), L)[1:]
    scale = np.exp(log_pre - np.log(m) - log_h)
    return scale * shifted


def ball_coefficient(space, m: int, radius) -> float:
    """phi_m(r) = d_m^{-1} times the integral of Z_o^m over B_r(o)."""
    if m < 1:
        raise DomainError("ball coefficients start at m = 1 (the m = 0 projection of D_r vanishes)")
    return float(ball_coefficients(space, m, radius)[m - 1])


def _energies(space: Space, gram: PairGram, m_max: int, threads=None):
    if m_max < 1:
        raise DomainError("m_max must be >= 1")
    dims = specfun.eigenspace_dims(space, m_max)
    if not np.all(np.isfinite(dims)):
        raise NumericError("eigenspace dimension overflows binary64")
    p = space.params
    r1s, r1o, A, B, C = specfun.normalized_recurrence_coefficients(float(p.a), float(p.b), m_max)
    set_threads(threads)
    seg = min(gram.tile_size, gram.n)
    partial = tile_energies(gram.cos, gram.weights, gram.tiles(), r1s, r1o, A, B, C, m_max, seg)
    # exactly rounded per-degree reduction over tiles: order independent
    sums = np.array([math.fsum(partial[:, m]) for m in range(1, m_max + 1)])
    n_clamped = int(np.count_nonzero(sums < 0))
    if np.any(sums < CLAMP_FLOOR):
        m_bad = int(np.argmin(sums)) + 1
        raise NumericError(f"harmonic energy at m={m_bad} is {sums[m_bad - 1]:.3e} (normalized), below the clamp floor")
    sums = np.maximum(sums, 0.0)
    q = dims[1:] * sums
    if not np.all(np.isfinite(q)):
        raise NumericError("harmonic energy overflow")
    return q, n_clamped


def harmonic_energy(space, gram: PairGram, m_max: int, threads=None) -> np.ndarray:
    """Energies q_1, ..., q_{m_max} of the weighted point set (q_0 = 1 is implicit)."""
    return _energies(as_space(space), gram, m_max, threads)[0]


def cm_sum(space, gram: PairGram, M: int, L: int, threads=None) -> float:
    """sum_{m=M}^{L} q_m with q_0 = 1."""
    if M < 0 or L < M:
        raise DomainError("need 0 <= M <= L")
    total = [1.0] if M == 0 else []
    if L >= 1:
        q = harmonic_energy(space, gram, L, threads)
        total.extend(q[max(M, 1) - 1 :])
    return math.fsum(total)


def auto_truncation(space, n_points: int, radius=None, kappa: float = 1.0) -> int:
    """Default series length max(512, ceil(32 kappa N^{1/d})), capped at 50000."""
    if n_points < 1:
        raise DomainError("n_points must be >= 1")
    d = as_space(space).params.d
    root = round(n_points ** (1.0 / d))
    scale = float(root) if root**d == n_points else n_points ** (1.0 / d)
    return int(min(MAX_TRUNCATION, max(MIN_TRUNCATION, math.ceil(kappa * 32 * scale))))


def tail_estimate(terms: np.ndarray) -> float:
    """kappa / L with kappa the max of m^2 term_m over the last quarter of the terms."""
    L = terms.shape[0]
    start = L - max(1, L // 4)
    m = np.arange(start + 1, L + 1, dtype=float)
    kappa = float(np.max(m * m * terms[start:]))
    return kappa / L


# ---------------------------------------------------------------------------
# report


@dataclass(frozen=True)
class SeriesTerm:
    m: int
    q_m: float
    phi_m: float
    term: float


@dataclass
class DiscrepancyReport:
    space: str
    radius: dict
    L: int
    value: float
    tail_estimate: float
    n_points: int
    n_clamped: int = 0
    terms: list[SeriesTerm] | None = None
    seed: int | None = None
    elapsed_s: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "space": self.space,
            "radius": self.radius,
            "L": self.L,
            "value": self.value,
            "tail_estimate": self.tail_estimate,
            "n_points": self.n_points,
            "n_clamped": self.n_clamped,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.terms is not None:
            out["terms"] = [
                {"m": t.m, "q_m": t.q_m, "phi_m": t.phi_m, "term": t.term} for t in self.terms
            ]
        if timing:
            out["timing"] = {"elapsed_s": self.elapsed_s}
        return out


def series_report(space, energies, coefficients, radius, n_points, n_clamped=0, with_terms=False):
    """Assemble a report from precomputed q_m and phi_m (both indexed m = 1..L)."""
    space = as_space(space)
    energies = np.asarray(energies, dtype=float)
    coefficients = np.asarray(coefficients, dtype=float)
    terms = energies * coefficients**2
    L = terms.shape[0]
    terms_list = None
    if with_terms:
        terms_list = [
            SeriesTerm(m + 1, float(energies[m]), float(coefficients[m]), float(terms[m]))
            for m in range(L)
        ]
    return DiscrepancyReport(
        space=str(space),
        radius=resolve_radius(radius).to_json(),
        L=L,
        value=math.fsum(terms),
        tail_estimate=tail_estimate(terms),
        n_points=int(n_points),
        n_clamped=n_clamped,
        terms=terms_list,
    )


def discrepancy_l2(
    space,
    points,
    weights=None,
    radius=None,
    truncation: int | None = None,
    with_terms: bool = False,
    tile_size: int = DEFAULT_TILE,
    threads=None,
    gram: PairGram | None = None,
) -> DiscrepancyReport:
    """Truncated spectral series for the squared L2 discrepancy at one radius.

    Parameters
    ----------
    space : Space or str
    points : array (N, coord_dim)
        Ignored when ``gram`` is given.
    weights : array (N,), optional
        Positive, summing to one; equal weights when omitted.
    radius : RadiusPQ, "p/q" or float in (0, pi)
    truncation : int, optional
        Series length L; ``auto_truncation`` when omitted.
    """
    start = time.perf_counter()
    space = as_space(space)
    rad = resolve_radius(radius)
    if not (0.0 < rad.r < math.pi):
        raise DomainError("radius must lie strictly between 0 and pi")
    if gram is None:
        gram = build_gram(space, points, weights, tile_size)
    L = truncation if truncation is not None else auto_truncation(space, gram.n, radius)
    if L < 1:
        raise DomainError("truncation must be >= 1")
    q, n_clamped = _energies(space, gram, L, threads)
    phi = ball_coefficients(space, L, radius)
    report = series_report(space, q, phi, radius, gram.n, n_clamped, with_terms)
    report.elapsed_s = time.perf_counter() - start
    return report


def one_point_value(space, radius) -> float:
    """mu(B_r) (1 - mu(B_r)): the exact squared discrepancy of a single point."""
    v = ball_volume(as_space(space), resolve_radius(radius).r)
    return v * (1.0 - v)
