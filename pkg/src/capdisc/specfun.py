"""Jacobi/Gegenbauer polynomials, Gamma ratios and the incomplete beta function.

Every Gamma argument that shows up for the catalog spaces is an integer or a
half-integer, so those are evaluated exactly by recursion from Gamma(1) = 1 or
Gamma(1/2) = sqrt(pi).  Non half-integer arguments (possible for free Jacobi
parameters) fall back to ``math.lgamma``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericError

_LOG_SQRT_PI = 0.5 * math.log(math.pi)

# above this the O(x) product is replaced by lgamma
_EXACT_GAMMA_LIMIT = 4096


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise DomainError(f"Jacobi parameters need alpha, beta > -1, got ({self.alpha}, {self.beta})")


def _as_params(params) -> JacobiParams:
    if isinstance(params, JacobiParams):
        return params
    alpha, beta = params
    return JacobiParams(float(alpha), float(beta))


def _twice_as_int(x):
    """Return 2x as an int when x is a (half-)integer, else None."""
    if isinstance(x, Fraction):
        t = 2 * x
        return int(t) if t.denominator == 1 else None
    t = 2 * float(x)
    if t == math.floor(t) and abs(t) < 2**53:
        return int(t)
    return None


@lru_cache(maxsize=4096)
def _log_half_integer_gamma_twice(t: int) -> float:
    # t = 2x; log Gamma(x) by the product down to Gamma(1) or Gamma(1/2)
    if t % 2 == 0:
        n = t // 2
        return math.fsum(math.log(k) for k in range(2, n))
    n = (t - 1) // 2
    return _LOG_SQRT_PI + math.fsum(math.log(k + 0.5) for k in range(n))


def log_half_integer_gamma(x) -> float:
    """log Gamma(x) for x in {1/2, 1, 3/2, ...}."""
    t = _twice_as_int(x)
    if t is None or t <= 0:
        raise DomainError(f"half_integer_gamma needs a positive half-integer, got {x!r}")
    if t > 2 * _EXACT_GAMMA_LIMIT:
        return math.lgamma(t / 2)
    return _log_half_integer_gamma_twice(t)


def half_integer_gamma(x) -> float:
    """Gamma(x) for a positive half-integer x, by exact recursion.

    >>> half_integer_gamma(Fraction(7, 2)) / math.sqrt(math.pi)
    1.875
    """
    t = _twice_as_int(x)
    if t is None or t <= 0:
        raise DomainError(f"half_integer_gamma needs a positive half-integer, got {x!r}")
    if t % 2 == 0:
        return float(math.factorial(t // 2 - 1))
    value = math.sqrt(math.pi)
    for k in range((t - 1) // 2):
        value *= k + 0.5
    return value


def log_gamma(x) -> float:
    """log|Gamma(x)| for x > 0; exact recursion on half-integers."""
    t = _twice_as_int(x)
    if t is not None and t > 0:
        return log_half_integer_gamma(x)
    x = float(x)
    if x <= 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def c_ab(a, b) -> float:
    """Normalizing constant Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1)) of the radial density."""
    if not (float(a) > -1 and float(b) > -1):
        raise DomainError("c_ab needs a, b > -1")
    return math.exp(log_gamma(a + b + 2) - log_gamma(a + 1) - log_gamma(b + 1))


# ---------------------------------------------------------------------------
# Jacobi polynomials


def recurrence_coefficients(alpha: float, beta: float, m_max: int):
    """Arrays (A, B, C) with P_n = (A_n x + B_n) P_{n-1} - C_n P_{n-2} for n >= 2.

    Entries 0 and 1 are unused and set to zero.
    """
    A = np.zeros(m_max + 1)
    B = np.zeros(m_max + 1)
    C = np.zeros(m_max + 1)
    if m_max < 2:
        return A, B, C
    n = np.arange(2, m_max + 1, dtype=float)
    s = alpha + beta
    den = 2 * n * (n + s) * (2 * n + s - 2)
    A[2:] = (2 * n + s - 1) * (2 * n + s) * (2 * n + s - 2) / den
    B[2:] = (2 * n + s - 1) * (alpha * alpha - beta * beta) / den
    C[2:] = 2 * (n + alpha - 1) * (n + beta - 1) * (2 * n + s) / den
    return A, B, C


def normalized_recurrence_coefficients(alpha: float, beta: float, m_max: int):
    """Coefficients for R_n = P_n / P_n(1).

    Returns ``(r1_slope, r1_offset, A, B, C)`` such that R_1 = r1_slope x + r1_offset
    and R_n = (A_n x + B_n) R_{n-1} - C_n R_{n-2} for n >= 2.
    """
    A, B, C = recurrence_coefficients(alpha, beta, m_max)
    if m_max >= 2:
        n = np.arange(2, m_max + 1, dtype=float)
        # P_n(1) / P_{n-1}(1) = (n + alpha) / n
        g1 = n / (n + alpha)
        g0 = (n - 1) / (n - 1 + alpha)
        A[2:] *= g1
        B[2:] *= g1
        C[2:] *= g1 * g0
    half = (alpha + beta + 2) / (2 * (alpha + 1))
    return half, 1.0 - half, A, B, C


def jacobi_eval(params, m_max: int, x):
    """Values P_0(x), ..., P_{m_max}(x) of the Jacobi polynomials.

    Parameters
    ----------
    params : JacobiParams or (alpha, beta)
    m_max : int
        Highest degree; the whole prefix is returned.
    x : float or ndarray
        Evaluation points in [-1, 1].

    Returns
    -------
    ndarray of shape ``(m_max + 1,) + np.shape(x)``
    """
    p = _as_params(params)
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1 + 1e-12):
        raise DomainError("jacobi_eval needs |x| <= 1")
    out = np.empty((m_max + 1,) + x.shape)
    out[0] = 1.0
    if m_max == 0:
        return out
    a, b = p.alpha, p.beta
    out[1] = (a + 1) + (a + b + 2) * (x - 1) / 2
    A, B, C = recurrence_coefficients(a, b, m_max)
    for n in range(2, m_max + 1):
        out[n] = (A[n] * x + B[n]) * out[n - 1] - C[n] * out[n - 2]
    return out


def log_jacobi_at_one(params, m_max: int):
    """log P_n(1) for n = 0..m_max as an array (cumulative log of (k+alpha)/k)."""
    p = _as_params(params)
    k = np.arange(1, m_max + 1, dtype=float)
    out = np.zeros(m_max + 1)
    out[1:] = np.cumsum(np.log1p(p.alpha / k))
    return out


def jacobi_at_one(params, m: int) -> float:
    """P_m(1) = binomial(m + alpha, m), accumulated in log space."""
    if m < 0:
        raise DomainError("degree must be >= 0")
    p = _as_params(params)
    if m == 0:
        return 1.0
    if m <= 64:
        value = 1.0
        for k in range(1, m + 1):
            value *= (k + p.alpha) / k
        return value
    return float(math.exp(log_jacobi_at_one(p, m)[m]))


def jacobi_asymptotic(params, m: int, r: float) -> float:
    """Main term of the Darboux/Szego expansion of P_m(cos r), remainder dropped."""
    p = _as_params(params)
    if m < 1:
        raise DomainError("jacobi_asymptotic needs m >= 1")
    if not (1e-3 <= r <= math.pi - 1e-3):
        raise DomainError("r must lie in [1e-3, pi - 1e-3]")
    a, b = p.alpha, p.beta
    amp = (m * math.pi) ** -0.5 * math.sin(r / 2) ** (-a - 0.5) * math.cos(r / 2) ** (-b - 0.5)
    phase = (m + (a + b + 1) / 2) * r - (2 * a + 1) * math.pi / 4
    return amp * math.cos(phase)


def jacobi_l2_norm_sq(params, m: int) -> float:
    """Integral over (0, pi) of P_m(cos r)^2 (sin r/2)^(2a+1) (cos r/2)^(2b+1) dr."""
    p = _as_params(params)
    if m < 0:
        raise DomainError("degree must be >= 0")
    a, b = p.alpha, p.beta
    num = log_gamma(m + a + 1) + log_gamma(m + b + 1)
    if m == 0:
        # (a+b+1) Gamma(a+b+1) = Gamma(a+b+2), also fine when a+b+1 = 0
        return math.exp(num - log_gamma(a + b + 2))
    den = math.log(2 * m + a + b + 1) + log_gamma(m + 1) + log_gamma(m + a + b + 1)
    return math.exp(num - den)


def gegenbauer_eval(lam: float, m: int, x):
    """Gegenbauer polynomial P_m^lam(x) through its Jacobi representation."""
    lam = float(lam)
    if lam <= -0.5 or lam == 0:
        raise DomainError("gegenbauer_eval needs lam > -1/2 and lam != 0")
    if m < 0:
        raise DomainError("degree must be >= 0")
    # Gamma(lam+1/2) Gamma(m+2lam) / (Gamma(2lam) Gamma(m+lam+1/2)) as a finite product
    factor = 1.0
    for k in range(m):
        factor *= (2 * lam + k) / (lam + 0.5 + k)
    values = jacobi_eval((lam - 0.5, lam - 0.5), m, x)
    return factor * values[m]


# ---------------------------------------------------------------------------
# Spectrum of the Laplace-Beltrami operator


def _ab(space):
    params = getattr(space, "params", space)
    return params.a, params.b


def eigenvalue(space, m: int) -> float:
    """lambda_m = m (m + a + b + 1)."""
    if m < 0:
        raise DomainError("degree must be >= 0")
    a, b = _ab(space)
    return float(m * (m + a + b + 1))


def eigenspace_dim_exact(space, m: int) -> Fraction:
    """d_m as an exact rational (an integer for every catalog space)."""
    if m < 0:
        raise DomainError("degree must be >= 0")
    a, b = (Fraction(v) for v in _ab(space))
    if m == 0:
        return Fraction(1)
    # d_1 = (a+b+3)(a+1)/(b+1), then the ratio d_{k+1}/d_k
    d = (a + b + 3) * (a + 1) / (b + 1)
    for k in range(1, m):
        d *= (2 * k + a + b + 3) * (k + a + b + 1) * (k + a + 1)
        d /= (2 * k + a + b + 1) * (k + b + 1) * (k + 1)
    return d


# below this degree d_m comes from exact rational arithmetic, so it is an exact integer
_EXACT_DIMS_LIMIT = 2048


@lru_cache(maxsize=64)
def _exact_dims_prefix(a: Fraction, b: Fraction) -> tuple:
    out = [Fraction(1), (a + b + 3) * (a + 1) / (b + 1)]
    d = out[1]
    for k in range(1, _EXACT_DIMS_LIMIT):
        d = d * (2 * k + a + b + 3) * (k + a + b + 1) * (k + a + 1)
        d = d / ((2 * k + a + b + 1) * (k + b + 1) * (k + 1))
        out.append(d)
    return tuple(float(v) for v in out)


def eigenspace_dims(space, m_max: int) -> np.ndarray:
    """d_0, ..., d_{m_max}: exact up to degree 2048, then the multiplicative recurrence in m."""
    if m_max < 0:
        raise DomainError("m_max must be >= 0")
    fa, fb = (Fraction(v) for v in _ab(space))
    exact = _exact_dims_prefix(fa, fb)
    if m_max <= _EXACT_DIMS_LIMIT:
        return np.array(exact[: m_max + 1])
    a, b = float(fa), float(fb)
    out = np.empty(m_max + 1)
    out[: _EXACT_DIMS_LIMIT + 1] = exact
    k = np.arange(_EXACT_DIMS_LIMIT, m_max, dtype=float)
    ratio = (2 * k + a + b + 3) * (k + a + b + 1) * (k + a + 1)
    ratio /= (2 * k + a + b + 1) * (k + b + 1) * (k + 1)
    out[_EXACT_DIMS_LIMIT + 1 :] = exact[-1] * np.cumprod(ratio)
    return out


def eigenspace_dim(space, m: int) -> float:
    """Dimension d_m of the m-th eigenspace."""
    return float(eigenspace_dims(space, m)[m])


# ---------------------------------------------------------------------------
# Regularized incomplete beta


def _beta_cf(s: float, p: float, q: float) -> float:
    # modified Lentz evaluation of the continued fraction
    tiny = 1e-300
    qab = p + q
    qap = p + 1.0
    qam = p - 1.0
    c = 1.0
    d = 1.0 - qab * s / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for k in range(1, 201):
        k2 = 2 * k
        aa = k * (q - k) * s / ((qam + k2) * (p + k2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(p + k) * (qab + k) * s / ((p + k2) * (qap + k2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-14:
            return h
    raise NumericError(f"incomplete beta continued fraction did not converge at s={s}, p={p}, q={q}")


def reg_inc_beta(s: float, p: float, q: float) -> float:
    """Regularized incomplete beta I_s(p, q)."""
    s = float(s)
    p = float(p)
    q = float(q)
    if not (0.0 <= s <= 1.0):
        raise DomainError(f"reg_inc_beta needs 0 <= s <= 1, got {s}")
    if p <= 0 or q <= 0:
        raise DomainError("reg_inc_beta needs p, q > 0")
    if s == 0.0:
        return 0.0
    if s == 1.0:
        return 1.0
    log_front = (
        log_gamma(p + q) - log_gamma(p) - log_gamma(q) + p * math.log(s) + q * math.log1p(-s)
    )
    front = math.exp(log_front)
    if s < (p + 1.0) / (p + q + 2.0):
        return min(1.0, front * _beta_cf(s, p, q) / p)
    return max(0.0, 1.0 - front * _beta_cf(1.0 - s, q, p) / q)
