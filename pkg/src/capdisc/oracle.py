"""Independent checks: Monte Carlo over ball centers and adaptive quadrature."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import specfun
from .errors import DomainError, NumericError
from .spaces import ball_volume, cos_matrix, pole, sample_uniform
from .spectral import as_space, normalize_weights

BATCH = 1 << 16


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    stderr: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return asdict(self)


def _batches(seed: int, samples: int):
    # one counter-keyed substream per batch: reproducible for any worker count
    root = np.random.SeedSequence(seed)
    for k, start in enumerate(range(0, samples, BATCH)):
        stream = np.random.SeedSequence(root.entropy, spawn_key=(k,))
        yield np.random.default_rng(stream), min(BATCH, samples - start)


def _summarize(sums, sq_sums, samples, seed) -> McEstimate:
    s1 = math.fsum(sums)
    s2 = math.fsum(sq_sums)
    mean = s1 / samples
    var = max(0.0, (s2 - samples * mean * mean) / (samples - 1))
    return McEstimate(mean, math.sqrt(var / samples), samples, seed)


def mc_discrepancy(space, points, weights, radius_real: float, samples: int, seed: int) -> McEstimate:
    """Mean of D_r(x)^2 over uniformly drawn centers x.

    D_r(x) = sum_j a_j [rho(x, x_j) < r] - mu(B_r), with the strict inequality.
    """
    space = as_space(space)
    if samples < 100:
        raise DomainError("need at least 100 samples")
    r = float(radius_real)
    if not (0.0 < r < math.pi):
        raise DomainError("radius must lie strictly between 0 and pi")
    P = np.atleast_2d(np.asarray(points, dtype=float))
    w = normalize_weights(weights, P.shape[0])
    vol = ball_volume(space, r)
    cos_r = math.cos(r)
    sums, sq = [], []
    for rng, count in _batches(seed, samples):
        centers = sample_uniform(space, rng, count)
        inside = cos_matrix(space, centers, P) > cos_r
        D = inside @ w - vol
        D2 = D * D
        sums.append(math.fsum(D2))
        sq.append(math.fsum(D2 * D2))
    return _summarize(sums, sq, samples, seed)


def mc_ball_volume(space, r: float, samples: int, seed: int) -> McEstimate:
    """Fraction of uniform samples strictly within distance r of the pole."""
    space = as_space(space)
    if samples < 100:
        raise DomainError("need at least 100 samples")
    r = float(r)
    if not (0.0 <= r <= math.pi):
        raise DomainError("radius must lie in [0, pi]")
    o = pole(space)[None, :]
    cos_r = math.cos(r)
    hits = []
    for rng, count in _batches(seed, samples):
        x = sample_uniform(space, rng, count)
        t = cos_matrix(space, x, o)[:, 0]
        inside = np.ones(count, dtype=bool) if r == math.pi else t > cos_r
        hits.append(float(np.count_nonzero(inside)))
    # indicator samples: the square equals the value
    return _summarize(hits, hits, samples, seed)


# ---------------------------------------------------------------------------
# quadrature


def adaptive_simpson(f, lo: float, hi: float, tol: float = 1e-11, max_depth: int = 40, initial: int = 32) -> float:
    """Adaptive Simpson rule, refined level by level with vectorized evaluations.

    ``f`` must accept an ndarray.  The range starts split into ``initial``
    panels so symmetric integrands cannot fake convergence on the first
    comparison; a panel is accepted once its Richardson error estimate is
    below its share of ``tol``.
    """
    if hi == lo:
        return 0.0
    edges = np.linspace(lo, hi, initial + 1)
    a, b = edges[:-1], edges[1:]
    mids = 0.5 * (a + b)
    fe = f(edges)
    fa_, fb_ = fe[:-1], fe[1:]
    fm_ = f(mids)
    whole = (b - a) / 6 * (fa_ + 4 * fm_ + fb_)
    tols = np.full(initial, tol / initial)
    accepted = []
    for _ in range(max_depth):
        mid = 0.5 * (a + b)
        lm = 0.5 * (a + mid)
        rm = 0.5 * (mid + b)
        vals = f(np.concatenate((lm, rm)))
        flm, frm = vals[: a.size], vals[a.size :]
        left = (mid - a) / 6 * (fa_ + 4 * flm + fm_)
        right = (b - mid) / 6 * (fm_ + 4 * frm + fb_)
        delta = left + right - whole
        done = np.abs(delta) <= 15 * tols
        accepted.extend((left + right + delta / 15)[done].tolist())
        keep = ~done
        if not np.any(keep):
            return math.fsum(accepted)
        a, mid, b = a[keep], mid[keep], b[keep]
        fa_, flm, fm_, frm, fb_ = fa_[keep], flm[keep], fm_[keep], frm[keep], fb_[keep]
        left, right, tols = left[keep], right[keep], tols[keep] / 2
        a, b = np.concatenate((a, mid)), np.concatenate((mid, b))
        fa_, fm_, fb_ = np.concatenate((fa_, fm_)), np.concatenate((flm, frm)), np.concatenate((fm_, fb_))
        whole = np.concatenate((left, right))
        tols = np.concatenate((tols, tols))
    estimate = math.fsum(accepted) + float(np.sum(whole))
    raise NumericError(f"adaptive Simpson did not reach tol {tol} at depth {max_depth}; estimate {estimate!r}")


def quad_ball_coefficient(space, m: int, r: float) -> float:
    """Numerical phi_m(r) = P_m(1)^{-1} * integral_0^r P_m(cos t) A(t) dt."""
    space = as_space(space)
    if m < 1:
        raise DomainError("need m >= 1")
    r = float(r)
    if not (0.0 <= r <= math.pi):
        raise DomainError("radius must lie in [0, pi]")
    prm = space.params
    a, b = float(prm.a), float(prm.b)
    c = specfun.c_ab(prm.a, prm.b)
    h = specfun.jacobi_at_one((a, b), m)

    def integrand(t):
        pm = specfun.jacobi_eval((a, b), m, np.cos(t))[m]
        return c * pm * np.sin(t / 2) ** (2 * a + 1) * np.cos(t / 2) ** (2 * b + 1) / h

    return adaptive_simpson(integrand, 0.0, r)
